#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "core/audio/wav_io.hpp"
#include "core/dsp/f0_align.hpp"
#include "core/dsp/features.hpp"
#include "core/dsp/fft.hpp"
#include "core/dsp/mel.hpp"
#include "core/dsp/mulaw.hpp"
#include "core/dsp/profile.hpp"
#include "core/dsp/rainbowgram.hpp"
#include "core/dsp/resample.hpp"
#include "core/dsp/stft.hpp"
#include "core/error.hpp"

#include <cmath>
#include <random>

using namespace nws;
using namespace nws::dsp;
using audio::Waveform;
using testutil::TempDir;

TEST_CASE("fft matches a direct transform and inverts exactly") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 64;
    std::vector<double> x(n);
    for (auto& v : x) v = u(gen);

    std::vector<std::complex<double>> a(n);
    for (int i = 0; i < n; ++i) a[i] = x[i];
    fft_inplace(a.data(), n, false);

    const auto oracle = testutil::naive_dft(x, n);
    for (int k = 0; k < n; ++k) {
        CHECK(std::abs(a[k] - oracle[k]) < 1e-9);
    }

    fft_inplace(a.data(), n, true);
    for (int i = 0; i < n; ++i) CHECK(std::abs(a[i].real() - x[i]) < 1e-12);

    std::vector<std::complex<double>> bad(3);
    CHECK_THROWS_AS(fft_inplace(bad.data(), 3, false), Error);
}

TEST_CASE("built-in profiles carry the documented parameters") {
    const FeatureProfile& ts = profile_ts();
    CHECK(ts.name == "TS");
    CHECK(ts.sample_rate == 24000);
    CHECK(ts.hop == 120);
    CHECK(ts.fft_size == 1024);
    CHECK(ts.win_length == 1024);
    CHECK(ts.n_mels == 80);
    CHECK(ts.fmin_hz == 0.0);
    CHECK(ts.fmax_hz == 12000.0);
    CHECK(ts.bins() == 513);

    const FeatureProfile& ft = profile_ft();
    CHECK(ft.name == "FT");
    CHECK(ft.sample_rate == 22050);
    CHECK(ft.hop == 256);
    CHECK(ft.fmax_hz == 8000.0);

    CHECK(&parse_profile("TS") == &ts);
    CHECK(&parse_profile("FT") == &ft);
    CHECK_THROWS_AS(parse_profile("XX"), Error);
}

TEST_CASE("stft of all-ones hits the periodic hann window sum in bin zero") {
    Waveform w;
    w.sample_rate = 24000;
    w.samples.assign(24000, 1.0f);
    const Stft s = stft(w, profile_ts());
    CHECK(s.frames == 200);
    CHECK(s.bins == 513);
    // Interior frames see the full window; its periodic form sums to N/2.
    for (int t = 5; t < s.frames - 5; ++t) {
        CHECK(std::abs(s.at(t, 0).real() - 512.0) < 1e-9);
        CHECK(std::abs(s.at(t, 0).imag()) < 1e-9);
    }
}

TEST_CASE("stft concentrates a bin-centered tone in that bin") {
    const FeatureProfile& p = profile_ts();
    const int k_target = 32; // 32 * 24000 / 1024 = 750 Hz, exactly on the grid
    const double freq = static_cast<double>(k_target) * p.sample_rate / p.fft_size;
    const Waveform w = testutil::make_tone(freq, 0.5, p.sample_rate);
    const Stft s = stft(w, p);
    for (int t = 10; t < s.frames - 10; t += 13) {
        int best = 0;
        double best_mag = -1.0;
        for (int k = 0; k < s.bins; ++k) {
            const double m = std::abs(s.at(t, k));
            if (m > best_mag) {
                best_mag = m;
                best = k;
            }
        }
        CHECK(best == k_target);
    }
}

TEST_CASE("stft frame count is ceil of length over hop") {
    FeatureProfile p;
    p.name = "X";
    p.sample_rate = 800;
    p.hop = 4;
    p.fft_size = 16;
    p.win_length = 16;
    p.n_mels = 3;
    p.fmin_hz = 0.0;
    p.fmax_hz = 400.0;

    for (int len = 1; len <= 10 * p.hop; ++len) {
        Waveform w;
        w.sample_rate = p.sample_rate;
        w.samples.assign(static_cast<std::size_t>(len), 0.25f);
        const Stft s = stft(w, p);
        CHECK(s.frames == (len + p.hop - 1) / p.hop);
    }
}

TEST_CASE("stft accepts any sample rate as given") {
    // The transform itself is rate-agnostic; only feature extraction insists.
    Waveform w;
    w.sample_rate = 48000;
    w.samples.assign(4800, 0.1f);
    CHECK_NOTHROW(stft(w, profile_ts()));
}

TEST_CASE("reflection padding mirrors without repeating the edge") {
    CHECK(reflect_index(0, 10) == 0);
    CHECK(reflect_index(-1, 10) == 1);
    CHECK(reflect_index(-2, 10) == 2);
    CHECK(reflect_index(10, 10) == 8);
    CHECK(reflect_index(11, 10) == 7);
    CHECK(reflect_index(5, 1) == 0);
    CHECK(reflect_index(-3, 1) == 0);
}

TEST_CASE("mel scale fixes zero and the 700 Hz knee") {
    CHECK(hz_to_mel(0.0) == 0.0);
    CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)).epsilon(1e-12));
    for (double hz : {10.0, 440.0, 1234.5, 8000.0, 12000.0}) {
        CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-9));
    }
    CHECK(hz_to_mel(1000.0) > hz_to_mel(999.0)); // strictly increasing
}

TEST_CASE("mel filterbank covers the band with nonnegative unit-peak filters") {
    const FeatureProfile& p = profile_ts();
    const auto fb = mel_filterbank(p);
    REQUIRE(fb.size() == static_cast<std::size_t>(p.n_mels) * p.bins());

    for (double v : fb) CHECK(v >= 0.0);
    for (int m = 0; m < p.n_mels; ++m) {
        double peak = 0.0;
        for (int k = 0; k < p.bins(); ++k) peak = std::max(peak, fb[m * p.bins() + k]);
        CHECK(peak > 0.0);
        CHECK(peak <= 1.0 + 1e-12);
    }
    // Every bin strictly inside the band is touched by at least one filter.
    const double mel_lo = hz_to_mel(p.fmin_hz);
    const double mel_hi = hz_to_mel(p.fmax_hz);
    const double first_center = mel_to_hz(mel_lo + (mel_hi - mel_lo) / (p.n_mels + 1));
    const double last_center = mel_to_hz(mel_hi - (mel_hi - mel_lo) / (p.n_mels + 1));
    for (int k = 0; k < p.bins(); ++k) {
        const double f = static_cast<double>(k) * p.sample_rate / p.fft_size;
        if (f <= first_center || f >= last_center) continue;
        double cover = 0.0;
        for (int m = 0; m < p.n_mels; ++m) cover += fb[m * p.bins() + k];
        CHECK(cover > 0.0);
    }
}

TEST_CASE("mel filterbank rejects bands too narrow for the grid") {
    FeatureProfile p;
    p.name = "X";
    p.sample_rate = 8000;
    p.hop = 80;
    p.fft_size = 64;
    p.win_length = 64;
    p.n_mels = 200; // far more bands than the 33 bins can separate
    p.fmin_hz = 0.0;
    p.fmax_hz = 4000.0;
    CHECK_THROWS_AS(mel_filterbank(p), Error);
}

TEST_CASE("mel spectrogram of silence is the log floor everywhere") {
    Waveform w;
    w.sample_rate = 24000;
    w.samples.assign(24000, 0.0f);
    const MelSpectrogram mel = mel_spectrogram(w, profile_ts());
    CHECK(mel.frames == 200);
    CHECK(mel.dims == 80);
    CHECK(mel.profile == "TS");
    const float floor_db = std::log(1e-5f);
    for (float v : mel.data) CHECK(v == doctest::Approx(floor_db).epsilon(1e-6));
}

TEST_CASE("one second of audio yields 200 TS frames and 87 FT frames") {
    Waveform w;
    w.sample_rate = 24000;
    w.samples.assign(24000, 0.1f);
    CHECK(mel_spectrogram(w, profile_ts()).frames == 200);

    w.sample_rate = 22050;
    w.samples.assign(22050, 0.1f);
    const MelSpectrogram ft = mel_spectrogram(w, profile_ft());
    CHECK(ft.frames == 87);
    CHECK(ft.dims == 80);
}

TEST_CASE("mel spectrogram insists on the profile sample rate") {
    Waveform w;
    w.sample_rate = 48000;
    w.samples.assign(4800, 0.1f);
    try {
        mel_spectrogram(w, profile_ts());
        FAIL("expected a rate mismatch error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("resample") != std::string::npos);
    }
}

TEST_CASE("mel container roundtrips exactly and rejects damage") {
    TempDir dir;
    const Waveform w = testutil::make_tone(440.0, 0.3, 24000);
    const MelSpectrogram mel = mel_spectrogram(w, profile_ts());
    save_mel(mel, dir.file("a.mel"));
    const MelSpectrogram r = load_mel(dir.file("a.mel"));
    CHECK(r.frames == mel.frames);
    CHECK(r.dims == mel.dims);
    CHECK(r.profile == mel.profile);
    CHECK(r.data == mel.data);

    auto bytes = read_file_bytes(dir.file("a.mel"));
    auto truncated = bytes;
    truncated.resize(truncated.size() - 7);
    write_file_bytes(dir.file("t.mel"), truncated);
    CHECK_THROWS_AS(load_mel(dir.file("t.mel")), Error);

    auto magic = bytes;
    magic[0] = 'X';
    write_file_bytes(dir.file("m.mel"), magic);
    CHECK_THROWS_AS(load_mel(dir.file("m.mel")), Error);
}

TEST_CASE("mu-law code anchors sit where the curve says") {
    CHECK(mu_law_encode(0.0) == 512);
    CHECK(mu_law_encode(1.0) == 1023);
    CHECK(mu_law_encode(-1.0) == 0);
    CHECK(mu_law_encode(2.0) == 1023);  // clamped
    CHECK(mu_law_encode(-2.0) == 0);
    CHECK(mu_law_encode(0.1) == 854);
    CHECK(mu_law_compand(0.1) == doctest::Approx(0.6690696443977697).epsilon(1e-12));
}

TEST_CASE("mu-law encoding is monotone across the full range") {
    int prev = mu_law_encode(-1.0);
    CHECK(prev == 0);
    for (int i = 1; i <= 10000; ++i) {
        const double x = -1.0 + 2.0 * i / 10000.0;
        const int code = mu_law_encode(x);
        CHECK(code >= prev);
        prev = code;
    }
    CHECK(prev == 1023);
}

TEST_CASE("mu-law roundtrip stays inside one quantization cell") {
    // Cell widths in the signal domain, from the exact cell boundaries.
    std::vector<double> edges(kMuLawCodes + 1);
    for (int c = 0; c <= kMuLawCodes; ++c)
        edges[c] = mu_law_expand(2.0 * c / kMuLawCodes - 1.0);
    double widest = 0.0;
    for (int c = 0; c < kMuLawCodes; ++c) widest = std::max(widest, edges[c + 1] - edges[c]);

    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        const double x = u(gen);
        const double y = mu_law_decode(mu_law_encode(x));
        CHECK(std::abs(y - x) <= widest);
    }

    CHECK(std::abs(mu_law_decode(mu_law_encode(0.0))) <= 1e-3);

    // Companding compresses loud samples: cells near zero are much narrower.
    const double near_zero = edges[513] - edges[512];
    const double near_full = edges[1024] - edges[1023];
    CHECK(near_zero * 50.0 < near_full);

    CHECK_THROWS_AS(mu_law_decode(-1), Error);
    CHECK_THROWS_AS(mu_law_decode(1024), Error);
}

TEST_CASE("mu-law decode inverts encode on every code") {
    for (int c = 0; c < kMuLawCodes; ++c) {
        CHECK(mu_law_encode(mu_law_decode(c)) == c);
    }
}

TEST_CASE("resampling preserves a tone's frequency") {
    const Waveform in = testutil::make_tone(1000.0, 1.0, 48000);
    const Waveform out = resample(in, 24000);
    CHECK(out.sample_rate == 24000);
    CHECK(out.size() == 24000);
    const double freq = testutil::zero_crossing_freq(out.samples, out.sample_rate);
    CHECK(std::abs(freq - 1000.0) / 1000.0 < 1e-3);
}

TEST_CASE("resampling zeros gives zeros and keeps the 147/320 length ratio") {
    Waveform z;
    z.sample_rate = 48000;
    z.samples.assign(48000, 0.0f);
    const Waveform out = resample(z, 22050);
    CHECK(out.size() == 22050); // ceil(48000 * 147 / 320)
    for (float v : out.samples) CHECK(v == 0.0f);

    const Waveform same = resample(z, 48000);
    CHECK(same.samples == z.samples);

    CHECK_THROWS_AS(resample(z, 96000), Error);
}

TEST_CASE("label alignment resamples nearest-center onto the frame grid") {
    audio::F0Track t;
    t.values_hz = {100.0f, 200.0f};

    FeatureProfile p;
    p.name = "X";
    p.sample_rate = 2000;
    p.hop = 10; // 5 ms frames against 10 ms labels
    p.fft_size = 32;
    p.win_length = 32;
    p.n_mels = 2;
    p.fmax_hz = 1000.0;

    const auto f = align_f0_to_frames(t, 4, p);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == 100.0f);
    CHECK(f[1] == 100.0f);
    CHECK(f[2] == 200.0f);
    CHECK(f[3] == 200.0f);
}

TEST_CASE("label alignment is the identity on equal grids") {
    FeatureProfile p;
    p.name = "X";
    p.sample_rate = 1000;
    p.hop = 10; // exactly the 10 ms label shift
    p.fft_size = 32;
    p.win_length = 32;
    p.n_mels = 2;
    p.fmax_hz = 500.0;

    audio::F0Track t;
    std::mt19937 gen(5);
    std::uniform_real_distribution<float> u(80.0f, 800.0f);
    for (int i = 0; i < 50; ++i) t.values_hz.push_back(i % 7 == 0 ? 0.0f : u(gen));

    const auto f = align_f0_to_frames(t, 50, p);
    REQUIRE(f.size() == 50);
    for (int i = 0; i < 50; ++i) CHECK(f[i] == t.values_hz[i]);

    // An offset of k hops drops the first k labels.
    const auto shifted = align_f0_to_frames(t, 40, p, 3 * p.hop);
    for (int i = 0; i < 40; ++i) CHECK(shifted[i] == t.values_hz[i + 3]);
}

TEST_CASE("alignment of unvoiced labels stays unvoiced") {
    audio::F0Track t;
    t.values_hz.assign(20, 0.0f);
    const auto f = align_f0_to_frames(t, 40, profile_ts());
    CHECK(f.size() == 40);
    for (float v : f) CHECK(v == 0.0f);
}

TEST_CASE("frame replication repeats each value hop times") {
    const auto a = upsample_f0_replicate({100.0f, 200.0f}, 120);
    REQUIRE(a.size() == 240);
    for (int i = 0; i < 120; ++i) CHECK(a[i] == 100.0f);
    for (int i = 120; i < 240; ++i) CHECK(a[i] == 200.0f);

    const auto b = upsample_f0_replicate({440.0f}, 256);
    REQUIRE(b.size() == 256);
    for (float v : b) CHECK(v == 440.0f);

    CHECK(upsample_f0_replicate({}, 120).empty());
}

TEST_CASE("alignment then replication spans exactly frames times hop samples") {
    const FeatureProfile& p = profile_ts();
    audio::F0Track t = testutil::constant_f0(220.0f, 0.735);
    for (int n_frames : {1, 7, 100, 147}) {
        const auto frames = align_f0_to_frames(t, n_frames, p);
        const auto samples = upsample_f0_replicate(frames, p.hop);
        CHECK(samples.size() == static_cast<std::size_t>(n_frames) * p.hop);
    }
}

TEST_CASE("rainbowgram tracks a steady tone at its true frequency") {
    const FeatureProfile& p = profile_ts();
    const Waveform w = testutil::make_tone(1000.0, 1.0, p.sample_rate);
    const Rainbowgram rg = rainbowgram(w, p);
    CHECK(rg.frames == 200);
    CHECK(rg.bins == 513);
    CHECK(rg.sample_rate == 24000);

    std::vector<double> peak_if;
    for (int t = 5; t < rg.frames - 5; ++t) {
        int best = 0;
        double best_mag = -1.0;
        for (int k = 0; k < rg.bins; ++k) {
            if (rg.mag(t, k) > best_mag) {
                best_mag = rg.mag(t, k);
                best = k;
            }
        }
        const double f = rg.freq(t, best);
        CHECK(std::abs(f - 1000.0) < 5.0);
        peak_if.push_back(f);
    }
    // Steady input: the instantaneous-frequency estimate barely moves.
    double mean = 0.0;
    for (double f : peak_if) mean += f;
    mean /= static_cast<double>(peak_if.size());
    double var = 0.0;
    for (double f : peak_if) var += (f - mean) * (f - mean);
    var /= static_cast<double>(peak_if.size());
    CHECK(var < 1.0);

    for (int t = 0; t < rg.frames; ++t) {
        for (int k = 0; k < rg.bins; ++k) {
            CHECK(rg.freq(t, k) >= 0.0);
            CHECK(rg.freq(t, k) <= 12000.0);
        }
    }
}

TEST_CASE("rainbowgram of silence reports every bin at its center") {
    const FeatureProfile& p = profile_ts();
    Waveform w;
    w.sample_rate = p.sample_rate;
    w.samples.assign(2400, 0.0f);
    const Rainbowgram rg = rainbowgram(w, p);
    for (int t = 0; t < rg.frames; ++t) {
        for (int k = 0; k < rg.bins; ++k) {
            const double center = static_cast<double>(k) * p.sample_rate / p.fft_size;
            CHECK(rg.freq(t, k) == doctest::Approx(center).epsilon(1e-12));
        }
    }
}

TEST_CASE("rainbowgram files carry the documented shapes") {
    TempDir dir;
    const FeatureProfile& p = profile_ts();
    const Waveform w = testutil::make_tone(500.0, 0.1, p.sample_rate);
    const Rainbowgram rg = rainbowgram(w, p);

    write_rainbowgram_csv(rg, dir.file("r.csv"));
    std::ifstream csv(dir.file("r.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "frame,bin,magnitude,inst_freq_hz");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == static_cast<std::size_t>(rg.frames) * rg.bins);

    write_rainbowgram_png(rg, dir.file("r.png"));
    const auto png = read_file_bytes(dir.file("r.png"));
    REQUIRE(png.size() > 8);
    CHECK(png[0] == 0x89);
    CHECK(png[1] == 'P');
    CHECK(png[2] == 'N');
    CHECK(png[3] == 'G');
}

TEST_CASE("feature extraction resamples inputs and checks label durations") {
    TempDir dir;
    const Waveform w48 = testutil::make_tone(440.0, 1.0, 48000);
    audio::write_wav(w48, dir.file("a.wav"));
    audio::write_f0_labels(testutil::constant_f0(440.0f, 1.0), dir.file("a.f0"));

    features_from_wav(dir.file("a.wav"), dir.file("a.f0"), profile_ts(), dir.file("a.mel"));
    const MelSpectrogram mel = load_mel(dir.file("a.mel"));
    CHECK(mel.frames == 200);
    CHECK(mel.dims == 80);
    CHECK(mel.profile == "TS");

    // Labels a third of the track long cannot belong to this audio.
    audio::write_f0_labels(testutil::constant_f0(440.0f, 0.33), dir.file("short.f0"));
    CHECK_THROWS_AS(
        features_from_wav(dir.file("a.wav"), dir.file("short.f0"), profile_ts(),
                          dir.file("b.mel")),
        Error);
}

TEST_CASE("corpus feature extraction writes one container per manifest row") {
    TempDir dir;
    std::filesystem::create_directory(dir.path / "c");
    for (int i = 0; i < 3; ++i) {
        const auto w = testutil::make_tone(200.0 + 50.0 * i, 0.5, 24000);
        audio::write_wav(w, dir.file("c/t" + std::to_string(i) + ".wav"));
        audio::write_f0_labels(testutil::constant_f0(200.0f + 50.0f * i, 0.5),
                               dir.file("c/t" + std::to_string(i) + ".f0"));
    }
    std::ofstream tsv(dir.file("c/m.tsv"));
    tsv << "t0.wav\tt0.f0\tviolin\tp0\ttrain\n"
        << "t1.wav\tt1.f0\tviolin\tp1\tdev\n"
        << "t2.wav\tt2.f0\tcello\tp2\ttest\n";
    tsv.close();

    const auto manifest = audio::read_manifest(dir.file("c/m.tsv"));
    std::filesystem::create_directory(dir.path / "mel");
    const int n = extract_features(manifest, profile_ts(), dir.file("mel"), 2);
    CHECK(n == 3);
    for (int i = 0; i < 3; ++i) {
        const auto mel = load_mel(dir.file("mel/t" + std::to_string(i) + ".mel"));
        CHECK(mel.frames == 100);
        CHECK(mel.profile == "TS");
    }
}
