#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "core/audio/corpus_stats.hpp"
#include "core/audio/f0_track.hpp"
#include "core/audio/manifest.hpp"
#include "core/audio/synth_corpus.hpp"
#include "core/audio/wav_io.hpp"
#include "core/error.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>

using namespace nws;
using namespace nws::audio;
using testutil::TempDir;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// Hand-rolled 16-bit mono WAV so read_wav is checked against raw bytes, not
// against write_wav.
void write_raw_pcm16(const std::string& path, const std::vector<int16_t>& samples, int rate) {
    std::vector<uint8_t> bytes;
    auto put_u32 = [&](uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<uint8_t>(v >> (8 * i)));
    };
    auto put_u16 = [&](uint16_t v) {
        for (int i = 0; i < 2; ++i) bytes.push_back(static_cast<uint8_t>(v >> (8 * i)));
    };
    auto put_tag = [&](const char* t) { bytes.insert(bytes.end(), t, t + 4); };
    const uint32_t data_len = static_cast<uint32_t>(samples.size() * 2);
    put_tag("RIFF");
    put_u32(36 + data_len);
    put_tag("WAVE");
    put_tag("fmt ");
    put_u32(16);
    put_u16(1); // PCM
    put_u16(1); // mono
    put_u32(static_cast<uint32_t>(rate));
    put_u32(static_cast<uint32_t>(rate * 2));
    put_u16(2);
    put_u16(16);
    put_tag("data");
    put_u32(data_len);
    for (int16_t s : samples) put_u16(static_cast<uint16_t>(s));
    write_file_bytes(path, bytes);
}

} // namespace

TEST_CASE("pcm16 sample values map to full-scale normalized amplitudes") {
    TempDir dir;
    const auto p = dir.file("raw.wav");
    write_raw_pcm16(p, {0, -32768, 16384, 32767}, 24000);
    const Waveform w = read_wav(p);
    CHECK(w.sample_rate == 24000);
    REQUIRE(w.size() == 4);
    CHECK(w.samples[0] == 0.0f);
    CHECK(w.samples[1] == -1.0f);
    CHECK(w.samples[2] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(w.samples[3] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-6));
}

TEST_CASE("wav roundtrip: zeros are exact, peaks within one step") {
    TempDir dir;
    Waveform zeros;
    zeros.sample_rate = 24000;
    zeros.samples.assign(24000, 0.0f);
    write_wav(zeros, dir.file("z.wav"));
    const Waveform z = read_wav(dir.file("z.wav"));
    REQUIRE(z.size() == zeros.size());
    for (float v : z.samples) CHECK(v == 0.0f);

    Waveform one;
    one.sample_rate = 8000;
    one.samples = {1.0f, -1.0f};
    write_wav(one, dir.file("one.wav"), 16);
    const Waveform o = read_wav(dir.file("one.wav"));
    CHECK(std::abs(o.samples[0] - 1.0f) <= 1.0f / 32768.0f);
    CHECK(std::abs(o.samples[1] + 1.0f) <= 1.0f / 32768.0f);
}

TEST_CASE("wav roundtrip error bounded by one quantization step") {
    TempDir dir;
    std::mt19937 gen(42);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    Waveform w;
    w.sample_rate = 16000;
    w.samples.resize(4000);
    for (auto& v : w.samples) v = u(gen);

    write_wav(w, dir.file("r16.wav"), 16);
    const Waveform r16 = read_wav(dir.file("r16.wav"));
    REQUIRE(r16.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(std::abs(r16.samples[i] - w.samples[i]) <= 1.0f / 32768.0f);

    write_wav(w, dir.file("r24.wav"), 24);
    const Waveform r24 = read_wav(dir.file("r24.wav"));
    REQUIRE(r24.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(std::abs(r24.samples[i] - w.samples[i]) <= 1.0f / 8388608.0f);
}

TEST_CASE("wav reader rejects malformed and unsupported input") {
    TempDir dir;
    write_text(dir.file("bad.wav"), "this is not a wav file at all");
    CHECK_THROWS_AS(read_wav(dir.file("bad.wav")), Error);
    CHECK_THROWS_AS(read_wav(dir.file("missing.wav")), Error);
    CHECK_THROWS_AS(write_wav(Waveform{{0.1f}, 8000}, dir.file("x.wav"), 8), Error);
}

TEST_CASE("f0 label files parse lines and flag bad content") {
    TempDir dir;
    write_text(dir.file("a.f0"), "0\n440.0\n0\n");
    const F0Track t = read_f0_labels(dir.file("a.f0"));
    REQUIRE(t.size() == 3);
    CHECK(t.values_hz[0] == 0.0f);
    CHECK(t.values_hz[1] == 440.0f);
    CHECK(t.values_hz[2] == 0.0f);
    CHECK(!t.voiced(0));
    CHECK(t.voiced(1));

    write_text(dir.file("empty.f0"), "");
    CHECK(read_f0_labels(dir.file("empty.f0")).size() == 0);

    write_text(dir.file("bad.f0"), "100\nabc\n200\n");
    try {
        read_f0_labels(dir.file("bad.f0"));
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos); // names line 2
    }

    write_text(dir.file("neg.f0"), "-50\n");
    CHECK_THROWS_AS(read_f0_labels(dir.file("neg.f0")), Error);
}

TEST_CASE("f0 label roundtrip through write and read") {
    TempDir dir;
    F0Track t;
    t.values_hz = {0.0f, 123.456f, 987.6f, 0.0f};
    write_f0_labels(t, dir.file("w.f0"));
    const F0Track r = read_f0_labels(dir.file("w.f0"));
    REQUIRE(r.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(r.values_hz[i] == doctest::Approx(t.values_hz[i]).epsilon(1e-6));
}

TEST_CASE("duration check tolerates two frames of label slack") {
    CHECK_NOTHROW(check_duration_match(24000, 24000, 100, "x"));
    CHECK_NOTHROW(check_duration_match(24000, 24000, 98, "x"));
    CHECK_NOTHROW(check_duration_match(24000, 24000, 102, "x"));
    CHECK_THROWS_AS(check_duration_match(24000, 24000, 97, "x"), Error);
    CHECK_THROWS_AS(check_duration_match(24000, 24000, 103, "x"), Error);
}

TEST_CASE("manifest parses records and resolves relative paths") {
    TempDir dir;
    std::filesystem::create_directory(dir.path / "sub");
    write_raw_pcm16(dir.file("sub/a.wav"), std::vector<int16_t>(1600, 0), 16000);
    write_text(dir.file("sub/a.f0"), "0\n0\n0\n0\n0\n0\n0\n0\n0\n0\n");
    write_text(dir.file("m.tsv"), "sub/a.wav\tsub/a.f0\tviolin\tva\ttrain\n");
    const Manifest m = read_manifest(dir.file("m.tsv"));
    REQUIRE(m.entries.size() == 1);
    CHECK(m.entries[0].instrument == "violin");
    CHECK(m.entries[0].piece_id == "va");
    CHECK(m.entries[0].split == Split::train);
    CHECK(std::filesystem::path(m.entries[0].audio_path).is_absolute());
    CHECK_NOTHROW(read_wav(m.entries[0].audio_path));
}

TEST_CASE("manifest rejects a piece that sits in both train and test") {
    TempDir dir;
    write_text(dir.file("m.tsv"),
               "a.wav\ta.f0\tviolin\tpiece1\ttrain\n"
               "b.wav\tb.f0\tviolin\tpiece1\ttest\n");
    try {
        read_manifest(dir.file("m.tsv"));
        FAIL("expected disjointness error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("piece1") != std::string::npos);
    }
}

TEST_CASE("manifest rejects malformed rows and unknown splits") {
    TempDir dir;
    write_text(dir.file("short.tsv"), "a.wav\ta.f0\tviolin\n");
    CHECK_THROWS_AS(read_manifest(dir.file("short.tsv")), Error);
    write_text(dir.file("split.tsv"), "a.wav\ta.f0\tviolin\tp\tvalidation\n");
    CHECK_THROWS_AS(read_manifest(dir.file("split.tsv")), Error);
    CHECK_THROWS_AS(read_manifest(dir.file("nope.tsv")), Error);
}

TEST_CASE("split names parse and print consistently") {
    CHECK(parse_split("train") == Split::train);
    CHECK(parse_split("dev") == Split::dev);
    CHECK(parse_split("test") == Split::test);
    CHECK(std::string(split_name(Split::dev)) == "dev");
    CHECK_THROWS_AS(parse_split("both"), Error);
}

TEST_CASE("segmentation partitions a track losslessly") {
    Waveform w;
    w.sample_rate = 1000;

    w.samples.assign(40000, 0.0f);
    for (std::size_t i = 0; i < w.size(); ++i)
        w.samples[i] = static_cast<float>(i % 97) / 97.0f;
    auto parts = segment_track(w, 15.0);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].size() == 15000);
    CHECK(parts[1].size() == 15000);
    CHECK(parts[2].size() == 10000);

    std::vector<float> joined;
    for (const auto& p : parts) {
        CHECK(p.sample_rate == w.sample_rate);
        joined.insert(joined.end(), p.samples.begin(), p.samples.end());
    }
    CHECK(joined == w.samples);

    w.samples.resize(10000);
    parts = segment_track(w, 15.0);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].size() == 10000);

    w.samples.resize(30000);
    parts = segment_track(w, 15.0);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 15000);
    CHECK(parts[1].size() == 15000);

    CHECK_THROWS_AS(segment_track(w, 0.0), Error);
}

TEST_CASE("corpus stats aggregate duration and voiced extrema per split") {
    TempDir dir;
    const auto tone = testutil::make_tone(300.0, 60.0, 8000);
    write_wav(tone, dir.file("v.wav"));
    F0Track f0 = testutil::constant_f0(300.0f, 60.0);
    write_f0_labels(f0, dir.file("v.f0"));
    write_text(dir.file("m.tsv"), "v.wav\tv.f0\tviolin\tv1\ttrain\n");

    const CorpusStats stats = corpus_stats(read_manifest(dir.file("m.tsv")));
    REQUIRE(stats.rows.size() == 1);
    const StatsRow& r = stats.rows[0];
    CHECK(r.instrument == "violin");
    CHECK(r.split == Split::train);
    CHECK(r.count == 1);
    CHECK(r.duration_min == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.has_f0);
    CHECK(r.f0_max_hz == doctest::Approx(300.0));
    CHECK(r.f0_min_hz == doctest::Approx(300.0));

    const std::string csv = stats_to_csv(stats);
    CHECK(csv.find("instrument,split,count,duration_min,f0_max,f0_min\n") == 0);
    CHECK(csv.find("violin,train,1,1.00,300,300") != std::string::npos);
}

TEST_CASE("corpus stats omit absent splits and blank all-unvoiced extrema") {
    TempDir dir;
    const auto quiet = testutil::make_tone(0.0, 1.0, 8000, 0.0);
    write_wav(quiet, dir.file("q.wav"));
    write_f0_labels(testutil::constant_f0(0.0f, 1.0), dir.file("q.f0"));
    write_text(dir.file("m.tsv"), "q.wav\tq.f0\tcello\tq1\tdev\n");

    const CorpusStats stats = corpus_stats(read_manifest(dir.file("m.tsv")));
    REQUIRE(stats.rows.size() == 1); // only the dev row, no train/test rows
    CHECK(stats.rows[0].split == Split::dev);
    CHECK(!stats.rows[0].has_f0);

    const std::string csv = stats_to_csv(stats);
    CHECK(csv.find("cello,dev,1,0.02,,") != std::string::npos);
}

TEST_CASE("corpus stats wrap file problems with the piece id") {
    TempDir dir;
    write_text(dir.file("m.tsv"), "gone.wav\tgone.f0\tviola\tlost\ttrain\n");
    Manifest m;
    // Bypass read_manifest existence handling by loading, then breaking paths.
    try {
        m = read_manifest(dir.file("m.tsv"));
    } catch (const Error&) {
        // Reader may require files to exist; build the entry by hand instead.
        ManifestEntry e;
        e.audio_path = dir.file("gone.wav");
        e.f0_path = dir.file("gone.f0");
        e.instrument = "viola";
        e.piece_id = "lost";
        e.split = Split::train;
        m.entries = {e};
    }
    try {
        corpus_stats(m);
        FAIL("expected a propagated file error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("lost") != std::string::npos);
    }
}

TEST_CASE("synthetic corpus is reproducible byte for byte") {
    TempDir dir;
    SynthCorpusSpec spec = default_synth_spec();
    spec.tracks_per_instrument = 2;
    spec.seconds = 1.0;
    spec.sample_rate = 16000;
    spec.seed = 7;

    const Manifest m1 = make_synth_corpus(spec, dir.file("c1"));
    const Manifest m2 = make_synth_corpus(spec, dir.file("c2"));
    REQUIRE(m1.entries.size() == m2.entries.size());
    REQUIRE(!m1.entries.empty());
    for (std::size_t i = 0; i < m1.entries.size(); ++i) {
        CHECK(testutil::same_bytes(m1.entries[i].audio_path, m2.entries[i].audio_path));
        CHECK(testutil::same_bytes(m1.entries[i].f0_path, m2.entries[i].f0_path));
    }
    CHECK(testutil::same_bytes(dir.file("c1/manifest.tsv"), dir.file("c2/manifest.tsv")));
}

TEST_CASE("synthetic corpus durations and splits match its spec") {
    TempDir dir;
    SynthCorpusSpec spec = default_synth_spec();
    spec.tracks_per_instrument = 3;
    spec.seconds = 2.0;
    spec.sample_rate = 16000;

    const Manifest m = make_synth_corpus(spec, dir.file("c"));
    CHECK(m.entries.size() == spec.instruments.size() * 3);
    CHECK(m.split_entries(Split::train).size() == spec.instruments.size());
    CHECK(m.split_entries(Split::dev).size() == spec.instruments.size());
    CHECK(m.split_entries(Split::test).size() == spec.instruments.size());

    for (const auto& e : m.entries) {
        const Waveform w = read_wav(e.audio_path);
        CHECK(w.sample_rate == spec.sample_rate);
        CHECK(w.size() == static_cast<std::size_t>(spec.seconds * spec.sample_rate));
        const F0Track f0 = read_f0_labels(e.f0_path);
        check_duration_match(w.size(), w.sample_rate, f0.size(), e.audio_path);
        // Labels stay inside the generating instrument's range.
        const auto inst = std::find_if(spec.instruments.begin(), spec.instruments.end(),
                                       [&](const auto& i) { return i.name == e.instrument; });
        REQUIRE(inst != spec.instruments.end());
        for (float v : f0.values_hz) {
            if (v <= 0.0f) continue;
            CHECK(v >= inst->f0_lo_hz * 0.99);
            CHECK(v <= inst->f0_hi_hz * 1.01);
        }
    }

    // Loading through read_manifest re-validates split disjointness.
    CHECK_NOTHROW(read_manifest(dir.file("c/manifest.tsv")));
}
