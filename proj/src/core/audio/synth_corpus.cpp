#include "core/audio/synth_corpus.hpp"

#include "core/audio/f0_track.hpp"
#include "core/audio/wav_io.hpp"
#include "core/error.hpp"
#include "core/log.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace nws::audio {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNoteMinS = 0.35, kNoteMaxS = 0.8;
constexpr double kRestMinS = 0.08, kRestMaxS = 0.2;
constexpr double kRestProb = 0.15;
constexpr double kRampS = 0.005;
constexpr double kNoiseStd = 0.002;
constexpr int kHarmonics = 6;
constexpr double kHarmonicAmp = 0.3;

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

struct Note {
    double start_s = 0.0;
    double dur_s = 0.0;
    double f0_hz = 0.0; // 0 for a rest
};

std::vector<Note> plan_track(Rng& rng, const SynthInstrument& inst, double seconds) {
    std::vector<Note> plan;
    double t = 0.0;
    while (t < seconds - 1e-12) {
        Note n;
        n.start_s = t;
        if (rng.uniform() < kRestProb) {
            n.dur_s = rng.uniform(kRestMinS, kRestMaxS);
            n.f0_hz = 0.0;
        } else {
            n.dur_s = rng.uniform(kNoteMinS, kNoteMaxS);
            n.f0_hz = log_uniform(rng, inst.f0_lo_hz, inst.f0_hi_hz);
        }
        n.dur_s = std::min(n.dur_s, seconds - t);
        plan.push_back(n);
        t += n.dur_s;
    }
    return plan;
}

void render_note(const Note& n, int sr, std::vector<float>& out) {
    if (n.f0_hz <= 0.0) return;
    const std::size_t s0 = static_cast<std::size_t>(std::llround(n.start_s * sr));
    const std::size_t s1 =
        std::min(out.size(), static_cast<std::size_t>(std::llround((n.start_s + n.dur_s) * sr)));
    if (s1 <= s0) return;
    const std::size_t len = s1 - s0;
    const std::size_t ramp = std::min(static_cast<std::size_t>(std::llround(kRampS * sr)), len / 2);

    for (int k = 1; k <= kHarmonics; ++k) {
        const double fk = n.f0_hz * k;
        if (fk > 0.45 * sr) break;
        const double amp = kHarmonicAmp / k;
        const double w = 2.0 * kPi * fk / sr;
        for (std::size_t i = 0; i < len; ++i) {
            double env = 1.0;
            if (i < ramp)
                env = 0.5 * (1.0 - std::cos(kPi * (static_cast<double>(i) + 1.0) / (ramp + 1.0)));
            else if (len - 1 - i < ramp)
                env = 0.5 *
                      (1.0 - std::cos(kPi * (static_cast<double>(len - i)) / (ramp + 1.0)));
            out[s0 + i] += static_cast<float>(env * amp * std::sin(w * static_cast<double>(i)));
        }
    }
}

F0Track labels_from_plan(const std::vector<Note>& plan, double seconds) {
    F0Track track;
    const std::size_t n = static_cast<std::size_t>(std::llround(seconds * 100.0));
    track.values_hz.resize(n, 0.0f);
    std::size_t note = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double center = (static_cast<double>(i) + 0.5) * 0.010;
        while (note + 1 < plan.size() && center >= plan[note].start_s + plan[note].dur_s) ++note;
        if (center >= plan[note].start_s && center < plan[note].start_s + plan[note].dur_s)
            track.values_hz[i] = static_cast<float>(plan[note].f0_hz);
    }
    return track;
}

} // namespace

SynthCorpusSpec default_synth_spec() {
    SynthCorpusSpec spec;
    spec.instruments = {
        {"bass", 110.0, 220.0},
        {"alto", 220.0, 440.0},
        {"soprano", 440.0, 880.0},
    };
    return spec;
}

Manifest make_synth_corpus(const SynthCorpusSpec& spec, const std::string& out_dir) {
    if (spec.instruments.empty())
        fail(ErrKind::invalid_arg, "synthetic corpus needs at least one instrument");
    if (spec.tracks_per_instrument < 1)
        fail(ErrKind::invalid_arg, "tracks_per_instrument must be >= 1");
    if (spec.seconds <= 0.1)
        fail(ErrKind::invalid_arg, "track duration must exceed 0.1 s");
    for (const auto& inst : spec.instruments)
        if (!(inst.f0_lo_hz >= 20.0 && inst.f0_hi_hz <= 20000.0 && inst.f0_lo_hz <= inst.f0_hi_hz))
            fail(ErrKind::invalid_arg, "instrument '%s' has invalid f0 range [%g, %g]",
                 inst.name.c_str(), inst.f0_lo_hz, inst.f0_hi_hz);

    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "wav", ec);
    fs::create_directories(fs::path(out_dir) / "f0", ec);
    if (ec) fail(ErrKind::io, "cannot create corpus directory %s", out_dir.c_str());

    Rng rng(spec.seed);
    const std::size_t n_samples =
        static_cast<std::size_t>(std::llround(spec.seconds * spec.sample_rate));

    std::ofstream manifest_out(fs::path(out_dir) / "manifest.tsv");
    if (!manifest_out) fail(ErrKind::io, "cannot write manifest in %s", out_dir.c_str());

    for (const auto& inst : spec.instruments) {
        for (int k = 0; k < spec.tracks_per_instrument; ++k) {
            const auto plan = plan_track(rng, inst, spec.seconds);

            Waveform w;
            w.sample_rate = spec.sample_rate;
            w.samples.assign(n_samples, 0.0f);
            for (const auto& n : plan) render_note(n, spec.sample_rate, w.samples);
            for (auto& s : w.samples) s += static_cast<float>(kNoiseStd * rng.gaussian());

            const std::string stem = inst.name + "_" + std::to_string(k);
            const std::string wav_rel = "wav/" + stem + ".wav";
            const std::string f0_rel = "f0/" + stem + ".f0";
            write_wav(w, (fs::path(out_dir) / wav_rel).string(), 16);
            write_f0_labels(labels_from_plan(plan, spec.seconds),
                            (fs::path(out_dir) / f0_rel).string());

            const int last = spec.tracks_per_instrument - 1;
            const char* split = "train";
            if (k == last && spec.tracks_per_instrument >= 2) split = "test";
            else if (k == last - 1 && spec.tracks_per_instrument >= 3) split = "dev";
            manifest_out << wav_rel << '\t' << f0_rel << '\t' << inst.name << '\t' << stem
                         << '\t' << split << '\n';
        }
    }
    manifest_out.close();
    if (!manifest_out) fail(ErrKind::io, "short write: manifest in %s", out_dir.c_str());

    log_info("synthetic corpus: %zu instruments x %d tracks, %.1f s each, in %s",
             spec.instruments.size(), spec.tracks_per_instrument, spec.seconds, out_dir.c_str());
    return read_manifest((fs::path(out_dir) / "manifest.tsv").string());
}

} // namespace nws::audio
