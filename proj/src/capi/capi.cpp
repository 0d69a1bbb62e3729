#include "nws.h"

#include "core/audio/corpus_stats.hpp"
#include "core/audio/f0_track.hpp"
#include "core/audio/manifest.hpp"
#include "core/audio/synth_corpus.hpp"
#include "core/audio/wav_io.hpp"
#include "core/audio/waveform.hpp"
#include "core/dsp/features.hpp"
#include "core/dsp/mel.hpp"
#include "core/dsp/rainbowgram.hpp"
#include "core/dsp/resample.hpp"
#include "core/error.hpp"
#include "core/eval/metrics.hpp"
#include "core/log.hpp"
#include "core/models/model_check.hpp"
#include "core/train/scenario.hpp"
#include "core/train/synthesis.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace nws;

namespace {

thread_local std::string t_last_error;

nws_status kind_to_status(ErrKind k) {
    switch (k) {
    case ErrKind::invalid_arg: return NWS_E_INVALID;
    case ErrKind::io: return NWS_E_IO;
    case ErrKind::format: return NWS_E_FORMAT;
    case ErrKind::mismatch: return NWS_E_MISMATCH;
    case ErrKind::runtime: return NWS_E_RUNTIME;
    }
    return NWS_E_RUNTIME;
}

template <class F>
nws_status guarded(F&& f) {
    try {
        f();
        return NWS_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return kind_to_status(e.kind());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return NWS_E_RUNTIME;
    } catch (...) {
        t_last_error = "unknown failure";
        return NWS_E_RUNTIME;
    }
}

nws_status invalid(const std::string& msg) {
    t_last_error = msg;
    return NWS_E_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string opt(const char* s) { return s ? std::string(s) : std::string(); }

} // namespace

struct nws_waveform {
    audio::Waveform w;
};
struct nws_wavelist {
    std::vector<nws_waveform> items;
};
struct nws_f0 {
    audio::F0Track track;
};
struct nws_mel {
    dsp::MelSpectrogram mel;
};

extern "C" {

size_t nws_last_error(char* buf, size_t cap) {
    if (buf && cap > 0) {
        const size_t n = std::min(cap - 1, t_last_error.size());
        std::memcpy(buf, t_last_error.data(), n);
        buf[n] = '\0';
    }
    return t_last_error.size();
}

void nws_string_free(char* s) { std::free(s); }

/* ---- waveforms ---------------------------------------------------------- */

nws_status nws_waveform_create(const float* samples, size_t n, int sample_rate,
                               nws_waveform** out) {
    if (!out) return invalid("null out handle");
    if (!samples && n > 0) return invalid("null samples");
    if (sample_rate <= 0) return invalid("sample rate must be positive");
    return guarded([&] {
        auto* h = new nws_waveform;
        h->w.samples.assign(samples, samples + n);
        h->w.sample_rate = sample_rate;
        *out = h;
    });
}

nws_status nws_waveform_read_wav(const char* path, nws_waveform** out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] {
        auto* h = new nws_waveform{audio::read_wav(path)};
        *out = h;
    });
}

nws_status nws_waveform_write_wav(const nws_waveform* w, const char* path, int bit_depth) {
    if (!w || !path) return invalid("null argument");
    return guarded([&] { audio::write_wav(w->w, path, bit_depth); });
}

size_t nws_waveform_size(const nws_waveform* w) { return w ? w->w.size() : 0; }

int nws_waveform_sample_rate(const nws_waveform* w) { return w ? w->w.sample_rate : 0; }

nws_status nws_waveform_copy_samples(const nws_waveform* w, float* dst, size_t cap) {
    if (!w || !dst) return invalid("null argument");
    if (cap < w->w.size()) return invalid("destination too small");
    std::memcpy(dst, w->w.samples.data(), w->w.size() * sizeof(float));
    return NWS_OK;
}

nws_status nws_waveform_resample(const nws_waveform* w, int target_rate, nws_waveform** out) {
    if (!w || !out) return invalid("null argument");
    return guarded([&] {
        auto* h = new nws_waveform{dsp::resample(w->w, target_rate)};
        *out = h;
    });
}

void nws_waveform_free(nws_waveform* w) { delete w; }

nws_status nws_waveform_segment(const nws_waveform* w, double max_seconds, nws_wavelist** out) {
    if (!w || !out) return invalid("null argument");
    return guarded([&] {
        auto* l = new nws_wavelist;
        for (auto& piece : audio::segment_track(w->w, max_seconds))
            l->items.push_back(nws_waveform{std::move(piece)});
        *out = l;
    });
}

size_t nws_wavelist_size(const nws_wavelist* l) { return l ? l->items.size() : 0; }

const nws_waveform* nws_wavelist_get(const nws_wavelist* l, size_t i) {
    if (!l || i >= l->items.size()) return nullptr;
    return &l->items[i];
}

void nws_wavelist_free(nws_wavelist* l) { delete l; }

/* ---- pitch labels ------------------------------------------------------- */

nws_status nws_f0_read(const char* path, nws_f0** out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] {
        auto* h = new nws_f0{audio::read_f0_labels(path)};
        *out = h;
    });
}

size_t nws_f0_size(const nws_f0* f) { return f ? f->track.size() : 0; }

const float* nws_f0_values(const nws_f0* f) { return f ? f->track.values_hz.data() : nullptr; }

void nws_f0_free(nws_f0* f) { delete f; }

/* ---- features ----------------------------------------------------------- */

nws_status nws_mel_load(const char* path, nws_mel** out) {
    if (!path || !out) return invalid("null argument");
    return guarded([&] {
        auto* h = new nws_mel{dsp::load_mel(path)};
        *out = h;
    });
}

int nws_mel_frames(const nws_mel* m) { return m ? m->mel.frames : 0; }
int nws_mel_dims(const nws_mel* m) { return m ? m->mel.dims : 0; }
const char* nws_mel_profile(const nws_mel* m) { return m ? m->mel.profile.c_str() : nullptr; }
void nws_mel_free(nws_mel* m) { delete m; }

nws_status nws_extract_features(const char* manifest_path, const char* profile,
                                const char* out_dir, int threads) {
    if (!manifest_path || !profile || !out_dir) return invalid("null argument");
    return guarded([&] {
        const audio::Manifest m = audio::read_manifest(manifest_path);
        dsp::extract_features(m, dsp::parse_profile(profile), out_dir, threads);
    });
}

nws_status nws_features_from_wav(const char* wav_path, const char* f0_path, const char* profile,
                                 const char* out_path) {
    if (!wav_path || !profile || !out_path) return invalid("null argument");
    return guarded([&] {
        dsp::features_from_wav(wav_path, opt(f0_path), dsp::parse_profile(profile), out_path);
    });
}

/* ---- corpus ------------------------------------------------------------- */

nws_status nws_make_synth_corpus(const char* out_dir, int tracks_per_instrument, double seconds,
                                 int sample_rate, uint64_t seed) {
    if (!out_dir) return invalid("null out_dir");
    return guarded([&] {
        audio::SynthCorpusSpec spec = audio::default_synth_spec();
        spec.tracks_per_instrument = tracks_per_instrument;
        spec.seconds = seconds;
        spec.sample_rate = sample_rate;
        spec.seed = seed;
        audio::make_synth_corpus(spec, out_dir);
    });
}

nws_status nws_corpus_stats(const char* manifest_path, char** csv_out) {
    if (!manifest_path || !csv_out) return invalid("null argument");
    return guarded([&] {
        const audio::Manifest m = audio::read_manifest(manifest_path);
        const std::string csv = audio::stats_to_csv(audio::corpus_stats(m));
        *csv_out = dup_string(csv);
        if (!*csv_out) fail(ErrKind::runtime, "out of memory");
    });
}

/* ---- training and synthesis --------------------------------------------- */

void nws_train_params_init(nws_train_params* p) {
    if (!p) return;
    std::memset(p, 0, sizeof(*p));
    p->arch = "nsf";
    p->scenario = "scratch";
    p->profile = "TS";
    p->max_steps = 0;
    p->lr = 1e-4;
    p->crop_seconds = 1.0;
    p->seed = 1;
}

nws_status nws_train(const nws_train_params* p) {
    if (!p) return invalid("null params");
    if (!p->manifest_path) return invalid("null manifest path");
    if (!p->arch || !p->scenario || !p->profile) return invalid("null arch/scenario/profile");
    if (!p->out_checkpoint) return invalid("null output checkpoint path");
    return guarded([&] {
        train::TrainConfig cfg;
        cfg.scenario = train::parse_scenario(p->scenario);
        cfg.arch = nn::parse_arch(p->arch);
        cfg.profile = dsp::parse_profile(p->profile);
        cfg.lr = p->lr;
        cfg.crop_seconds = p->crop_seconds;
        cfg.max_steps = p->max_steps;
        cfg.seed = p->seed;
        cfg.init_checkpoint = opt(p->init_checkpoint);
        cfg.loss_log_path = opt(p->loss_log_path);
        cfg.out_checkpoint = p->out_checkpoint;
        train::run_scenario(cfg, audio::read_manifest(p->manifest_path));
    });
}

nws_status nws_synth(const char* checkpoint_path, const char* features_path, const char* f0_path,
                     const char* out_wav_path, const char* mode, uint64_t seed) {
    if (!checkpoint_path || !features_path || !f0_path || !out_wav_path || !mode)
        return invalid("null argument");
    models::SampleMode m;
    if (std::strcmp(mode, "sample") == 0) m = models::SampleMode::categorical;
    else if (std::strcmp(mode, "argmax") == 0) m = models::SampleMode::argmax;
    else return invalid("mode must be 'sample' or 'argmax'");
    return guarded([&] {
        train::SynthRequest req;
        req.checkpoint_path = checkpoint_path;
        req.features_path = features_path;
        req.f0_path = f0_path;
        req.mode = m;
        req.seed = seed;
        audio::write_wav(train::synthesize(req), out_wav_path, 16);
    });
}

/* ---- evaluation --------------------------------------------------------- */

nws_status nws_evaluate(const char* manifest_path, const char* split, const char* synth_dir,
                        const char* system_name, double voicing_threshold, int threads,
                        const char* out_csv_path, int* n_missing) {
    if (!manifest_path || !split || !synth_dir || !system_name || !out_csv_path)
        return invalid("null argument");
    return guarded([&] {
        const audio::Manifest m = audio::read_manifest(manifest_path);
        const eval::EvalReport report = eval::evaluate_system(
            m, audio::parse_split(split), synth_dir, system_name, voicing_threshold, threads);
        for (const auto& name : report.missing)
            log_error("no rendition for %s in %s", name.c_str(), synth_dir);
        eval::write_eval_report(report, out_csv_path);
        if (n_missing) *n_missing = static_cast<int>(report.missing.size());
    });
}

nws_status nws_rainbowgram(const char* wav_path, const char* profile, const char* csv_path,
                           const char* png_path) {
    if (!wav_path || !profile) return invalid("null argument");
    if (!csv_path && !png_path) return invalid("need a csv or png destination");
    return guarded([&] {
        const dsp::FeatureProfile& prof = dsp::parse_profile(profile);
        audio::Waveform w = audio::read_wav(wav_path);
        if (w.sample_rate != prof.sample_rate) w = dsp::resample(w, prof.sample_rate);
        const dsp::Rainbowgram rg = dsp::rainbowgram(w, prof);
        if (csv_path) dsp::write_rainbowgram_csv(rg, csv_path);
        if (png_path) dsp::write_rainbowgram_png(rg, png_path);
    });
}

nws_status nws_gradcheck(const char* arch, double tolerance, uint64_t seed, char** report,
                         int* pass) {
    if (!arch) return invalid("null arch");
    return guarded([&] {
        const nn::ArchId id = nn::parse_arch(arch);
        const nn::GradCheckReport rep = id == nn::ArchId::nsf
                                            ? models::check_nsf_gradients(seed)
                                            : models::check_wavenet_gradients(seed);
        if (report) {
            *report = dup_string(rep.to_string());
            if (!*report) fail(ErrKind::runtime, "out of memory");
        }
        if (pass) *pass = rep.pass(tolerance) ? 1 : 0;
    });
}

} /* extern "C" */
