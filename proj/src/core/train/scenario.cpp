#include "core/train/scenario.hpp"

#include "core/audio/f0_track.hpp"
#include "core/audio/wav_io.hpp"
#include "core/dsp/f0_align.hpp"
#include "core/dsp/mulaw.hpp"
#include "core/dsp/resample.hpp"
#include "core/log.hpp"
#include "core/models/nsf.hpp"
#include "core/models/stft_loss.hpp"
#include "core/models/wavenet.hpp"
#include "core/nn/adam.hpp"
#include "core/nn/layers.hpp"
#include "core/rng.hpp"

#include <cstdio>
#include <memory>

namespace nws::train {

const char* scenario_name(Scenario s) {
    switch (s) {
    case Scenario::scratch: return "scratch";
    case Scenario::zero_shot: return "zero_shot";
    case Scenario::fine_tune: return "fine_tune";
    }
    return "?";
}

Scenario parse_scenario(const std::string& name) {
    if (name == "scratch") return Scenario::scratch;
    if (name == "zero_shot" || name == "zero-shot") return Scenario::zero_shot;
    if (name == "fine_tune" || name == "fine-tune") return Scenario::fine_tune;
    fail(ErrKind::invalid_arg, "unknown scenario '%s' (scratch, zero-shot, fine-tune)",
         name.c_str());
}

nn::Seq<float> mel_to_seq(const dsp::MelSpectrogram& mel) {
    nn::Seq<float> s(mel.frames, mel.dims);
    s.v = mel.data;
    return s;
}

namespace {

struct TrackData {
    std::vector<float> samples;
    audio::F0Track labels;
    std::string piece;
};

std::vector<TrackData> load_train_tracks(const audio::Manifest& manifest,
                                         const dsp::FeatureProfile& profile) {
    const auto entries = manifest.split_entries(audio::Split::train);
    if (entries.empty()) fail(ErrKind::invalid_arg, "manifest has no train tracks");
    std::vector<TrackData> tracks;
    tracks.reserve(entries.size());
    for (const auto* e : entries) {
        try {
            audio::Waveform w = audio::read_wav(e->audio_path);
            if (w.sample_rate != profile.sample_rate) w = dsp::resample(w, profile.sample_rate);
            TrackData t;
            t.labels = audio::read_f0_labels(e->f0_path);
            audio::check_duration_match(w.size(), w.sample_rate, t.labels.size(), e->piece_id);
            if (w.size() < static_cast<std::size_t>(profile.hop))
                fail(ErrKind::invalid_arg, "track shorter than one hop");
            t.samples = std::move(w.samples);
            t.piece = e->piece_id;
            tracks.push_back(std::move(t));
        } catch (const Error& err) {
            fail(err.kind(), "track '%s': %s", e->piece_id.c_str(), err.what());
        }
    }
    return tracks;
}

struct Crop {
    std::vector<float> samples;
    std::vector<float> frame_f0;
    dsp::MelSpectrogram mel;
    long long start = 0;
    int frames = 0;
};

// Random hop-aligned window, shortened to the track when the track is
// smaller than the requested crop. Consumes exactly two rng draws.
Crop pick_crop(const std::vector<TrackData>& tracks, const dsp::FeatureProfile& profile,
               int crop_frames, Rng& rng) {
    const std::size_t ti = std::min(
        tracks.size() - 1, static_cast<std::size_t>(rng.uniform() * tracks.size()));
    const TrackData& track = tracks[ti];
    const long long usable = static_cast<long long>(track.samples.size()) / profile.hop;
    const long long frames = std::min<long long>(crop_frames, usable);
    const long long span = usable - frames;
    long long start_frame = static_cast<long long>(rng.uniform() * (span + 1));
    start_frame = std::min(start_frame, span);

    Crop c;
    c.frames = static_cast<int>(frames);
    c.start = start_frame * profile.hop;
    const std::size_t len = static_cast<std::size_t>(frames) * profile.hop;
    c.samples.assign(track.samples.begin() + c.start, track.samples.begin() + c.start + len);

    audio::Waveform w;
    w.samples = c.samples;
    w.sample_rate = profile.sample_rate;
    c.mel = dsp::mel_spectrogram(w, profile);
    c.frame_f0 = dsp::align_f0_to_frames(track.labels, c.frames, profile, c.start);
    return c;
}

uint64_t step_seed(uint64_t base, int step) {
    return base * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(step);
}

void write_loss_log(const std::string& path, const std::vector<double>& losses) {
    if (path.empty()) return;
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) fail(ErrKind::io, "cannot write %s", path.c_str());
    std::fprintf(f, "step,loss\n");
    for (std::size_t i = 0; i < losses.size(); ++i)
        std::fprintf(f, "%d,%.8g\n", static_cast<int>(i + 1), losses[i]);
    std::fclose(f);
}

template <class Model>
void load_or_init(Model& model, const TrainConfig& cfg, Rng& rng) {
    if (cfg.scenario == Scenario::scratch) {
        model.init(rng);
        return;
    }
    if (cfg.init_checkpoint.empty())
        fail(ErrKind::invalid_arg, "scenario %s needs an initial checkpoint",
             scenario_name(cfg.scenario));
    const nn::Checkpoint ckpt = nn::load_checkpoint(cfg.init_checkpoint);
    if (ckpt.arch != cfg.arch)
        fail(ErrKind::mismatch, "checkpoint arch is %s, requested %s", nn::arch_name(ckpt.arch),
             nn::arch_name(cfg.arch));
    if (ckpt.profile != cfg.profile.name)
        fail(ErrKind::mismatch, "checkpoint profile is %s, requested %s", ckpt.profile.c_str(),
             cfg.profile.name.c_str());
    const auto params = model.params();
    nn::load_params_from_checkpoint(ckpt, params);
}

TrainResult train_nsf(const TrainConfig& cfg, const std::vector<TrackData>& tracks,
                      int crop_frames) {
    models::NsfModel<float> model(models::NsfConfig::desk(cfg.profile));
    Rng rng(cfg.seed);
    load_or_init(model, cfg, rng);
    const auto params = model.params();

    TrainResult res;
    const int steps = cfg.scenario == Scenario::zero_shot ? 0 : cfg.max_steps;
    nn::Adam<float> opt(cfg.lr);
    models::MultiResStftLoss<float> loss_fn;
    for (int step = 1; step <= steps; ++step) {
        const Crop crop = pick_crop(tracks, cfg.profile, crop_frames, rng);
        const std::vector<float> f0_samples =
            dsp::upsample_f0_replicate(crop.frame_f0, cfg.profile.hop);
        const models::Excitation exc = models::source_excitation(
            f0_samples, cfg.profile.sample_rate, step_seed(cfg.seed, step));

        const std::vector<float> gen =
            model.forward(mel_to_seq(crop.mel), crop.frame_f0, exc);
        const float loss = loss_fn.forward(gen, crop.samples);
        for (auto* p : params) p->zero_grad();
        model.backward(loss_fn.backward());
        opt.step(params);
        res.losses.push_back(loss);
        log_debug("step %d loss %.6g", step, static_cast<double>(loss));
    }
    res.steps = steps;

    nn::save_checkpoint(nn::checkpoint_from_params(cfg.arch, cfg.profile.name, params),
                        cfg.out_checkpoint);
    return res;
}

TrainResult train_wavenet(const TrainConfig& cfg, const std::vector<TrackData>& tracks,
                          int crop_frames) {
    models::WaveNetModel<float> model(models::WaveNetConfig::desk(cfg.profile));
    Rng rng(cfg.seed);
    load_or_init(model, cfg, rng);
    const auto params = model.params();

    TrainResult res;
    const int steps = cfg.scenario == Scenario::zero_shot ? 0 : cfg.max_steps;
    nn::Adam<float> opt(cfg.lr);
    for (int step = 1; step <= steps; ++step) {
        const Crop crop = pick_crop(tracks, cfg.profile, crop_frames, rng);
        std::vector<int> codes(crop.samples.size());
        for (std::size_t i = 0; i < codes.size(); ++i)
            codes[i] = dsp::mu_law_encode(crop.samples[i]);

        const nn::Seq<float> logits =
            model.teacher_forced(mel_to_seq(crop.mel), crop.frame_f0, codes);
        nn::Seq<float> grad;
        const float loss = nn::softmax_cross_entropy(logits, codes, grad);
        for (auto* p : params) p->zero_grad();
        model.backward(grad);
        opt.step(params);
        res.losses.push_back(loss);
        log_debug("step %d loss %.6g", step, static_cast<double>(loss));
    }
    res.steps = steps;

    nn::save_checkpoint(nn::checkpoint_from_params(cfg.arch, cfg.profile.name, params),
                        cfg.out_checkpoint);
    return res;
}

} // namespace

TrainResult run_scenario(const TrainConfig& cfg, const audio::Manifest& manifest) {
    if (cfg.out_checkpoint.empty()) fail(ErrKind::invalid_arg, "no output checkpoint path");
    if (cfg.crop_seconds <= 0.0)
        fail(ErrKind::invalid_arg, "crop seconds must be positive, got %g", cfg.crop_seconds);
    if (cfg.max_steps < 0) fail(ErrKind::invalid_arg, "negative step count %d", cfg.max_steps);

    const int crop_frames = static_cast<int>(
        std::llround(cfg.crop_seconds * cfg.profile.sample_rate) / cfg.profile.hop);
    if (crop_frames < 1)
        fail(ErrKind::invalid_arg, "crop of %g s is shorter than one hop", cfg.crop_seconds);

    const std::vector<TrackData> tracks = load_train_tracks(manifest, cfg.profile);
    log_info("training %s %s on %zu tracks, %d steps, crop %d frames",
             nn::arch_name(cfg.arch), scenario_name(cfg.scenario), tracks.size(), cfg.max_steps,
             crop_frames);

    TrainResult res = cfg.arch == nn::ArchId::nsf ? train_nsf(cfg, tracks, crop_frames)
                                                  : train_wavenet(cfg, tracks, crop_frames);
    write_loss_log(cfg.loss_log_path, res.losses);
    return res;
}

} // namespace nws::train
