#include "core/train/synthesis.hpp"

#include "core/audio/f0_track.hpp"
#include "core/dsp/f0_align.hpp"
#include "core/dsp/mel.hpp"
#include "core/dsp/mulaw.hpp"
#include "core/log.hpp"
#include "core/models/nsf.hpp"
#include "core/train/scenario.hpp"

namespace nws::train {

audio::Waveform synthesize(const SynthRequest& req) {
    const nn::Checkpoint ckpt = nn::load_checkpoint(req.checkpoint_path);
    const dsp::FeatureProfile& profile = dsp::parse_profile(ckpt.profile);

    const dsp::MelSpectrogram mel = dsp::load_mel(req.features_path);
    if (mel.profile != ckpt.profile)
        fail(ErrKind::mismatch, "features use profile %s but the checkpoint was trained on %s",
             mel.profile.c_str(), ckpt.profile.c_str());
    if (mel.dims != profile.n_mels)
        fail(ErrKind::mismatch, "features have %d dims, profile %s expects %d", mel.dims,
             profile.name.c_str(), profile.n_mels);

    const audio::F0Track f0 = audio::read_f0_labels(req.f0_path);
    const std::vector<float> frame_f0 = dsp::align_f0_to_frames(f0, mel.frames, profile);

    audio::Waveform out;
    out.sample_rate = profile.sample_rate;
    log_info("synthesizing %d frames (%.2f s) with %s/%s", mel.frames,
             static_cast<double>(mel.frames) * profile.hop / profile.sample_rate,
             nn::arch_name(ckpt.arch), ckpt.profile.c_str());

    if (ckpt.arch == nn::ArchId::nsf) {
        models::NsfModel<float> model(models::NsfConfig::desk(profile));
        nn::load_params_from_checkpoint(ckpt, model.params());
        const models::Excitation exc = models::source_excitation(
            dsp::upsample_f0_replicate(frame_f0, profile.hop), profile.sample_rate, req.seed);
        out.samples = model.forward(mel_to_seq(mel), frame_f0, exc);
    } else {
        models::WaveNetModel<float> model(models::WaveNetConfig::desk(profile));
        nn::load_params_from_checkpoint(ckpt, model.params());
        Rng rng(req.seed);
        const std::vector<int> codes =
            model.sample_autoregressive(mel_to_seq(mel), frame_f0, req.mode, rng);
        out.samples.resize(codes.size());
        for (std::size_t i = 0; i < codes.size(); ++i)
            out.samples[i] = static_cast<float>(dsp::mu_law_decode(codes[i]));
    }
    return out;
}

} // namespace nws::train
