#include "core/dsp/features.hpp"

#include "core/audio/f0_track.hpp"
#include "core/audio/wav_io.hpp"
#include "core/dsp/resample.hpp"
#include "core/error.hpp"
#include "core/log.hpp"

#include <atomic>
#include <filesystem>
#include <thread>
#include <vector>

namespace nws::dsp {

namespace {

void extract_one(const audio::ManifestEntry& e, const FeatureProfile& profile,
                 const std::string& out_dir) {
    try {
        audio::Waveform w = audio::read_wav(e.audio_path);
        const audio::F0Track labels = audio::read_f0_labels(e.f0_path);
        if (w.sample_rate != profile.sample_rate) w = resample(w, profile.sample_rate);
        audio::check_duration_match(w.size(), w.sample_rate, labels.size(), e.piece_id);

        const MelSpectrogram mel = mel_spectrogram(w, profile);
        const std::string stem = std::filesystem::path(e.audio_path).stem().string();
        const std::string out = (std::filesystem::path(out_dir) / (stem + ".mel")).string();
        save_mel(mel, out);
        log_debug("wrote %s (%d frames)", out.c_str(), mel.frames);
    } catch (const Error& err) {
        fail(err.kind(), "track '%s': %s", e.piece_id.c_str(), err.what());
    }
}

} // namespace

int extract_features(const audio::Manifest& manifest, const FeatureProfile& profile,
                     const std::string& out_dir, int threads) {
    if (manifest.entries.empty()) fail(ErrKind::invalid_arg, "manifest is empty");
    std::filesystem::create_directories(out_dir);

    const auto& entries = manifest.entries;
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(entries.size())));
    if (workers == 1) {
        for (const auto& e : entries) extract_one(e, profile, out_dir);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int wi = 0; wi < workers; ++wi) {
            pool.emplace_back([&, wi] {
                try {
                    for (std::size_t i = next++; i < entries.size(); i = next++)
                        extract_one(entries[i], profile, out_dir);
                } catch (...) {
                    errors[static_cast<std::size_t>(wi)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    log_info("extracted features for %zu tracks into %s", entries.size(), out_dir.c_str());
    return static_cast<int>(entries.size());
}

void features_from_wav(const std::string& wav_path, const std::string& f0_path,
                       const FeatureProfile& profile, const std::string& out_path) {
    audio::Waveform w = audio::read_wav(wav_path);
    if (!f0_path.empty()) {
        const audio::F0Track labels = audio::read_f0_labels(f0_path);
        audio::check_duration_match(w.size(), w.sample_rate, labels.size(), wav_path);
    }
    if (w.sample_rate != profile.sample_rate) w = resample(w, profile.sample_rate);
    save_mel(mel_spectrogram(w, profile), out_path);
}

} // namespace nws::dsp
