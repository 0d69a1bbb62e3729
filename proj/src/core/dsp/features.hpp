#pragma once

#include "core/audio/manifest.hpp"
#include "core/dsp/mel.hpp"
#include "core/dsp/profile.hpp"

#include <string>

namespace nws::dsp {

// Writes one mel container per manifest row (every split) into out_dir named
// <audio stem>.mel, resampling to the profile's rate when needed and checking
// each track's labels against its duration. Returns the number written.
int extract_features(const audio::Manifest& manifest, const FeatureProfile& profile,
                     const std::string& out_dir, int threads = 1);

// Single-file variant; f0_path may be empty to skip the duration check.
void features_from_wav(const std::string& wav_path, const std::string& f0_path,
                       const FeatureProfile& profile, const std::string& out_path);

} // namespace nws::dsp
