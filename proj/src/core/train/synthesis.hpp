#pragma once

#include "core/audio/waveform.hpp"
#include "core/models/wavenet.hpp"

#include <cstdint>
#include <string>

namespace nws::train {

struct SynthRequest {
    std::string checkpoint_path;
    std::string features_path; // saved mel container
    std::string f0_path;       // 10 ms labels covering the same stretch
    models::SampleMode mode = models::SampleMode::categorical; // quantized arch only
    uint64_t seed = 1;
};

// Rebuilds the architecture named in the checkpoint at the checkpoint's
// profile and renders frames * hop samples. The feature file must carry the
// same profile the checkpoint was trained with.
audio::Waveform synthesize(const SynthRequest& req);

} // namespace nws::train
