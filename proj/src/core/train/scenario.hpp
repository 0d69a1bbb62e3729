#pragma once

#include "core/audio/manifest.hpp"
#include "core/dsp/mel.hpp"
#include "core/dsp/profile.hpp"
#include "core/nn/checkpoint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nws::train {

// scratch trains from a fresh seeded init; zero_shot loads a checkpoint and
// saves it back untouched (no steps); fine_tune loads a checkpoint and keeps
// training with fresh optimizer state.
enum class Scenario { scratch, zero_shot, fine_tune };

const char* scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

struct TrainConfig {
    Scenario scenario = Scenario::scratch;
    nn::ArchId arch = nn::ArchId::nsf;
    dsp::FeatureProfile profile;
    double lr = 1e-4;
    double crop_seconds = 1.0;
    int max_steps = 0;
    uint64_t seed = 1;
    std::string init_checkpoint; // required by zero_shot and fine_tune
    std::string loss_log_path;   // optional step,loss CSV
    std::string out_checkpoint;  // required
};

struct TrainResult {
    int steps = 0;
    std::vector<double> losses; // one entry per optimizer step
};

// Runs one scenario over the manifest's train split: every step crops a
// random hop-aligned window from a random track, computes crop-local features
// and the architecture's loss, and takes one Adam step. Deterministic for a
// fixed config and manifest.
TrainResult run_scenario(const TrainConfig& cfg, const audio::Manifest& manifest);

nn::Seq<float> mel_to_seq(const dsp::MelSpectrogram& mel);

} // namespace nws::train
