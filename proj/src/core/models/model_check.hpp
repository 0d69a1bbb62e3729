#pragma once

#include "core/nn/grad_check.hpp"

#include <cstdint>

namespace nws::models {

// Finite-difference gradient checks of the full synthesizers at their tiny
// configurations (every layer kind, both filter branches, the voiced-band
// head, and the sampling-free training losses). Deterministic per seed.
// max_per_block > 0 checks an evenly strided subset of each weight block.
nn::GradCheckReport check_nsf_gradients(uint64_t seed, long max_per_block = -1);
nn::GradCheckReport check_wavenet_gradients(uint64_t seed, long max_per_block = -1);

} // namespace nws::models
