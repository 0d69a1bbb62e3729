#pragma once

#include <string>
#include <vector>

namespace nws::audio {

// Frame-rate fundamental-frequency labels: one Hz value per line, 10 ms shift,
// 0 marks an unvoiced frame. Frame i is centered at (i + 0.5) * 10 ms.
struct F0Track {
    std::vector<float> values_hz;

    std::size_t size() const { return values_hz.size(); }
    bool voiced(std::size_t i) const { return values_hz[i] > 0.0f; }
};

// Parses a label file. Nonzero values must lie in [20, 20000] Hz; a negative or
// non-numeric entry raises an error naming the offending line.
F0Track read_f0_labels(const std::string& path);

void write_f0_labels(const F0Track& track, const std::string& path);

// Audio and labels describe the same track when their implied durations agree
// within two 10 ms frames; anything larger is treated as a corpus defect.
void check_duration_match(std::size_t n_samples, int sample_rate, std::size_t n_labels,
                          const std::string& context);

} // namespace nws::audio
