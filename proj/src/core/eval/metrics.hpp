#pragma once

#include "core/audio/manifest.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nws::eval {

// Pearson correlation of paired values: nullopt with fewer than two pairs or
// when either side has zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

// Percentage of frames whose voicing flags (value > 0) disagree, after
// truncating both tracks to the shorter one. Empty comparison is an error.
double vuv_error_pct(const std::vector<float>& ref_f0, const std::vector<float>& est_f0);

// Correlation of two f0 tracks over the frames where both are voiced, after
// truncating to the shorter one. nullopt when undefined (see pearson).
std::optional<double> track_pcc(const std::vector<float>& ref_f0,
                                const std::vector<float>& est_f0);

struct EvalRow {
    std::string instrument; // instrument name, or "overall" for the pooled row
    std::optional<double> pcc;
    double vuv_pct = 0.0;
    long long n_frames = 0; // frames compared after truncation
};

struct EvalReport {
    std::string system;
    std::vector<EvalRow> rows;        // instruments in sorted order, overall last
    std::vector<std::string> missing; // synthesized files that were not found
};

// Scores one system's renditions against the corpus labels: for every track
// of the split, <synth_dir>/<audio basename> is pitch-tracked and compared to
// the track's labels. Correlation pools the mutually voiced frames per
// instrument; voicing error pools all compared frames. Tracks without a
// rendition are recorded in missing and skipped.
EvalReport evaluate_system(const audio::Manifest& manifest, audio::Split split,
                           const std::string& synth_dir, const std::string& system_name,
                           double voicing_threshold = 0.3, int threads = 1);

std::string eval_report_csv(const EvalReport& report);
void write_eval_report(const EvalReport& report, const std::string& path);

} // namespace nws::eval
