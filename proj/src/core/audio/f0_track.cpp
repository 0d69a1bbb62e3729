#include "core/audio/f0_track.hpp"

#include "core/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nws::audio {

F0Track read_f0_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::io, "cannot open f0 labels: %s", path.c_str());

    F0Track track;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim trailing CR and surrounding whitespace.
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
        if (start > 0) line.erase(0, start);
        if (line.empty()) continue;

        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || *end != '\0' || !std::isfinite(v))
            fail(ErrKind::format, "%s:%zu: non-numeric f0 value '%s'", path.c_str(), line_no,
                 line.c_str());
        if (v < 0.0)
            fail(ErrKind::format, "%s:%zu: negative f0 value %g", path.c_str(), line_no, v);
        if (v != 0.0 && (v < 20.0 || v > 20000.0))
            fail(ErrKind::format, "%s:%zu: f0 value %g outside [20, 20000] Hz", path.c_str(),
                 line_no, v);
        track.values_hz.push_back(static_cast<float>(v));
    }
    return track;
}

void check_duration_match(std::size_t n_samples, int sample_rate, std::size_t n_labels,
                          const std::string& context) {
    const double audio_frames =
        static_cast<double>(n_samples) / (0.010 * static_cast<double>(sample_rate));
    const double diff = std::abs(audio_frames - static_cast<double>(n_labels));
    if (diff > 2.0 + 1e-9)
        fail(ErrKind::mismatch,
             "%s: audio implies %.1f label frames but label file has %zu (off by %.1f)",
             context.c_str(), audio_frames, n_labels, diff);
}

void write_f0_labels(const F0Track& track, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrKind::io, "cannot write f0 labels: %s", path.c_str());
    char buf[64];
    for (float v : track.values_hz) {
        std::snprintf(buf, sizeof(buf), "%.6g\n", static_cast<double>(v));
        out << buf;
    }
    if (!out) fail(ErrKind::io, "short write: %s", path.c_str());
}

} // namespace nws::audio
