#include "core/audio/corpus_stats.hpp"

#include "core/audio/f0_track.hpp"
#include "core/audio/wav_io.hpp"
#include "core/error.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace nws::audio {

namespace {

struct Accum {
    int count = 0;
    double seconds = 0.0;
    bool has_f0 = false;
    float f0_max = 0.0f;
    float f0_min = 0.0f;
};

} // namespace

CorpusStats corpus_stats(const Manifest& manifest) {
    std::map<std::string, std::map<int, Accum>> table; // instrument -> split index -> accum
    for (const auto& e : manifest.entries) {
        Waveform w;
        F0Track f0;
        try {
            w = read_wav(e.audio_path);
            f0 = read_f0_labels(e.f0_path);
        } catch (const Error& err) {
            fail(err.kind(), "piece '%s': %s", e.piece_id.c_str(), err.what());
        }
        check_duration_match(w.size(), w.sample_rate, f0.size(), e.audio_path);

        Accum& a = table[e.instrument][static_cast<int>(e.split)];
        a.count += 1;
        a.seconds += w.seconds();
        for (float v : f0.values_hz) {
            if (v <= 0.0f) continue;
            if (!a.has_f0) {
                a.has_f0 = true;
                a.f0_max = a.f0_min = v;
            } else {
                a.f0_max = std::max(a.f0_max, v);
                a.f0_min = std::min(a.f0_min, v);
            }
        }
    }

    CorpusStats stats;
    for (const auto& [instrument, splits] : table) {
        for (Split s : {Split::train, Split::dev, Split::test}) {
            const auto it = splits.find(static_cast<int>(s));
            if (it == splits.end()) continue;
            const Accum& a = it->second;
            StatsRow row;
            row.instrument = instrument;
            row.split = s;
            row.count = a.count;
            row.duration_min = a.seconds / 60.0;
            row.has_f0 = a.has_f0;
            row.f0_max_hz = a.f0_max;
            row.f0_min_hz = a.f0_min;
            stats.rows.push_back(std::move(row));
        }
    }
    return stats;
}

std::string stats_to_csv(const CorpusStats& stats) {
    std::ostringstream out;
    out << "instrument,split,count,duration_min,f0_max,f0_min\n";
    char buf[128];
    for (const auto& r : stats.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.2f,", r.instrument.c_str(),
                      split_name(r.split), r.count, r.duration_min);
        out << buf;
        if (r.has_f0) {
            std::snprintf(buf, sizeof(buf), "%.6g,%.6g", static_cast<double>(r.f0_max_hz),
                          static_cast<double>(r.f0_min_hz));
            out << buf;
        } else {
            out << ',';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace nws::audio
