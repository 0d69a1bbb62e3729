#include "core/eval/metrics.hpp"

#include "core/audio/f0_track.hpp"
#include "core/audio/wav_io.hpp"
#include "core/eval/f0_extract.hpp"
#include "core/io_util.hpp"
#include "core/log.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <thread>

namespace nws::eval {

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        fail(ErrKind::mismatch, "correlation needs equal lengths, got %zu and %zu", x.size(),
             y.size());
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

double vuv_error_pct(const std::vector<float>& ref_f0, const std::vector<float>& est_f0) {
    const std::size_t n = std::min(ref_f0.size(), est_f0.size());
    if (n == 0) fail(ErrKind::invalid_arg, "voicing comparison over zero frames");
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
        if ((ref_f0[i] > 0.0f) != (est_f0[i] > 0.0f)) ++bad;
    return 100.0 * static_cast<double>(bad) / static_cast<double>(n);
}

std::optional<double> track_pcc(const std::vector<float>& ref_f0,
                                const std::vector<float>& est_f0) {
    const std::size_t n = std::min(ref_f0.size(), est_f0.size());
    std::vector<double> r, e;
    for (std::size_t i = 0; i < n; ++i) {
        if (ref_f0[i] > 0.0f && est_f0[i] > 0.0f) {
            r.push_back(ref_f0[i]);
            e.push_back(est_f0[i]);
        }
    }
    return pearson(r, e);
}

namespace {

struct TrackScore {
    bool missing = false;
    std::string basename;
    std::string instrument;
    std::vector<double> ref_voiced, est_voiced; // mutually voiced pairs
    long long frames = 0;
    long long disagreements = 0;
};

TrackScore score_track(const audio::ManifestEntry& e, const std::string& synth_dir,
                       double voicing_threshold) {
    TrackScore s;
    s.instrument = e.instrument;
    s.basename = std::filesystem::path(e.audio_path).filename().string();
    const std::filesystem::path synth_path = std::filesystem::path(synth_dir) / s.basename;
    if (!std::filesystem::exists(synth_path)) {
        s.missing = true;
        return s;
    }

    const audio::F0Track ref = audio::read_f0_labels(e.f0_path);
    const F0Estimate est = extract_f0(audio::read_wav(synth_path.string()), voicing_threshold);

    const std::size_t n = std::min(ref.size(), est.frames());
    if (n == 0) fail(ErrKind::invalid_arg, "track '%s': nothing to compare", e.piece_id.c_str());
    for (std::size_t i = 0; i < n; ++i) {
        const bool rv = ref.values_hz[i] > 0.0f;
        const bool ev = est.f0_hz[i] > 0.0f;
        if (rv != ev) ++s.disagreements;
        if (rv && ev) {
            s.ref_voiced.push_back(ref.values_hz[i]);
            s.est_voiced.push_back(est.f0_hz[i]);
        }
    }
    s.frames = static_cast<long long>(n);
    return s;
}

struct Pool {
    std::vector<double> ref, est;
    long long frames = 0;
    long long disagreements = 0;

    void add(const TrackScore& s) {
        ref.insert(ref.end(), s.ref_voiced.begin(), s.ref_voiced.end());
        est.insert(est.end(), s.est_voiced.begin(), s.est_voiced.end());
        frames += s.frames;
        disagreements += s.disagreements;
    }

    EvalRow row(const std::string& label) const {
        EvalRow r;
        r.instrument = label;
        r.pcc = pearson(ref, est);
        r.vuv_pct = frames == 0 ? 0.0 : 100.0 * disagreements / static_cast<double>(frames);
        r.n_frames = frames;
        return r;
    }
};

} // namespace

EvalReport evaluate_system(const audio::Manifest& manifest, audio::Split split,
                           const std::string& synth_dir, const std::string& system_name,
                           double voicing_threshold, int threads) {
    EvalReport report;
    report.system = system_name;
    const auto entries = manifest.split_entries(split);
    if (entries.empty()) return report;

    std::vector<TrackScore> scores(entries.size());
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(entries.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < entries.size(); ++i)
            scores[i] = score_track(*entries[i], synth_dir, voicing_threshold);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int wi = 0; wi < workers; ++wi) {
            pool.emplace_back([&, wi] {
                try {
                    for (std::size_t i = next++; i < entries.size(); i = next++)
                        scores[i] = score_track(*entries[i], synth_dir, voicing_threshold);
                } catch (...) {
                    errors[static_cast<std::size_t>(wi)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    std::map<std::string, Pool> per_instrument;
    Pool overall;
    for (const auto& s : scores) {
        if (s.missing) {
            report.missing.push_back(s.basename);
            continue;
        }
        per_instrument[s.instrument].add(s);
        overall.add(s);
    }
    for (const auto& [name, pool] : per_instrument) report.rows.push_back(pool.row(name));
    report.rows.push_back(overall.row("overall"));
    return report;
}

std::string eval_report_csv(const EvalReport& report) {
    std::string out = "system,instrument,pcc,vuv_pct,n_frames\n";
    char buf[256];
    for (const auto& r : report.rows) {
        char pcc[48];
        if (r.pcc) std::snprintf(pcc, sizeof(pcc), "%.6g", *r.pcc);
        else std::snprintf(pcc, sizeof(pcc), "NA");
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.6g,%lld\n", report.system.c_str(),
                      r.instrument.c_str(), pcc, r.vuv_pct, r.n_frames);
        out += buf;
    }
    return out;
}

void write_eval_report(const EvalReport& report, const std::string& path) {
    const std::string csv = eval_report_csv(report);
    write_file_bytes(path, std::vector<uint8_t>(csv.begin(), csv.end()));
}

} // namespace nws::eval
