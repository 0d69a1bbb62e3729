#include "nws.h"

#include "CLI11.hpp"

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace {

bool info_enabled() {
    const char* v = std::getenv("NWS_LOG");
    return !v || std::strcmp(v, "error") != 0;
}

void echo(const char* fmt, ...) {
    if (!info_enabled()) return;
    std::fprintf(stderr, "[nws info] ");
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    va_end(args);
    std::fputc('\n', stderr);
}

int die() {
    std::string msg(nws_last_error(nullptr, 0), '\0');
    nws_last_error(msg.data(), msg.size() + 1);
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 1;
}

int die_msg(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 2;
}

const char* opt_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

#define CHECK(call)                                                                              \
    do {                                                                                         \
        if ((call) != NWS_OK) return die();                                                      \
    } while (0)

int write_text(const std::string& path, const char* text) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return die_msg("cannot write " + path);
    std::fputs(text, f);
    std::fclose(f);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale workbench for neural waveform synthesis"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too

    uint64_t seed = 1;
    std::string profile = "TS";
    int threads = 1;
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--profile", profile, "Feature profile, TS or FT")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for per-track work")
        ->capture_default_str();

    // make-synth-corpus
    auto* c_corpus = app.add_subcommand("make-synth-corpus", "Generate the synthetic corpus");
    std::string corpus_dir;
    int corpus_tracks = 3;
    double corpus_seconds = 4.0;
    int corpus_rate = 48000;
    c_corpus->add_option("--out-dir", corpus_dir, "Corpus directory")->required();
    c_corpus->add_option("--tracks", corpus_tracks, "Tracks per instrument")
        ->capture_default_str();
    c_corpus->add_option("--seconds", corpus_seconds, "Track length in seconds")
        ->capture_default_str();
    c_corpus->add_option("--sample-rate", corpus_rate, "Corpus sample rate")
        ->capture_default_str();

    // features
    auto* c_feat = app.add_subcommand("features", "Extract mel features");
    std::string feat_manifest, feat_out_dir, feat_wav, feat_f0, feat_out;
    c_feat->add_option("--manifest", feat_manifest, "Corpus manifest (batch mode)");
    c_feat->add_option("--out-dir", feat_out_dir, "Feature directory (batch mode)");
    c_feat->add_option("--wav", feat_wav, "Single input WAV")->excludes("--manifest");
    c_feat->add_option("--f0", feat_f0, "Labels for the duration check (single mode)");
    c_feat->add_option("--out", feat_out, "Output feature file (single mode)");

    // stats
    auto* c_stats = app.add_subcommand("stats", "Corpus summary table");
    std::string stats_manifest, stats_out;
    c_stats->add_option("--manifest", stats_manifest, "Corpus manifest")->required();
    c_stats->add_option("--out", stats_out, "Write CSV here instead of stdout");

    // train
    auto* c_train = app.add_subcommand("train", "Train a synthesizer");
    std::string train_arch, train_scenario = "scratch", train_manifest;
    std::string train_init, train_out, train_log;
    int train_steps = 0;
    double train_lr = 1e-4, train_crop = 1.0;
    c_train->add_option("--arch", train_arch, "nsf or wavenet")->required();
    c_train->add_option("--scenario", train_scenario, "scratch, zero-shot, or fine-tune")
        ->capture_default_str();
    c_train->add_option("--manifest", train_manifest, "Corpus manifest")->required();
    c_train->add_option("--steps", train_steps, "Optimizer steps")->capture_default_str();
    c_train->add_option("--lr", train_lr, "Adam learning rate")->capture_default_str();
    c_train->add_option("--crop-seconds", train_crop, "Training crop length")
        ->capture_default_str();
    c_train->add_option("--init-ckpt", train_init, "Starting checkpoint");
    c_train->add_option("--out-ckpt", train_out, "Output checkpoint")->required();
    c_train->add_option("--loss-log", train_log, "Per-step loss CSV");

    // synth
    auto* c_synth = app.add_subcommand("synth", "Render features through a checkpoint");
    std::string synth_ckpt, synth_feat, synth_f0, synth_out, synth_mode = "sample";
    c_synth->add_option("--ckpt", synth_ckpt, "Checkpoint")->required();
    c_synth->add_option("--features", synth_feat, "Feature file")->required();
    c_synth->add_option("--f0", synth_f0, "Pitch labels")->required();
    c_synth->add_option("--out", synth_out, "Output WAV")->required();
    c_synth->add_option("--mode", synth_mode, "sample or argmax")->capture_default_str();

    // eval
    auto* c_eval = app.add_subcommand("eval", "Score renditions against corpus labels");
    std::string eval_manifest, eval_dir, eval_out, eval_split = "test", eval_system = "nws";
    double eval_thresh = 0.3;
    c_eval->add_option("--manifest", eval_manifest, "Corpus manifest")->required();
    c_eval->add_option("--synth-dir", eval_dir, "Directory of renditions")->required();
    c_eval->add_option("--out", eval_out, "Report CSV")->required();
    c_eval->add_option("--split", eval_split, "Split to score")->capture_default_str();
    c_eval->add_option("--system", eval_system, "System column value")->capture_default_str();
    c_eval->add_option("--voicing-threshold", eval_thresh, "Pitch tracker voicing threshold")
        ->capture_default_str();

    // rainbowgram
    auto* c_rain = app.add_subcommand("rainbowgram", "Magnitude + instantaneous frequency map");
    std::string rain_wav, rain_csv, rain_png;
    c_rain->add_option("--wav", rain_wav, "Input WAV")->required();
    c_rain->add_option("--csv", rain_csv, "CSV destination");
    c_rain->add_option("--png", rain_png, "PNG destination");

    // segment
    auto* c_seg = app.add_subcommand("segment", "Split a WAV into bounded pieces");
    std::string seg_wav, seg_dir;
    double seg_max = 15.0;
    c_seg->add_option("--wav", seg_wav, "Input WAV")->required();
    c_seg->add_option("--out-dir", seg_dir, "Where the pieces go")->required();
    c_seg->add_option("--max-seconds", seg_max, "Longest piece")->capture_default_str();

    // gradcheck
    auto* c_grad = app.add_subcommand("gradcheck", "Finite-difference gradient check");
    std::string grad_arch;
    double grad_tol = 1e-4;
    c_grad->add_option("--arch", grad_arch, "nsf or wavenet")->required();
    c_grad->add_option("--tolerance", grad_tol, "Max relative error")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(c_corpus)) {
        echo("make-synth-corpus out=%s tracks=%d seconds=%g rate=%d seed=%llu",
             corpus_dir.c_str(), corpus_tracks, corpus_seconds, corpus_rate,
             static_cast<unsigned long long>(seed));
        CHECK(nws_make_synth_corpus(corpus_dir.c_str(), corpus_tracks, corpus_seconds,
                                    corpus_rate, seed));
        return 0;
    }

    if (app.got_subcommand(c_feat)) {
        if (!feat_manifest.empty()) {
            if (feat_out_dir.empty()) return die_msg("--manifest needs --out-dir");
            echo("features manifest=%s out-dir=%s profile=%s threads=%d", feat_manifest.c_str(),
                 feat_out_dir.c_str(), profile.c_str(), threads);
            CHECK(nws_extract_features(feat_manifest.c_str(), profile.c_str(),
                                       feat_out_dir.c_str(), threads));
        } else if (!feat_wav.empty()) {
            if (feat_out.empty()) return die_msg("--wav needs --out");
            echo("features wav=%s out=%s profile=%s", feat_wav.c_str(), feat_out.c_str(),
                 profile.c_str());
            CHECK(nws_features_from_wav(feat_wav.c_str(), opt_or_null(feat_f0), profile.c_str(),
                                        feat_out.c_str()));
        } else {
            return die_msg("features needs --manifest or --wav");
        }
        return 0;
    }

    if (app.got_subcommand(c_stats)) {
        echo("stats manifest=%s", stats_manifest.c_str());
        char* csv = nullptr;
        CHECK(nws_corpus_stats(stats_manifest.c_str(), &csv));
        int rc = 0;
        if (stats_out.empty()) std::fputs(csv, stdout);
        else rc = write_text(stats_out, csv);
        nws_string_free(csv);
        return rc;
    }

    if (app.got_subcommand(c_train)) {
        if (train_scenario != "scratch" && train_init.empty())
            return die_msg("--scenario " + train_scenario + " requires --init-ckpt");
        echo("train arch=%s scenario=%s profile=%s steps=%d lr=%g crop=%g seed=%llu",
             train_arch.c_str(), train_scenario.c_str(), profile.c_str(), train_steps, train_lr,
             train_crop, static_cast<unsigned long long>(seed));
        nws_train_params p;
        nws_train_params_init(&p);
        p.manifest_path = train_manifest.c_str();
        p.arch = train_arch.c_str();
        p.scenario = train_scenario.c_str();
        p.profile = profile.c_str();
        p.max_steps = train_steps;
        p.lr = train_lr;
        p.crop_seconds = train_crop;
        p.seed = seed;
        p.init_checkpoint = opt_or_null(train_init);
        p.out_checkpoint = train_out.c_str();
        p.loss_log_path = opt_or_null(train_log);
        CHECK(nws_train(&p));
        return 0;
    }

    if (app.got_subcommand(c_synth)) {
        echo("synth ckpt=%s features=%s mode=%s seed=%llu", synth_ckpt.c_str(),
             synth_feat.c_str(), synth_mode.c_str(), static_cast<unsigned long long>(seed));
        CHECK(nws_synth(synth_ckpt.c_str(), synth_feat.c_str(), synth_f0.c_str(),
                        synth_out.c_str(), synth_mode.c_str(), seed));
        return 0;
    }

    if (app.got_subcommand(c_eval)) {
        echo("eval manifest=%s synth-dir=%s split=%s system=%s threshold=%g",
             eval_manifest.c_str(), eval_dir.c_str(), eval_split.c_str(), eval_system.c_str(),
             eval_thresh);
        int missing = 0;
        CHECK(nws_evaluate(eval_manifest.c_str(), eval_split.c_str(), eval_dir.c_str(),
                           eval_system.c_str(), eval_thresh, threads, eval_out.c_str(),
                           &missing));
        if (missing > 0)
            return die_msg(std::to_string(missing) + " track(s) have no rendition in " +
                           eval_dir);
        return 0;
    }

    if (app.got_subcommand(c_rain)) {
        echo("rainbowgram wav=%s profile=%s", rain_wav.c_str(), profile.c_str());
        CHECK(nws_rainbowgram(rain_wav.c_str(), profile.c_str(), opt_or_null(rain_csv),
                              opt_or_null(rain_png)));
        return 0;
    }

    if (app.got_subcommand(c_seg)) {
        echo("segment wav=%s out-dir=%s max-seconds=%g", seg_wav.c_str(), seg_dir.c_str(),
             seg_max);
        nws_waveform* w = nullptr;
        CHECK(nws_waveform_read_wav(seg_wav.c_str(), &w));
        nws_wavelist* pieces = nullptr;
        const nws_status st = nws_waveform_segment(w, seg_max, &pieces);
        nws_waveform_free(w);
        if (st != NWS_OK) return die();
        std::filesystem::create_directories(seg_dir);
        const std::string stem = std::filesystem::path(seg_wav).stem().string();
        int rc = 0;
        for (size_t i = 0; i < nws_wavelist_size(pieces); ++i) {
            char name[64];
            std::snprintf(name, sizeof(name), "_part%03zu.wav", i);
            const std::string out = (std::filesystem::path(seg_dir) / (stem + name)).string();
            if (nws_waveform_write_wav(nws_wavelist_get(pieces, i), out.c_str(), 16) != NWS_OK) {
                rc = die();
                break;
            }
        }
        nws_wavelist_free(pieces);
        return rc;
    }

    if (app.got_subcommand(c_grad)) {
        echo("gradcheck arch=%s tolerance=%g seed=%llu", grad_arch.c_str(), grad_tol,
             static_cast<unsigned long long>(seed));
        char* report = nullptr;
        int pass = 0;
        CHECK(nws_gradcheck(grad_arch.c_str(), grad_tol, seed, &report, &pass));
        std::fputs(report, stdout);
        nws_string_free(report);
        if (!pass) return die_msg("gradient check exceeded tolerance");
        return 0;
    }

    return die_msg("no command");
}
