#pragma once

#include "core/dsp/profile.hpp"
#include "core/models/condition.hpp"
#include "core/models/excitation.hpp"
#include "core/models/sinc_filter.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nws::models {

struct NsfConfig {
    int sample_rate = 0;
    int hop = 0;
    int mel_dims = 0;
    int lstm_units = 0;
    int cond_channels = 0; // learned channels; raw F0 is appended as one more
    int channels = 0;      // filter block width
    int n_harmonic_blocks = 0;
    std::vector<int> dilations;
    int sinc_taps = 0;

    int cond_dims() const { return cond_channels + 1; }

    static NsfConfig desk(const dsp::FeatureProfile& profile) {
        NsfConfig c;
        c.sample_rate = profile.sample_rate;
        c.hop = profile.hop;
        c.mel_dims = profile.n_mels;
        c.lstm_units = 32;
        c.cond_channels = 63;
        c.channels = 64;
        c.n_harmonic_blocks = 5;
        c.dilations = {1, 2, 4, 8, 16};
        c.sinc_taps = 63;
        return c;
    }

    // Small enough for finite-difference checks yet shaped like the real
    // model: every layer kind, both filter branches, and the MVF path.
    static NsfConfig tiny() {
        NsfConfig c;
        c.sample_rate = 800;
        c.hop = 4;
        c.mel_dims = 6;
        c.lstm_units = 4;
        c.cond_channels = 7;
        c.channels = 6;
        c.n_harmonic_blocks = 2;
        c.dilations = {1, 2};
        c.sinc_taps = 9;
        return c;
    }
};

// One source-filter stage: project the 1-channel signal up, run dilated
// centered convolutions with per-layer conditioning added before a tanh
// residual, project back down, and add the stage input so each stage refines
// the signal it was given.
template <class T>
class FilterBlock {
public:
    FilterBlock(const std::string& name, int channels, int cond_dims,
                const std::vector<int>& dilations)
        : dense_in_(name + ".in", 1, channels), dense_out_(name + ".out", channels, 1) {
        for (std::size_t l = 0; l < dilations.size(); ++l) {
            const std::string ln = name + ".l" + std::to_string(l);
            convs_.emplace_back(ln + ".conv", channels, channels, 3, dilations[l], false);
            conds_.emplace_back(ln + ".cond", cond_dims, channels);
        }
        acts_.resize(dilations.size());
    }

    void init(Rng& rng) {
        dense_in_.init(rng);
        for (std::size_t l = 0; l < convs_.size(); ++l) {
            convs_[l].init(rng);
            conds_[l].init(rng);
        }
        dense_out_.init(rng);
    }

    nn::Seq<T> forward(const nn::Seq<T>& s, const nn::Seq<T>& cond) {
        nn::Seq<T> h = dense_in_.forward(s);
        for (std::size_t l = 0; l < convs_.size(); ++l) {
            nn::Seq<T> z = convs_[l].forward(h);
            const nn::Seq<T> zc = conds_[l].forward(cond);
            for (std::size_t i = 0; i < z.v.size(); ++i) z.v[i] += zc.v[i];
            const nn::Seq<T> a = acts_[l].forward(z);
            for (std::size_t i = 0; i < h.v.size(); ++i) h.v[i] += a.v[i];
        }
        nn::Seq<T> y = dense_out_.forward(h);
        for (std::size_t i = 0; i < y.v.size(); ++i) y.v[i] += s.v[i];
        return y;
    }

    // Returns d(loss)/d(stage input); adds the conditioning grads into gcond.
    nn::Seq<T> backward(const nn::Seq<T>& gy, nn::Seq<T>& gcond) {
        nn::Seq<T> gh = dense_out_.backward(gy);
        for (std::size_t l = convs_.size(); l-- > 0;) {
            const nn::Seq<T> gz = acts_[l].backward(gh);
            const nn::Seq<T> gc = conds_[l].backward(gz);
            for (std::size_t i = 0; i < gcond.v.size(); ++i) gcond.v[i] += gc.v[i];
            const nn::Seq<T> gi = convs_[l].backward(gz);
            for (std::size_t i = 0; i < gh.v.size(); ++i) gh.v[i] += gi.v[i];
        }
        nn::Seq<T> gs = dense_in_.backward(gh);
        for (std::size_t i = 0; i < gs.v.size(); ++i) gs.v[i] += gy.v[i];
        return gs;
    }

    void collect_params(std::vector<nn::Param<T>*>& out) {
        out.push_back(&dense_in_.W);
        out.push_back(&dense_in_.b);
        for (std::size_t l = 0; l < convs_.size(); ++l) {
            out.push_back(&convs_[l].W);
            out.push_back(&convs_[l].b);
            out.push_back(&conds_[l].W);
            out.push_back(&conds_[l].b);
        }
        out.push_back(&dense_out_.W);
        out.push_back(&dense_out_.b);
    }

private:
    nn::Dense<T> dense_in_, dense_out_;
    std::vector<nn::Conv1d<T>> convs_;
    std::vector<nn::Dense<T>> conds_;
    std::vector<nn::TanhOp<T>> acts_;
};

// Source-filter synthesizer: a harmonic excitation refined by a chain of
// filter stages and low-passed at the predicted maximum voiced frequency,
// plus a noise excitation through one stage and the matching high-pass.
// Output length is frames * hop at the configured sample rate.
template <class T>
class NsfModel {
public:
    explicit NsfModel(const NsfConfig& cfg)
        : cfg_(cfg), cond_("cond", cfg.mel_dims, cfg.lstm_units, cfg.cond_channels),
          mvf_("mvf", cfg.mel_dims, cfg.lstm_units, cfg.sample_rate / 2.0),
          up_(cfg.hop), noise_block_("noise0", cfg.channels, cfg.cond_dims(), cfg.dilations),
          lp_(cfg.sinc_taps, cfg.hop, cfg.sample_rate, false),
          hp_(cfg.sinc_taps, cfg.hop, cfg.sample_rate, true) {
        if (cfg.n_harmonic_blocks < 1)
            fail(ErrKind::invalid_arg, "nsf: need at least one harmonic block");
        harm_blocks_.reserve(static_cast<std::size_t>(cfg.n_harmonic_blocks));
        for (int k = 0; k < cfg.n_harmonic_blocks; ++k)
            harm_blocks_.emplace_back("harm" + std::to_string(k), cfg.channels, cfg.cond_dims(),
                                      cfg.dilations);
    }

    const NsfConfig& config() const { return cfg_; }

    void init(Rng& rng) {
        cond_.init(rng);
        mvf_.init(rng);
        for (auto& b : harm_blocks_) b.init(rng);
        noise_block_.init(rng);
    }

    std::vector<nn::Param<T>*> params() {
        std::vector<nn::Param<T>*> out;
        cond_.collect_params(out);
        mvf_.collect_params(out);
        for (auto& b : harm_blocks_) b.collect_params(out);
        noise_block_.collect_params(out);
        return out;
    }

    std::vector<T> forward(const nn::Seq<T>& mel, const std::vector<float>& frame_f0,
                           const Excitation& exc) {
        const std::size_t n = static_cast<std::size_t>(mel.len) * cfg_.hop;
        if (exc.harmonic.size() != n || exc.noise.size() != n)
            fail(ErrKind::mismatch, "nsf: excitation %zu samples, expected %zu",
                 exc.harmonic.size(), n);
        const nn::Seq<T> cond = cond_.forward(mel, frame_f0);
        cond_up_ = up_.forward(cond);
        const std::vector<T> mvf = mvf_.forward(mel);

        nn::Seq<T> s(static_cast<int>(n), 1);
        for (std::size_t i = 0; i < n; ++i) s.v[i] = static_cast<T>(exc.harmonic[i]);
        for (auto& b : harm_blocks_) s = b.forward(s, cond_up_);

        nn::Seq<T> ns(static_cast<int>(n), 1);
        for (std::size_t i = 0; i < n; ++i) ns.v[i] = static_cast<T>(exc.noise[i]);
        ns = noise_block_.forward(ns, cond_up_);

        const std::vector<T> yl = lp_.forward(s.v, mvf);
        const std::vector<T> yh = hp_.forward(ns.v, mvf);
        std::vector<T> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = yl[i] + yh[i];
        return y;
    }

    // gy is d(loss)/d(output sample); must follow a forward on this instance.
    // Excitation inputs get no grads (they are sampled, not learned).
    void backward(const std::vector<T>& gy) {
        std::vector<T> gs, gmvf_l, gn, gmvf_h;
        lp_.backward(gy, gs, gmvf_l);
        hp_.backward(gy, gn, gmvf_h);
        for (std::size_t i = 0; i < gmvf_l.size(); ++i) gmvf_l[i] += gmvf_h[i];
        mvf_.backward(gmvf_l);

        nn::Seq<T> gcond(cond_up_.len, cond_up_.ch);
        nn::Seq<T> g(static_cast<int>(gs.size()), 1);
        g.v = std::move(gs);
        for (std::size_t k = harm_blocks_.size(); k-- > 0;) g = harm_blocks_[k].backward(g, gcond);

        nn::Seq<T> gns(static_cast<int>(gn.size()), 1);
        gns.v = std::move(gn);
        noise_block_.backward(gns, gcond);

        cond_.backward(up_.backward(gcond));
    }

private:
    NsfConfig cfg_;
    ConditionNet<T> cond_;
    MvfHead<T> mvf_;
    nn::UpsampleRepeat<T> up_;
    std::vector<FilterBlock<T>> harm_blocks_;
    FilterBlock<T> noise_block_;
    FrameSincFilter<T> lp_, hp_;
    nn::Seq<T> cond_up_;
};

} // namespace nws::models
