#pragma once

#include "core/dsp/profile.hpp"
#include "core/models/condition.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nws::models {

struct WaveNetConfig {
    int sample_rate = 0;
    int hop = 0;
    int mel_dims = 0;
    int lstm_units = 0;
    int cond_channels = 0;
    int residual_channels = 0;
    int skip_channels = 0;
    int n_blocks = 0;
    int dilation_cycle = 0; // dilation doubles each block, wrapping every cycle
    int kernel = 2;
    int quant_levels = 0;

    int cond_dims() const { return cond_channels + 1; }
    int dilation(int block) const { return 1 << (block % dilation_cycle); }

    int receptive_field() const {
        long long sum = 0;
        for (int k = 0; k < n_blocks; ++k) sum += dilation(k);
        return static_cast<int>(1 + static_cast<long long>(kernel - 1) * sum);
    }

    static WaveNetConfig desk(const dsp::FeatureProfile& profile) {
        WaveNetConfig c;
        c.sample_rate = profile.sample_rate;
        c.hop = profile.hop;
        c.mel_dims = profile.n_mels;
        c.lstm_units = 32;
        c.cond_channels = 63;
        c.residual_channels = 32;
        c.skip_channels = 64;
        c.n_blocks = 30;
        c.dilation_cycle = 10;
        c.kernel = 2;
        c.quant_levels = 1024;
        return c;
    }

    static WaveNetConfig tiny() {
        WaveNetConfig c;
        c.sample_rate = 800;
        c.hop = 4;
        c.mel_dims = 6;
        c.lstm_units = 4;
        c.cond_channels = 7;
        c.residual_channels = 4;
        c.skip_channels = 6;
        c.n_blocks = 4;
        c.dilation_cycle = 2;
        c.kernel = 2;
        c.quant_levels = 12;
        return c;
    }
};

enum class SampleMode { argmax, categorical };

// Autoregressive quantized synthesizer: the previous code, mapped back to
// [-1, 1], feeds a stack of gated causal dilated convolutions with frame
// conditioning; skip connections sum into a two-stage head that emits one
// logit row per sample. logits[t] therefore depends on codes[t-RF .. t-1]
// only, with RF = receptive_field().
template <class T>
class WaveNetModel {
public:
    explicit WaveNetModel(const WaveNetConfig& cfg)
        : cfg_(cfg), cond_("cond", cfg.mel_dims, cfg.lstm_units, cfg.cond_channels),
          up_(cfg.hop), input_("input", 1, cfg.residual_channels),
          post1_("post1", cfg.skip_channels, cfg.skip_channels),
          post2_("post2", cfg.skip_channels, cfg.quant_levels) {
        const int R = cfg.residual_channels;
        for (int k = 0; k < cfg.n_blocks; ++k) {
            const std::string bn = "b" + std::to_string(k);
            convs_.emplace_back(bn + ".conv", R, 2 * R, cfg.kernel, cfg.dilation(k), true);
            cond_proj_.emplace_back(bn + ".cond", cfg.cond_dims(), 2 * R);
            skips_.emplace_back(bn + ".skip", R, cfg.skip_channels);
            ress_.emplace_back(bn + ".res", R, R);
        }
        gates_.resize(static_cast<std::size_t>(cfg.n_blocks));
    }

    const WaveNetConfig& config() const { return cfg_; }

    void init(Rng& rng) {
        cond_.init(rng);
        input_.init(rng);
        for (int k = 0; k < cfg_.n_blocks; ++k) {
            convs_[k].init(rng);
            cond_proj_[k].init(rng);
            skips_[k].init(rng);
            ress_[k].init(rng);
        }
        post1_.init(rng);
        post2_.init(rng);
    }

    std::vector<nn::Param<T>*> params() {
        std::vector<nn::Param<T>*> out;
        cond_.collect_params(out);
        out.push_back(&input_.W);
        out.push_back(&input_.b);
        for (int k = 0; k < cfg_.n_blocks; ++k) {
            out.push_back(&convs_[k].W);
            out.push_back(&convs_[k].b);
            out.push_back(&cond_proj_[k].W);
            out.push_back(&cond_proj_[k].b);
            out.push_back(&skips_[k].W);
            out.push_back(&skips_[k].b);
            out.push_back(&ress_[k].W);
            out.push_back(&ress_[k].b);
        }
        out.push_back(&post1_.W);
        out.push_back(&post1_.b);
        out.push_back(&post2_.W);
        out.push_back(&post2_.b);
        return out;
    }

    // Code value mapped to the scalar input scale: 0 -> -1, K-1 -> +1.
    T code_to_input(int code) const {
        return static_cast<T>(2.0 * code / (cfg_.quant_levels - 1) - 1.0);
    }

    // One logit row per sample position; row t sees codes before t only
    // (position 0 sees the zero start symbol).
    nn::Seq<T> teacher_forced(const nn::Seq<T>& mel, const std::vector<float>& frame_f0,
                              const std::vector<int>& codes) {
        const std::size_t n = static_cast<std::size_t>(mel.len) * cfg_.hop;
        if (codes.size() != n)
            fail(ErrKind::mismatch, "wavenet: %zu codes, expected %zu", codes.size(), n);
        cond_up_ = up_.forward(cond_.forward(mel, frame_f0));

        nn::Seq<T> xin(static_cast<int>(n), 1);
        xin.at(0, 0) = T(0);
        for (std::size_t t = 1; t < n; ++t)
            xin.at(static_cast<int>(t), 0) = code_to_input(codes[t - 1]);

        nn::Seq<T> x = input_.forward(xin);
        nn::Seq<T> skip_sum(static_cast<int>(n), cfg_.skip_channels);
        for (int k = 0; k < cfg_.n_blocks; ++k) {
            nn::Seq<T> z = convs_[k].forward(x);
            const nn::Seq<T> zc = cond_proj_[k].forward(cond_up_);
            for (std::size_t i = 0; i < z.v.size(); ++i) z.v[i] += zc.v[i];
            const nn::Seq<T> g = gates_[k].forward(z);
            const nn::Seq<T> sk = skips_[k].forward(g);
            for (std::size_t i = 0; i < skip_sum.v.size(); ++i) skip_sum.v[i] += sk.v[i];
            const nn::Seq<T> r = ress_[k].forward(g);
            for (std::size_t i = 0; i < x.v.size(); ++i) x.v[i] += r.v[i];
        }
        return post2_.forward(tanh2_.forward(post1_.forward(tanh1_.forward(skip_sum))));
    }

    // glogits is d(loss)/d(logit); must follow a teacher_forced call.
    void backward(const nn::Seq<T>& glogits) {
        const nn::Seq<T> gskip =
            tanh1_.backward(post1_.backward(tanh2_.backward(post2_.backward(glogits))));
        nn::Seq<T> gx(gskip.len, cfg_.residual_channels); // last residual output is unused
        nn::Seq<T> gcond(cond_up_.len, cond_up_.ch);
        for (int k = cfg_.n_blocks; k-- > 0;) {
            nn::Seq<T> gg = ress_[k].backward(gx);
            const nn::Seq<T> gsk = skips_[k].backward(gskip);
            for (std::size_t i = 0; i < gg.v.size(); ++i) gg.v[i] += gsk.v[i];
            const nn::Seq<T> gz = gates_[k].backward(gg);
            const nn::Seq<T> gc = cond_proj_[k].backward(gz);
            for (std::size_t i = 0; i < gcond.v.size(); ++i) gcond.v[i] += gc.v[i];
            const nn::Seq<T> gi = convs_[k].backward(gz);
            for (std::size_t i = 0; i < gx.v.size(); ++i) gx.v[i] += gi.v[i];
        }
        input_.backward(gx); // the code input is data, its grad is dropped
        cond_.backward(up_.backward(gcond));
    }

    // Generates frames * hop codes one sample at a time, keeping a ring of
    // each block's input rows so every step costs kernel taps per block.
    // Codes in prime are forced (and fed through the network) before the
    // model free-runs.
    std::vector<int> sample_autoregressive(const nn::Seq<T>& mel,
                                           const std::vector<float>& frame_f0, SampleMode mode,
                                           Rng& rng, const std::vector<int>& prime = {}) {
        const std::size_t n = static_cast<std::size_t>(mel.len) * cfg_.hop;
        if (prime.size() > n)
            fail(ErrKind::invalid_arg, "wavenet: prime of %zu codes exceeds %zu samples",
                 prime.size(), n);
        const nn::Seq<T> cond_up = up_.forward(cond_.forward(mel, frame_f0));

        const int R = cfg_.residual_channels;
        const int S = cfg_.skip_channels;
        const int K = cfg_.quant_levels;
        std::vector<std::vector<T>> ring(static_cast<std::size_t>(cfg_.n_blocks));
        for (int k = 0; k < cfg_.n_blocks; ++k)
            ring[static_cast<std::size_t>(k)].assign(
                static_cast<std::size_t>(cfg_.dilation(k) + 1) * R, T(0));

        std::vector<int> codes(n, 0);
        std::vector<T> x(R), z(2 * R), g(R), skip(S), h1(S), h2(S);
        std::vector<T> logits(static_cast<std::size_t>(K));
        std::vector<double> p(static_cast<std::size_t>(K));

        for (std::size_t t = 0; t < n; ++t) {
            const T xin = t == 0 ? T(0) : code_to_input(codes[t - 1]);
            for (int o = 0; o < R; ++o) x[o] = input_.b.w[o] + xin * input_.W.w[o];

            std::fill(skip.begin(), skip.end(), T(0));
            for (int k = 0; k < cfg_.n_blocks; ++k) {
                const int d = cfg_.dilation(k);
                const int cap = d + 1;
                std::vector<T>& rb = ring[static_cast<std::size_t>(k)];
                T* cur = rb.data() + static_cast<std::size_t>(t % cap) * R;
                std::copy(x.begin(), x.end(), cur);

                const nn::Param<T>& cw = convs_[k].W;
                for (int o = 0; o < 2 * R; ++o) z[o] = convs_[k].b.w[o];
                mat_acc(cur, cw.w.data(), R, 2 * R, z.data());
                if (t >= static_cast<std::size_t>(d)) {
                    const T* old = rb.data() + static_cast<std::size_t>((t - d) % cap) * R;
                    mat_acc(old, cw.w.data() + static_cast<std::size_t>(R) * 2 * R, R, 2 * R,
                            z.data());
                }
                const T* ct = cond_up.row(static_cast<int>(t));
                for (int o = 0; o < 2 * R; ++o) z[o] += cond_proj_[k].b.w[o];
                mat_acc(ct, cond_proj_[k].W.w.data(), cfg_.cond_dims(), 2 * R, z.data());

                for (int c = 0; c < R; ++c)
                    g[c] = std::tanh(z[c]) / (T(1) + std::exp(-z[R + c]));

                for (int o = 0; o < S; ++o) skip[o] += skips_[k].b.w[o];
                mat_acc(g.data(), skips_[k].W.w.data(), R, S, skip.data());
                for (int o = 0; o < R; ++o) x[o] += ress_[k].b.w[o];
                mat_acc(g.data(), ress_[k].W.w.data(), R, R, x.data());
            }

            for (int o = 0; o < S; ++o) {
                h1[o] = std::tanh(skip[o]);
            }
            for (int o = 0; o < S; ++o) h2[o] = post1_.b.w[o];
            mat_acc(h1.data(), post1_.W.w.data(), S, S, h2.data());
            for (int o = 0; o < S; ++o) h2[o] = std::tanh(h2[o]);
            for (int o = 0; o < K; ++o) logits[o] = post2_.b.w[o];
            mat_acc(h2.data(), post2_.W.w.data(), S, K, logits.data());

            if (t < prime.size()) {
                codes[t] = prime[t];
                continue;
            }
            if (mode == SampleMode::argmax) {
                int best = 0;
                for (int c = 1; c < K; ++c)
                    if (logits[c] > logits[best]) best = c;
                codes[t] = best;
            } else {
                double zmax = logits[0];
                for (int c = 1; c < K; ++c) zmax = std::max(zmax, static_cast<double>(logits[c]));
                double sum = 0.0;
                for (int c = 0; c < K; ++c) {
                    p[c] = std::exp(logits[c] - zmax);
                    sum += p[c];
                }
                const double u = rng.uniform() * sum;
                double acc = 0.0;
                int pick = K - 1;
                for (int c = 0; c < K; ++c) {
                    acc += p[c];
                    if (u < acc) {
                        pick = c;
                        break;
                    }
                }
                codes[t] = pick;
            }
        }
        return codes;
    }

private:
    // y += W^T x for a {in, out} row-major weight block.
    static void mat_acc(const T* x, const T* W, int in, int out, T* y) {
        for (int i = 0; i < in; ++i) {
            const T a = x[i];
            if (a == T(0)) continue;
            const T* wrow = W + static_cast<std::size_t>(i) * out;
            for (int o = 0; o < out; ++o) y[o] += a * wrow[o];
        }
    }

    WaveNetConfig cfg_;
    ConditionNet<T> cond_;
    nn::UpsampleRepeat<T> up_;
    nn::Dense<T> input_;
    std::vector<nn::Conv1d<T>> convs_;
    std::vector<nn::Dense<T>> cond_proj_;
    std::vector<nn::GatedActivation<T>> gates_;
    std::vector<nn::Dense<T>> skips_, ress_;
    nn::TanhOp<T> tanh1_, tanh2_;
    nn::Dense<T> post1_, post2_;
    nn::Seq<T> cond_up_;
};

} // namespace nws::models
