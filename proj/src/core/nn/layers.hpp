#pragma once

#include "core/nn/tensor.hpp"

#include <algorithm>
#include <cmath>

// Layer primitives with hand-written backward passes. Every layer caches what
// its backward needs during forward; backward may only be called after a
// forward on the same instance and accumulates into parameter grads, so call
// zero_grad on the params between optimizer steps.

namespace nws::nn {

template <class T>
class Dense {
public:
    Dense() = default;
    Dense(const std::string& name, int in, int out)
        : W(name + ".W", {in, out}), b(name + ".b", {out}), in_(in), out_(out) {}

    void init(Rng& rng) { glorot_init(W, rng); }

    Seq<T> forward(const Seq<T>& x) {
        if (x.ch != in_) fail(ErrKind::mismatch, "%s: input ch %d != %d", W.name.c_str(), x.ch, in_);
        x_ = x;
        Seq<T> y(x.len, out_);
        for (int t = 0; t < x.len; ++t) {
            const T* xt = x.row(t);
            T* yt = y.row(t);
            for (int o = 0; o < out_; ++o) yt[o] = b.w[o];
            for (int i = 0; i < in_; ++i) {
                const T a = xt[i];
                if (a == T(0)) continue;
                const T* wrow = W.w.data() + static_cast<std::size_t>(i) * out_;
                for (int o = 0; o < out_; ++o) yt[o] += a * wrow[o];
            }
        }
        return y;
    }

    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gx(x_.len, in_);
        for (int t = 0; t < x_.len; ++t) {
            const T* xt = x_.row(t);
            const T* gyt = gy.row(t);
            T* gxt = gx.row(t);
            for (int o = 0; o < out_; ++o) b.g[o] += gyt[o];
            for (int i = 0; i < in_; ++i) {
                const T a = xt[i];
                T* gwrow = W.g.data() + static_cast<std::size_t>(i) * out_;
                const T* wrow = W.w.data() + static_cast<std::size_t>(i) * out_;
                T acc = T(0);
#pragma omp simd reduction(+ : acc)
                for (int o = 0; o < out_; ++o) {
                    gwrow[o] += a * gyt[o];
                    acc += wrow[o] * gyt[o];
                }
                gxt[i] = acc;
            }
        }
        return gx;
    }

    Param<T> W, b;

private:
    int in_ = 0, out_ = 0;
    Seq<T> x_;
};

// 1-D convolution over [len x in] with kernel-major weights {k, in, out}.
// Causal mode reads inputs at t, t-d, ..., t-(k-1)d; centered mode (odd k)
// reads t + (j - (k-1)/2)*d. Out-of-range taps contribute zero, so output
// length always equals input length.
template <class T>
class Conv1d {
public:
    Conv1d() = default;
    Conv1d(const std::string& name, int in, int out, int kernel, int dilation, bool causal)
        : W(name + ".W", {kernel, in, out}), b(name + ".b", {out}), in_(in), out_(out),
          k_(kernel), d_(dilation), causal_(causal) {
        if (!causal && kernel % 2 == 0)
            fail(ErrKind::invalid_arg, "%s: centered conv needs odd kernel, got %d",
                 name.c_str(), kernel);
    }

    void init(Rng& rng) { glorot_init(W, rng); }

    int tap_offset(int j) const { return causal_ ? -j * d_ : (j - (k_ - 1) / 2) * d_; }

    Seq<T> forward(const Seq<T>& x) {
        if (x.ch != in_) fail(ErrKind::mismatch, "%s: input ch %d != %d", W.name.c_str(), x.ch, in_);
        x_ = x;
        Seq<T> y(x.len, out_);
        for (int t = 0; t < x.len; ++t) {
            T* yt = y.row(t);
            for (int o = 0; o < out_; ++o) yt[o] = b.w[o];
        }
        for (int j = 0; j < k_; ++j) {
            const int off = tap_offset(j);
            const T* Wj = W.w.data() + static_cast<std::size_t>(j) * in_ * out_;
            for (int t = 0; t < x.len; ++t) {
                const int s = t + off;
                if (s < 0 || s >= x.len) continue;
                const T* xs = x.row(s);
                T* yt = y.row(t);
                for (int i = 0; i < in_; ++i) {
                    const T a = xs[i];
                    if (a == T(0)) continue;
                    const T* wrow = Wj + static_cast<std::size_t>(i) * out_;
                    for (int o = 0; o < out_; ++o) yt[o] += a * wrow[o];
                }
            }
        }
        return y;
    }

    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gx(x_.len, in_);
        for (int t = 0; t < x_.len; ++t) {
            const T* gyt = gy.row(t);
            for (int o = 0; o < out_; ++o) b.g[o] += gyt[o];
        }
        for (int j = 0; j < k_; ++j) {
            const int off = tap_offset(j);
            const T* Wj = W.w.data() + static_cast<std::size_t>(j) * in_ * out_;
            T* gWj = W.g.data() + static_cast<std::size_t>(j) * in_ * out_;
            for (int t = 0; t < x_.len; ++t) {
                const int s = t + off;
                if (s < 0 || s >= x_.len) continue;
                const T* xs = x_.row(s);
                const T* gyt = gy.row(t);
                T* gxs = gx.row(s);
                for (int i = 0; i < in_; ++i) {
                    const T a = xs[i];
                    const T* wrow = Wj + static_cast<std::size_t>(i) * out_;
                    T* gwrow = gWj + static_cast<std::size_t>(i) * out_;
                    T acc = T(0);
#pragma omp simd reduction(+ : acc)
                    for (int o = 0; o < out_; ++o) {
                        gwrow[o] += a * gyt[o];
                        acc += wrow[o] * gyt[o];
                    }
                    gxs[i] += acc;
                }
            }
        }
        return gx;
    }

    Param<T> W, b;

private:
    int in_ = 0, out_ = 0, k_ = 1, d_ = 1;
    bool causal_ = true;
    Seq<T> x_;
};

// Single-direction LSTM with gate order i, f, g, o along the 4H axis.
// reverse=true runs right-to-left over the sequence.
template <class T>
class Lstm {
public:
    Lstm() = default;
    Lstm(const std::string& name, int in, int units, bool reverse)
        : Wx(name + ".Wx", {in, 4 * units}), Wh(name + ".Wh", {units, 4 * units}),
          b(name + ".b", {4 * units}), in_(in), H_(units), reverse_(reverse) {}

    void init(Rng& rng) {
        glorot_init(Wx, rng);
        glorot_init(Wh, rng);
        // Forget-gate bias 1 keeps early memory open.
        for (int u = 0; u < H_; ++u) b.w[H_ + u] = T(1);
    }

    Seq<T> forward(const Seq<T>& x) {
        if (x.ch != in_) fail(ErrKind::mismatch, "%s: input ch %d != %d", Wx.name.c_str(), x.ch, in_);
        x_ = x;
        const int len = x.len;
        gates_ = Seq<T>(len, 4 * H_); // post-activation i,f,g,o
        c_ = Seq<T>(len, H_);
        Seq<T> h(len, H_);

        std::vector<T> z(4 * H_);
        for (int step = 0; step < len; ++step) {
            const int t = reverse_ ? len - 1 - step : step;
            const int tp = reverse_ ? t + 1 : t - 1; // previous step in scan order
            const bool first = step == 0;

            for (int u = 0; u < 4 * H_; ++u) z[u] = b.w[u];
            const T* xt = x.row(t);
            for (int i = 0; i < in_; ++i) {
                const T a = xt[i];
                if (a == T(0)) continue;
                const T* wrow = Wx.w.data() + static_cast<std::size_t>(i) * 4 * H_;
                for (int u = 0; u < 4 * H_; ++u) z[u] += a * wrow[u];
            }
            if (!first) {
                const T* hp = h.row(tp);
                for (int i = 0; i < H_; ++i) {
                    const T a = hp[i];
                    if (a == T(0)) continue;
                    const T* wrow = Wh.w.data() + static_cast<std::size_t>(i) * 4 * H_;
                    for (int u = 0; u < 4 * H_; ++u) z[u] += a * wrow[u];
                }
            }

            T* gate = gates_.row(t);
            T* ct = c_.row(t);
            T* ht = h.row(t);
            const T* cp = first ? nullptr : c_.row(tp);
            for (int u = 0; u < H_; ++u) {
                const T gi = sigmoid(z[u]);
                const T gf = sigmoid(z[H_ + u]);
                const T gg = std::tanh(z[2 * H_ + u]);
                const T go = sigmoid(z[3 * H_ + u]);
                gate[u] = gi;
                gate[H_ + u] = gf;
                gate[2 * H_ + u] = gg;
                gate[3 * H_ + u] = go;
                ct[u] = gi * gg + (first ? T(0) : gf * cp[u]);
                ht[u] = go * std::tanh(ct[u]);
            }
        }
        h_ = h;
        return h;
    }

    Seq<T> backward(const Seq<T>& gy) {
        const int len = x_.len;
        Seq<T> gx(len, in_);
        std::vector<T> dh(H_, T(0)), dc(H_, T(0)), dz(4 * H_);

        for (int step = len - 1; step >= 0; --step) {
            const int t = reverse_ ? len - 1 - step : step;
            const int tp = reverse_ ? t + 1 : t - 1;
            const bool first = step == 0;

            const T* gate = gates_.row(t);
            const T* ct = c_.row(t);
            const T* cp = first ? nullptr : c_.row(tp);
            const T* gyt = gy.row(t);

            for (int u = 0; u < H_; ++u) {
                const T dht = dh[u] + gyt[u];
                const T gi = gate[u], gf = gate[H_ + u], gg = gate[2 * H_ + u],
                        go = gate[3 * H_ + u];
                const T tc = std::tanh(ct[u]);
                const T dct = dc[u] + dht * go * (T(1) - tc * tc);
                dz[3 * H_ + u] = dht * tc * go * (T(1) - go);
                dz[u] = dct * gg * gi * (T(1) - gi);
                dz[2 * H_ + u] = dct * gi * (T(1) - gg * gg);
                dz[H_ + u] = first ? T(0) : dct * cp[u] * gf * (T(1) - gf);
                dc[u] = dct * gf; // carried to the previous step
            }

            for (int u = 0; u < 4 * H_; ++u) b.g[u] += dz[u];
            const T* xt = x_.row(t);
            T* gxt = gx.row(t);
            for (int i = 0; i < in_; ++i) {
                const T a = xt[i];
                T* gwrow = Wx.g.data() + static_cast<std::size_t>(i) * 4 * H_;
                const T* wrow = Wx.w.data() + static_cast<std::size_t>(i) * 4 * H_;
                T acc = T(0);
#pragma omp simd reduction(+ : acc)
                for (int u = 0; u < 4 * H_; ++u) {
                    gwrow[u] += a * dz[u];
                    acc += wrow[u] * dz[u];
                }
                gxt[i] = acc;
            }

            std::fill(dh.begin(), dh.end(), T(0));
            if (!first) {
                const T* hp = h_.row(tp);
                for (int i = 0; i < H_; ++i) {
                    const T a = hp[i];
                    T* gwrow = Wh.g.data() + static_cast<std::size_t>(i) * 4 * H_;
                    const T* wrow = Wh.w.data() + static_cast<std::size_t>(i) * 4 * H_;
                    T acc = T(0);
#pragma omp simd reduction(+ : acc)
                    for (int u = 0; u < 4 * H_; ++u) {
                        gwrow[u] += a * dz[u];
                        acc += wrow[u] * dz[u];
                    }
                    dh[i] = acc;
                }
            } else {
                std::fill(dc.begin(), dc.end(), T(0));
            }
        }
        return gx;
    }

    static T sigmoid(T z) { return T(1) / (T(1) + std::exp(-z)); }

    Param<T> Wx, Wh, b;

private:
    int in_ = 0, H_ = 0;
    bool reverse_ = false;
    Seq<T> x_, h_, c_, gates_;
};

// Forward and reverse LSTM over the same input, outputs concatenated to 2H.
template <class T>
class BiLstm {
public:
    BiLstm() = default;
    BiLstm(const std::string& name, int in, int units)
        : fwd_(name + ".fwd", in, units, false), bwd_(name + ".bwd", in, units, true),
          H_(units) {}

    void init(Rng& rng) {
        fwd_.init(rng);
        bwd_.init(rng);
    }

    Seq<T> forward(const Seq<T>& x) {
        const Seq<T> hf = fwd_.forward(x);
        const Seq<T> hb = bwd_.forward(x);
        Seq<T> y(x.len, 2 * H_);
        for (int t = 0; t < x.len; ++t) {
            std::copy(hf.row(t), hf.row(t) + H_, y.row(t));
            std::copy(hb.row(t), hb.row(t) + H_, y.row(t) + H_);
        }
        return y;
    }

    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gf(gy.len, H_), gb(gy.len, H_);
        for (int t = 0; t < gy.len; ++t) {
            std::copy(gy.row(t), gy.row(t) + H_, gf.row(t));
            std::copy(gy.row(t) + H_, gy.row(t) + 2 * H_, gb.row(t));
        }
        Seq<T> gx = fwd_.backward(gf);
        const Seq<T> gx2 = bwd_.backward(gb);
        for (std::size_t i = 0; i < gx.v.size(); ++i) gx.v[i] += gx2.v[i];
        return gx;
    }

    void collect_params(std::vector<Param<T>*>& out) {
        out.push_back(&fwd_.Wx);
        out.push_back(&fwd_.Wh);
        out.push_back(&fwd_.b);
        out.push_back(&bwd_.Wx);
        out.push_back(&bwd_.Wh);
        out.push_back(&bwd_.b);
    }

private:
    Lstm<T> fwd_, bwd_;
    int H_ = 0;
};

// tanh(first half) * sigmoid(second half) on a [len x 2C] input.
template <class T>
class GatedActivation {
public:
    Seq<T> forward(const Seq<T>& x) {
        if (x.ch % 2 != 0) fail(ErrKind::invalid_arg, "gated activation needs even channels");
        const int C = x.ch / 2;
        ta_ = Seq<T>(x.len, C);
        sb_ = Seq<T>(x.len, C);
        Seq<T> y(x.len, C);
        for (int t = 0; t < x.len; ++t) {
            const T* xt = x.row(t);
            T* tat = ta_.row(t);
            T* sbt = sb_.row(t);
            T* yt = y.row(t);
            for (int c = 0; c < C; ++c) {
                tat[c] = std::tanh(xt[c]);
                sbt[c] = T(1) / (T(1) + std::exp(-xt[C + c]));
                yt[c] = tat[c] * sbt[c];
            }
        }
        return y;
    }

    Seq<T> backward(const Seq<T>& gy) {
        const int C = ta_.ch;
        Seq<T> gx(ta_.len, 2 * C);
        for (int t = 0; t < ta_.len; ++t) {
            const T* gyt = gy.row(t);
            const T* tat = ta_.row(t);
            const T* sbt = sb_.row(t);
            T* gxt = gx.row(t);
            for (int c = 0; c < C; ++c) {
                gxt[c] = gyt[c] * sbt[c] * (T(1) - tat[c] * tat[c]);
                gxt[C + c] = gyt[c] * tat[c] * sbt[c] * (T(1) - sbt[c]);
            }
        }
        return gx;
    }

private:
    Seq<T> ta_, sb_;
};

template <class T>
class TanhOp {
public:
    Seq<T> forward(const Seq<T>& x) {
        y_ = x;
        for (auto& v : y_.v) v = std::tanh(v);
        return y_;
    }
    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gx(y_.len, y_.ch);
        for (std::size_t i = 0; i < gx.v.size(); ++i)
            gx.v[i] = gy.v[i] * (T(1) - y_.v[i] * y_.v[i]);
        return gx;
    }

private:
    Seq<T> y_;
};

template <class T>
class SigmoidOp {
public:
    Seq<T> forward(const Seq<T>& x) {
        y_ = x;
        for (auto& v : y_.v) v = T(1) / (T(1) + std::exp(-v));
        return y_;
    }
    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gx(y_.len, y_.ch);
        for (std::size_t i = 0; i < gx.v.size(); ++i)
            gx.v[i] = gy.v[i] * y_.v[i] * (T(1) - y_.v[i]);
        return gx;
    }

private:
    Seq<T> y_;
};

// Frame-rate to sample-rate by repeating each row hop times.
template <class T>
class UpsampleRepeat {
public:
    explicit UpsampleRepeat(int hop = 1) : hop_(hop) {}

    Seq<T> forward(const Seq<T>& x) {
        frames_ = x.len;
        Seq<T> y(x.len * hop_, x.ch);
        for (int t = 0; t < x.len; ++t)
            for (int r = 0; r < hop_; ++r)
                std::copy(x.row(t), x.row(t) + x.ch, y.row(t * hop_ + r));
        return y;
    }

    Seq<T> backward(const Seq<T>& gy) {
        Seq<T> gx(frames_, gy.ch);
        for (int t = 0; t < frames_; ++t) {
            T* gxt = gx.row(t);
            for (int r = 0; r < hop_; ++r) {
                const T* gyt = gy.row(t * hop_ + r);
                for (int c = 0; c < gy.ch; ++c) gxt[c] += gyt[c];
            }
        }
        return gx;
    }

private:
    int hop_ = 1;
    int frames_ = 0;
};

// Mean cross-entropy over rows of [len x K] logits against integer targets.
// Returns the loss; writes d(loss)/d(logits) into grad (same shape).
template <class T>
T softmax_cross_entropy(const Seq<T>& logits, const std::vector<int>& targets, Seq<T>& grad) {
    if (static_cast<std::size_t>(logits.len) != targets.size())
        fail(ErrKind::mismatch, "cross entropy: %d logit rows vs %zu targets", logits.len,
             targets.size());
    const int K = logits.ch;
    grad = Seq<T>(logits.len, K);
    double loss = 0.0;
    std::vector<double> p(K);
    const double inv_n = 1.0 / logits.len;
    for (int t = 0; t < logits.len; ++t) {
        const int target = targets[static_cast<std::size_t>(t)];
        if (target < 0 || target >= K)
            fail(ErrKind::invalid_arg, "cross entropy: target %d out of [0, %d)", target, K);
        const T* zt = logits.row(t);
        double zmax = zt[0];
        for (int k = 1; k < K; ++k) zmax = std::max(zmax, static_cast<double>(zt[k]));
        double sum = 0.0;
        for (int k = 0; k < K; ++k) {
            p[k] = std::exp(zt[k] - zmax);
            sum += p[k];
        }
        loss += -(zt[target] - zmax - std::log(sum));
        T* gt = grad.row(t);
        for (int k = 0; k < K; ++k) gt[k] = static_cast<T>(p[k] / sum * inv_n);
        gt[target] -= static_cast<T>(inv_n);
    }
    return static_cast<T>(loss * inv_n);
}

} // namespace nws::nn
