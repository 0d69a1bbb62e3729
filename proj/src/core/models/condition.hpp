#pragma once

#include "core/nn/layers.hpp"

#include <vector>

namespace nws::models {

// Frame-rate conditioning shared by both synthesizers: a bi-directional LSTM
// over the mel features, a centered kernel-3 convolution down to out_channels,
// then the raw F0 value appended as one extra channel, giving
// out_channels + 1 dims per frame (63 + 1 = 64 at full size).
template <class T>
class ConditionNet {
public:
    ConditionNet(const std::string& name, int mel_dims, int lstm_units, int out_channels)
        : lstm_(name + ".lstm", mel_dims, lstm_units),
          conv_(name + ".conv", 2 * lstm_units, out_channels, 3, 1, false),
          out_ch_(out_channels) {}

    void init(Rng& rng) {
        lstm_.init(rng);
        conv_.init(rng);
    }

    int out_dims() const { return out_ch_ + 1; }

    nn::Seq<T> forward(const nn::Seq<T>& mel, const std::vector<float>& frame_f0) {
        if (static_cast<std::size_t>(mel.len) != frame_f0.size())
            fail(ErrKind::mismatch, "condition net: %d mel frames vs %zu f0 frames", mel.len,
                 frame_f0.size());
        const nn::Seq<T> h = lstm_.forward(mel);
        const nn::Seq<T> c = conv_.forward(h);
        nn::Seq<T> y(mel.len, out_ch_ + 1);
        for (int t = 0; t < mel.len; ++t) {
            std::copy(c.row(t), c.row(t) + out_ch_, y.row(t));
            y.at(t, out_ch_) = static_cast<T>(frame_f0[static_cast<std::size_t>(t)]);
        }
        return y;
    }

    // The F0 channel is an input, not a parameter path; its grad is dropped.
    // Mel input grads are likewise discarded (features are fixed).
    void backward(const nn::Seq<T>& gy) {
        nn::Seq<T> gc(gy.len, out_ch_);
        for (int t = 0; t < gy.len; ++t)
            std::copy(gy.row(t), gy.row(t) + out_ch_, gc.row(t));
        lstm_.backward(conv_.backward(gc));
    }

    void collect_params(std::vector<nn::Param<T>*>& out) {
        lstm_.collect_params(out);
        out.push_back(&conv_.W);
        out.push_back(&conv_.b);
    }

private:
    nn::BiLstm<T> lstm_;
    nn::Conv1d<T> conv_;
    int out_ch_;
};

// Maximum-voiced-frequency head: its own bi-directional LSTM and kernel-3
// convolution to one channel, squashed onto (0, Nyquist) by a scaled sigmoid,
// so a raw output of 0 lands at Nyquist/2.
template <class T>
class MvfHead {
public:
    MvfHead(const std::string& name, int mel_dims, int lstm_units, double nyquist_hz)
        : lstm_(name + ".lstm", mel_dims, lstm_units),
          conv_(name + ".conv", 2 * lstm_units, 1, 3, 1, false), nyquist_(nyquist_hz) {}

    void init(Rng& rng) {
        lstm_.init(rng);
        conv_.init(rng);
    }

    std::vector<T> forward(const nn::Seq<T>& mel) {
        const nn::Seq<T> h = lstm_.forward(mel);
        const nn::Seq<T> r = conv_.forward(h);
        sig_.resize(static_cast<std::size_t>(mel.len));
        std::vector<T> mvf(static_cast<std::size_t>(mel.len));
        for (int t = 0; t < mel.len; ++t) {
            const T s = T(1) / (T(1) + std::exp(-r.at(t, 0)));
            sig_[static_cast<std::size_t>(t)] = s;
            mvf[static_cast<std::size_t>(t)] = static_cast<T>(nyquist_) * s;
        }
        return mvf;
    }

    void backward(const std::vector<T>& gmvf) {
        nn::Seq<T> gr(static_cast<int>(gmvf.size()), 1);
        for (std::size_t t = 0; t < gmvf.size(); ++t) {
            const T s = sig_[t];
            gr.at(static_cast<int>(t), 0) = gmvf[t] * static_cast<T>(nyquist_) * s * (T(1) - s);
        }
        lstm_.backward(conv_.backward(gr));
    }

    void collect_params(std::vector<nn::Param<T>*>& out) {
        lstm_.collect_params(out);
        out.push_back(&conv_.W);
        out.push_back(&conv_.b);
    }

private:
    nn::BiLstm<T> lstm_;
    nn::Conv1d<T> conv_;
    double nyquist_;
    std::vector<T> sig_;
};

} // namespace nws::models
