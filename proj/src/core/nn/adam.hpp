#pragma once

#include "core/nn/tensor.hpp"

#include <cmath>
#include <vector>

namespace nws::nn {

// Bias-corrected Adam with global-norm gradient clipping applied before the
// update. Moments are kept in double regardless of the parameter type and
// persist across steps until reset().
template <class T>
class Adam {
public:
    explicit Adam(double lr = 1e-4, double beta1 = 0.9, double beta2 = 0.999,
                  double eps = 1e-8, double clip_norm = 5.0)
        : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps), clip_(clip_norm) {}

    void reset() {
        t_ = 0;
        m_.clear();
        v_.clear();
    }

    int steps_taken() const { return t_; }

    void step(const std::vector<Param<T>*>& params) {
        if (m_.empty()) {
            m_.resize(params.size());
            v_.resize(params.size());
            for (std::size_t p = 0; p < params.size(); ++p) {
                m_[p].assign(params[p]->size(), 0.0);
                v_[p].assign(params[p]->size(), 0.0);
            }
        }
        if (m_.size() != params.size())
            fail(ErrKind::invalid_arg, "adam: parameter list changed between steps");

        double norm_sq = 0.0;
        for (const auto* p : params) {
            for (const T g : p->g) {
                const double gd = static_cast<double>(g);
                if (!std::isfinite(gd))
                    fail(ErrKind::runtime, "adam: non-finite gradient in %s", p->name.c_str());
                norm_sq += gd * gd;
            }
        }
        const double norm = std::sqrt(norm_sq);
        const double scale = (clip_ > 0.0 && norm > clip_) ? clip_ / norm : 1.0;

        ++t_;
        const double bc1 = 1.0 - std::pow(b1_, t_);
        const double bc2 = 1.0 - std::pow(b2_, t_);
        for (std::size_t p = 0; p < params.size(); ++p) {
            Param<T>& par = *params[p];
            for (std::size_t i = 0; i < par.size(); ++i) {
                const double g = static_cast<double>(par.g[i]) * scale;
                m_[p][i] = b1_ * m_[p][i] + (1.0 - b1_) * g;
                v_[p][i] = b2_ * v_[p][i] + (1.0 - b2_) * g * g;
                const double mhat = m_[p][i] / bc1;
                const double vhat = v_[p][i] / bc2;
                par.w[i] -= static_cast<T>(lr_ * mhat / (std::sqrt(vhat) + eps_));
            }
        }
    }

    double learning_rate() const { return lr_; }

private:
    double lr_, b1_, b2_, eps_, clip_;
    int t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

} // namespace nws::nn
