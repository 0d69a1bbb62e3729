#pragma once

#include "core/nn/tensor.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace nws::nn {

// A differentiable scalar problem: loss() evaluates the objective with the
// current parameter values; grad() zeroes grads, reruns forward and backward,
// and leaves d(loss)/d(param) in each param's g. Both must be deterministic.
template <class T>
struct DiffProblem {
    std::function<T()> loss;
    std::function<void()> grad;
    std::vector<Param<T>*> params;
};

struct GradCheckBlock {
    std::string name;
    double max_rel_err = 0.0;
    std::size_t checked = 0;
};

struct GradCheckReport {
    std::vector<GradCheckBlock> blocks;
    double max_rel_err = 0.0;

    bool pass(double tolerance) const { return max_rel_err < tolerance; }

    std::string to_string() const {
        std::ostringstream out;
        char buf[160];
        for (const auto& b : blocks) {
            std::snprintf(buf, sizeof(buf), "%-40s checked %5zu  max rel err %.3e\n",
                          b.name.c_str(), b.checked, b.max_rel_err);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "overall max rel err %.3e\n", max_rel_err);
        out << buf;
        return out.str();
    }
};

// Central-difference check of every parameter block. Run with T=double; the
// relative-error denominator is floored at 1e-3 so true-zero gradients do not
// divide by rounding noise. max_per_block > 0 checks an evenly strided subset
// of large blocks.
template <class T>
GradCheckReport grad_check(DiffProblem<T>& prob, double fd_step = 1e-5,
                           long max_per_block = -1) {
    prob.grad();
    std::vector<std::vector<T>> analytic;
    analytic.reserve(prob.params.size());
    for (const auto* p : prob.params) analytic.push_back(p->g);

    GradCheckReport report;
    for (std::size_t pi = 0; pi < prob.params.size(); ++pi) {
        Param<T>& par = *prob.params[pi];
        GradCheckBlock block;
        block.name = par.name;

        const std::size_t n = par.size();
        std::size_t stride = 1;
        if (max_per_block > 0 && n > static_cast<std::size_t>(max_per_block))
            stride = (n + max_per_block - 1) / max_per_block;
        for (std::size_t i = 0; i < n; i += stride) {
            const T saved = par.w[i];
            par.w[i] = saved + static_cast<T>(fd_step);
            const double lp = static_cast<double>(prob.loss());
            par.w[i] = saved - static_cast<T>(fd_step);
            const double lm = static_cast<double>(prob.loss());
            par.w[i] = saved;

            const double numeric = (lp - lm) / (2.0 * fd_step);
            const double a = static_cast<double>(analytic[pi][i]);
            const double denom = std::max(std::abs(a) + std::abs(numeric), 1e-3);
            const double rel = std::abs(a - numeric) / denom;
            block.max_rel_err = std::max(block.max_rel_err, rel);
            ++block.checked;
        }
        report.max_rel_err = std::max(report.max_rel_err, block.max_rel_err);
        report.blocks.push_back(std::move(block));
    }
    return report;
}

} // namespace nws::nn
