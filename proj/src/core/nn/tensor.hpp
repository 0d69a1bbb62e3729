#pragma once

#include "core/error.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace nws::nn {

// A named weight block with its gradient accumulator. T is float on the
// training path and double on the finite-difference checking path.
template <class T>
struct Param {
    std::string name;
    std::vector<int> shape;
    std::vector<T> w;
    std::vector<T> g;

    Param() = default;
    Param(std::string n, std::vector<int> s) : name(std::move(n)), shape(std::move(s)) {
        std::size_t total = 1;
        for (int d : shape) {
            if (d <= 0) fail(ErrKind::invalid_arg, "param %s: bad dim %d", name.c_str(), d);
            total *= static_cast<std::size_t>(d);
        }
        w.assign(total, T(0));
        g.assign(total, T(0));
    }

    std::size_t size() const { return w.size(); }
    void zero_grad() { std::fill(g.begin(), g.end(), T(0)); }
};

// Row-major [len x ch] sequence buffer, the activation currency of the models.
template <class T>
struct Seq {
    int len = 0;
    int ch = 0;
    std::vector<T> v;

    Seq() = default;
    Seq(int l, int c) : len(l), ch(c), v(static_cast<std::size_t>(l) * c, T(0)) {}

    T* row(int t) { return v.data() + static_cast<std::size_t>(t) * ch; }
    const T* row(int t) const { return v.data() + static_cast<std::size_t>(t) * ch; }
    T& at(int t, int c) { return v[static_cast<std::size_t>(t) * ch + c]; }
    T at(int t, int c) const { return v[static_cast<std::size_t>(t) * ch + c]; }
    void zero() { std::fill(v.begin(), v.end(), T(0)); }
};

// Fan-based uniform init. 2-D shapes use (rows + cols); kernel-major conv
// shapes {k, in, out} use k*(in + out).
template <class T>
void glorot_init(Param<T>& p, Rng& rng) {
    double fan = 0.0;
    if (p.shape.size() == 2) fan = p.shape[0] + p.shape[1];
    else if (p.shape.size() == 3) fan = static_cast<double>(p.shape[0]) * (p.shape[1] + p.shape[2]);
    else fan = static_cast<double>(p.size());
    const double limit = std::sqrt(6.0 / std::max(fan, 1.0));
    for (auto& x : p.w) x = static_cast<T>(rng.uniform(-limit, limit));
}

} // namespace nws::nn
