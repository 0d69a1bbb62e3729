#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nws {

// Distributions mapped by hand from mt19937_64 words, which the standard pins
// bit-exactly; std::uniform_real_distribution and friends are implementation
// defined and would break cross-run determinism contracts.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(uint64_t seed) : gen(seed) {}

    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, one fresh pair of uniforms per call so the stream is a pure
    // function of call count.
    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1 > 1e-300 ? u1 : 1e-300));
        return r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

} // namespace nws
