#pragma once

#include "fracdeg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fracdeg::testing {

/// Small seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool coin() { return integer(0, 1) == 1; }

    /// Values uniform in [lo, hi] on every cell.
    Field field(const Grid& g, double lo = -1.0, double hi = 1.0) {
        Field f(g);
        for (double& v : f.values) v = uniform(lo, hi);
        return f;
    }

    /// Piecewise constant with a few random jumps, zero near both ends: a
    /// typical BV field.
    Field steps(const Grid& g, int pieces, double lo = -1.0, double hi = 1.0) {
        Field f(g);
        const long n = g.cells[0];
        std::vector<long> cuts{n / 8};
        for (int k = 0; k < pieces - 1; ++k) cuts.push_back(integer(n / 8, n - n / 8));
        cuts.push_back(n - n / 8);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double v = uniform(lo, hi);
            for (long i = cuts[k]; i < cuts[k + 1]; ++i) f(i) = v;
        }
        return f;
    }

    /// Random values on local cells [first, first + width), zero elsewhere.
    Field compact(const Grid& g, long first, long width, double lo = -1.0, double hi = 1.0) {
        Field f(g);
        for (long i = first; i < first + width; ++i) f(i) = uniform(lo, hi);
        return f;
    }

    /// U and V = U + non-negative perturbation, clamped to [lo, hi].
    std::pair<Field, Field> ordered_pair(const Grid& g, double lo = -1.0, double hi = 1.0) {
        Field u = field(g, lo, hi);
        Field v = u;
        for (double& x : v.values) x = std::min(hi, x + (coin() ? uniform(0.0, hi - lo) : 0.0));
        return {u, v};
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

inline double max_abs(const Field& a) {
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::abs(v));
    return m;
}

/// Spike of height 1 at global index 0 on a line window.
inline Field spike(const Grid& g) {
    Field f(g);
    f(-g.lower[0]) = 1.0;
    return f;
}

} // namespace fracdeg::testing
