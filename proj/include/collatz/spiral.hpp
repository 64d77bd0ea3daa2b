#pragma once
// spiral.hpp - The 6x -+ 1 spiral encoding and the polar geometry of the
// logarithmic spiral r = 2 * 2^(theta/pi). The only floating point in the
// library lives here; everything dynamical is exact.

#include "collatz/sequences.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace collatz {

// Natural 6v-1 (v > 0) or -6v+1 (v <= 0); 0 encodes 1.
template <class I>
I spiral_encode(const I& n) {
    if (n < 1) throw std::invalid_argument("spiral_encode: input must be a natural number");
    I r = n % 6;
    if (r == 5) return (n + 1) / 6;
    if (r == 1) return -((n - 1) / 6);
    throw std::invalid_argument("spiral_encode: input must be 1 or congruent to +-1 mod 6");
}

template <class I>
I spiral_decode(const I& v) {
    if (v > 0) return 6 * v - 1;
    return -6 * v + 1;
}

// First A329480 index at which v appears: 2v for v > 0, 1 - 4v for v <= 0.
template <class I>
I canonical_index(const I& v) {
    if (v > 0) return 2 * v;
    return 1 - 4 * v;
}

// theta_n = ln((3n-1)/2) * pi / ln 2
inline double spiral_theta(const Int& n) {
    require_index(n);
    double t = static_cast<double>(Rational(3 * n - 1, 2));
    return std::log(t) * std::numbers::pi / std::log(2.0);
}

// r(theta) = 2 * 2^(theta/pi)
inline double spiral_radius(double theta) {
    return 2.0 * std::exp2(theta / std::numbers::pi);
}

struct PolarRow {
    Int n;        // ray index
    double theta;
    double r;
    Int label;    // a329480(n)
};

inline std::vector<PolarRow> export_polar(const Int& n_max) {
    if (n_max < 1) throw std::invalid_argument("export_polar: n_max must be >= 1");
    std::vector<PolarRow> rows;
    for (Int n = 1; n <= n_max; ++n) {
        double th = spiral_theta(n);
        rows.push_back({n, th, spiral_radius(th), a329480(n)});
    }
    return rows;
}

}  // namespace collatz
