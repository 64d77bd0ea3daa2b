#pragma once
// step.hpp - The Diophantine step family f_k / f_{-k}: one odd-to-odd Collatz
// step in spiral coordinates. |k| is the number of halvings. Positive indices
// act on positive spiral values, negative indices on non-positive ones.

#include "collatz/affine.hpp"
#include "collatz/spiral.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace collatz {

// Numerator of the f_k constant: c_k = (2^k + 2*(-1)^k)/6. These are the
// Jacobsthal numbers 0, 1, 1, 3, 5, 11, 21, ...
inline Int jacobsthal_c(unsigned k) {
    if (k < 1) throw std::invalid_argument("jacobsthal_c: k must be >= 1");
    Int s = (k % 2 == 0) ? 2 : -2;
    return (pow2_int(k) + s) / 6;
}

// Numerator of the f_{-k} constant: d_k = (2^k - 4*(-1)^k)/6.
inline Int jacobsthal_d(unsigned k) {
    if (k < 1) throw std::invalid_argument("jacobsthal_d: k must be >= 1");
    Int s = (k % 2 == 0) ? -4 : 4;
    return (pow2_int(k) + s) / 6;
}

inline bool is_prime_u32(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Property probe: k prime, k >= 5 and k | c_k. False (not an error) otherwise.
inline bool prime_divides_c(unsigned k) {
    if (k < 1) throw std::invalid_argument("prime_divides_c: k must be >= 1");
    if (k < 5 || !is_prime_u32(k)) return false;
    return jacobsthal_c(k) % k == 0;
}

// Coefficient sign of f_index: (-1)^(k-1) for +k, (-1)^k for -k.
inline int coefficient_sign(int index) {
    if (index == 0) throw std::invalid_argument("family index must be nonzero");
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    int parity = (k % 2 == 0) ? -1 : 1;  // (-1)^(k-1)
    return index > 0 ? parity : -parity;
}

// The six output progressions of the family (period 6 in |index| per sign).
enum class OutputFamily { i, ii, iii, iv, v, vi };

inline const char* family_name(OutputFamily f) {
    switch (f) {
        case OutputFamily::i: return "i";
        case OutputFamily::ii: return "ii";
        case OutputFamily::iii: return "iii";
        case OutputFamily::iv: return "iv";
        case OutputFamily::v: return "v";
        default: return "vi";
    }
}

inline OutputFamily output_family(int index) {
    if (index == 0) throw std::invalid_argument("family index must be nonzero");
    static constexpr std::array<OutputFamily, 6> pos = {
        OutputFamily::i, OutputFamily::ii, OutputFamily::iii,
        OutputFamily::iv, OutputFamily::v, OutputFamily::vi};
    static constexpr std::array<OutputFamily, 6> neg = {
        OutputFamily::iii, OutputFamily::iv, OutputFamily::v,
        OutputFamily::vi, OutputFamily::i, OutputFamily::ii};
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    return index > 0 ? pos[(k - 1) % 6] : neg[(k - 1) % 6];
}

// The unique progression containing an integer value:
//   i {3,6,...}, ii {-2,-5,...}, iii {2,5,...}, iv {0,-3,...},
//   v {1,4,...}, vi {-1,-4,...}
template <class I>
OutputFamily family_of_value(const I& y) {
    I r = y % 3;
    if (r < 0) r += 3;
    if (y > 0) {
        if (r == 0) return OutputFamily::i;
        if (r == 2) return OutputFamily::iii;
        return OutputFamily::v;
    }
    if (r == 0) return OutputFamily::iv;
    if (r == 1) return OutputFamily::ii;  // -2, -5, ...
    return OutputFamily::vi;              // -1, -4, ...
}

// Whether members of the progression are positive spiral values.
inline bool family_is_positive(OutputFamily f) {
    return f == OutputFamily::i || f == OutputFamily::iii || f == OutputFamily::v;
}

inline Int inverse_mod_pow2(const Int& a, unsigned e) {
    // Newton iteration; a must be odd.
    if (e == 0) return 0;
    Int x = 1;
    for (unsigned bits = 1; bits < e; bits *= 2) {
        x = x * (2 - a * x);
        x %= pow2_int(std::min(2 * bits, e));
    }
    Int m = pow2_int(e);
    x %= m;
    if (x < 0) x += m;
    return x;
}

// Domain of f_index: the residue class mod 2^|index| whose members have
// 2-adic valuation exactly |index| after the 3n+1 step, with the sign side
// of the index.
inline ResidueClass step_domain(int index) {
    if (index == 0) throw std::invalid_argument("family index must be nonzero");
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    Int mod = pow2_int(k);
    Int inv9 = inverse_mod_pow2(9, k);
    Int target = index > 0 ? Int(1 + pow2_int(k - 1)) : Int(2 - pow2_int(k - 1));
    Int r = (inv9 * target) % mod;
    if (r < 0) r += mod;
    ResidueClass rc;
    rc.modulus = mod;
    rc.residue = r;
    rc.sign = index > 0 ? SignConstraint::positive : SignConstraint::non_positive;
    return rc;
}

struct StepMap {
    int index = 1;
    AffineMap map;
    ResidueClass domain;
};

inline StepMap step_map(int index) {
    if (index == 0) throw std::invalid_argument("family index must be nonzero");
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    StepMap s;
    s.index = index;
    s.map.sign = coefficient_sign(index);
    s.map.pow3 = 1;
    s.map.pow2 = k;
    s.map.cnum = index > 0 ? jacobsthal_c(k) : jacobsthal_d(k);
    s.domain = step_domain(index);
    return s;
}

// The unique index whose domain contains x: |index| is the 2-adic valuation
// of 3*decode(x) + 1, the first Collatz successor of the encoded natural.
template <class I>
int classify(const I& x) {
    if (x > 0) {
        // 3*(6x-1)+1 = 18x-2
        return int(valuation2(I(18 * x - 2)));
    }
    // 3*(-6x+1)+1 = -18x+4
    return -int(valuation2(I(4 - 18 * x)));
}

namespace detail {

// Constant numerator for the step with |index| = k on the given side,
// computed in the working integer type.
template <class I>
I step_cnum(int index, unsigned k) {
    I two_k = I(1) << k;
    if (index > 0) return (two_k + ((k % 2 == 0) ? 2 : -2)) / 6;
    return (two_k + ((k % 2 == 0) ? -4 : 4)) / 6;
}

}  // namespace detail

// f_index(x) for x in the domain of f_index; rejects out-of-domain inputs.
template <class I>
I step_apply(int index, const I& x) {
    if (index == 0) throw std::invalid_argument("family index must be nonzero");
    if (classify(x) != index)
        throw std::domain_error("step_apply: value not in the domain of this family");
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    I num = 3 * x;
    if (coefficient_sign(index) < 0) num = -num;
    num += detail::step_cnum<I>(index, k);
    return num >> k;  // exact: divisible by construction
}

// One step of the spiral dynamic: apply the owning family.
template <class I>
I spiral_next(const I& x) {
    int index = classify(x);
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    I num = 3 * x;
    if (coefficient_sign(index) < 0) num = -num;
    num += detail::step_cnum<I>(index, k);
    return num >> k;
}

}  // namespace collatz
