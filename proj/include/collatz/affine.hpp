#pragma once
// affine.hpp - Exact dyadic-rational affine maps x -> s*3^m/2^e * x + c/2^e
// and power-of-two residue classes. All arithmetic is exact (cpp_int).

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatz {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow2_int(unsigned e) { return Int(1) << e; }

inline Int pow3_int(unsigned m) {
    Int r = 1;
    for (unsigned i = 0; i < m; ++i) r *= 3;
    return r;
}

// 2-adic valuation; undefined for 0 (throws).
template <class I>
unsigned valuation2(I n) {
    if (n == 0) throw std::invalid_argument("valuation2: zero has no finite valuation");
    if constexpr (std::is_integral_v<I>) {
        using U = std::make_unsigned_t<I>;
        U u = n < 0 ? U(0) - U(n) : U(n);
        unsigned v = 0;
        while ((u & 1u) == 0) { u >>= 1; ++v; }
        return v;
    } else {
        unsigned v = 0;
        I m = n < 0 ? I(-n) : n;
        while ((m & 1) == 0) { m >>= 1; ++v; }
        return v;
    }
}

// Exact rational with power-of-two denominator, kept reduced (num odd or exp == 0).
struct DyadicRational {
    Int num;
    unsigned exp = 0;  // denominator 2^exp

    DyadicRational() : num(0) {}
    DyadicRational(Int n, unsigned e) : num(std::move(n)), exp(e) { reduce(); }

    void reduce() {
        while (exp > 0 && (num & 1) == 0) { num >>= 1; --exp; }
        if (num == 0) exp = 0;
    }

    Rational value() const { return Rational(num, pow2_int(exp)); }

    bool operator==(const DyadicRational& o) const { return num == o.num && exp == o.exp; }

    int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }

    std::string str() const {
        if (exp == 0) return num.str();
        return num.str() + "/2^" + std::to_string(exp);
    }
};

// x -> sign * 3^pow3 / 2^pow2 * x + cnum / 2^pow2.
// cnum is kept over the full denominator 2^pow2 (unreduced) so composition
// stays integer-only.
struct AffineMap {
    int sign = 1;          // sign of the coefficient
    unsigned pow3 = 0;     // coefficient numerator 3^pow3
    unsigned pow2 = 0;     // denominator 2^pow2
    Int cnum = 0;          // constant numerator over 2^pow2

    Rational coefficient() const {
        Int n = pow3_int(pow3);
        if (sign < 0) n = -n;
        return Rational(n, pow2_int(pow2));
    }

    DyadicRational konst() const { return DyadicRational(cnum, pow2); }

    // Exact evaluation at a rational point.
    Rational eval(const Rational& x) const {
        return (coefficient() * x) + Rational(cnum, pow2_int(pow2));
    }

    // Evaluation at an integer known to yield an integer; throws otherwise.
    Int eval_integer(const Int& x) const {
        Int t = pow3_int(pow3) * x;
        if (sign < 0) t = -t;
        t += cnum;
        Int d = pow2_int(pow2);
        if (t % d != 0)
            throw std::domain_error("AffineMap::eval_integer: non-integer result");
        return t / d;
    }

    bool operator==(const AffineMap& o) const {
        return sign == o.sign && pow3 == o.pow3 && pow2 == o.pow2 && cnum == o.cnum;
    }

    std::string str() const {
        std::string coef = (sign < 0 ? "-" : "") + pow3_int(pow3).str();
        std::string s = coef + "/2^" + std::to_string(pow2) + " x";
        if (cnum >= 0) s += " + " + cnum.str();
        else s += " - " + Int(-cnum).str();
        s += "/2^" + std::to_string(pow2);
        return s;
    }
};

// outer(inner(x)), exact. The composite constant is outer evaluated at
// inner's constant.
inline AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    AffineMap r;
    r.sign = outer.sign * inner.sign;
    r.pow3 = outer.pow3 + inner.pow3;
    r.pow2 = outer.pow2 + inner.pow2;
    Int a = pow3_int(outer.pow3);
    if (outer.sign < 0) a = -a;
    r.cnum = a * inner.cnum + outer.cnum * pow2_int(inner.pow2);
    return r;
}

enum class SignConstraint { positive, non_positive, any };

// x == residue (mod modulus) with modulus a power of two, plus a sign constraint.
struct ResidueClass {
    Int modulus = 1;   // 2^e
    Int residue = 0;   // in [0, modulus)
    SignConstraint sign = SignConstraint::any;

    bool contains(const Int& x) const {
        if (sign == SignConstraint::positive && x <= 0) return false;
        if (sign == SignConstraint::non_positive && x > 0) return false;
        Int r = x % modulus;
        if (r < 0) r += modulus;
        return r == residue;
    }

    // Member of smallest absolute value satisfying the sign constraint.
    Int anchor() const {
        switch (sign) {
            case SignConstraint::positive:
                return residue == 0 ? modulus : residue;
            case SignConstraint::non_positive:
                return residue == 0 ? Int(0) : residue - modulus;
            default:
                return residue;
        }
    }

    // k-th member counted outward from the anchor.
    Int member(unsigned k) const {
        Int a = anchor();
        if (sign == SignConstraint::non_positive) return a - Int(k) * modulus;
        return a + Int(k) * modulus;
    }

    std::string str() const {
        std::string s = residue.str() + " mod " + modulus.str();
        if (sign == SignConstraint::positive) s += ", x > 0";
        if (sign == SignConstraint::non_positive) s += ", x <= 0";
        return s;
    }
};

}  // namespace collatz
