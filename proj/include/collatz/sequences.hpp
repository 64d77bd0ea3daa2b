#pragma once
// sequences.hpp - The three integer sequences behind the spiral construction
// (A016789, A075677, A329480) and their level decomposition. Indices are
// 1-based throughout.

#include "collatz/affine.hpp"

#include <stdexcept>

namespace collatz {

template <class I>
void require_index(const I& n) {
    if (n < 1) throw std::invalid_argument("sequence index must be >= 1");
}

// a(n) = 3n - 1: the arithmetic sequence 2, 5, 8, 11, ...
template <class I>
I a016789(const I& n) {
    require_index(n);
    return 3 * n - 1;
}

// Odd part of 3n - 1: the sequence 1, 5, 1, 11, 7, 17, 5, ...
template <class I>
I a075677(const I& n) {
    require_index(n);
    I t = 3 * n - 1;
    while ((t & 1) == 0) t >>= 1;
    return t;
}

// Spiral labels 0, 1, 0, 2, -1, 3, 1, 4, ... : a075677 folded through the
// 6x -+ 1 encoding.
template <class I>
I a329480(const I& n) {
    I t = a075677(n);
    I r = t % 6;
    if (r == 1) return (1 - t) / 6;
    return (t + 1) / 6;  // t == 5 (mod 6); these are the only residues
}

// One full revolution of the spiral. Level k spans sequence indices
// first..last with last - first + 1 = 2^(2k-1).
struct Level {
    unsigned k = 0;
    Int first;
    Int last;

    static Level of(unsigned k) {
        if (k < 1) throw std::invalid_argument("level must be >= 1");
        Level lv;
        lv.k = k;
        Int p = pow2_int(2 * (k - 1));  // 4^(k-1)
        lv.first = 2 * (p - 1) / 3 + 1;
        lv.last = 2 * (4 * p - 1) / 3;
        return lv;
    }

    Int size() const { return last - first + 1; }
};

inline Level level_of_index(const Int& n) {
    require_index(n);
    unsigned k = 1;
    while (Level::of(k).last < n) ++k;
    return Level::of(k);
}

}  // namespace collatz
