#pragma once
// tree.hpp - The predecessor structure of the spiral dynamic: inverse images
// of a value under the step family, their closed forms, and the connectivity
// tree rooted at 0.

#include "collatz/composition.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace collatz {

// Smallest |index| on each sign side whose output progression contains y.
// Predecessor indices then step by 6 on each side.
inline int base_index(const Int& y, bool positive_side) {
    OutputFamily f = family_of_value(y);
    for (int k = 1; k <= 6; ++k) {
        int idx = positive_side ? k : -k;
        if (output_family(idx) == f) return idx;
    }
    throw std::logic_error("base_index: unreachable");
}

struct PredecessorEntry {
    int index;
    Int value;
};

struct PredecessorFamily {
    Int target;
    std::vector<PredecessorEntry> entries;  // ordered by increasing |index|
    std::string positive_form;              // closed form for the positive side
    std::string negative_form;              // closed form for the non-positive side
};

// Solve f_index(x) = target; x is always inside the domain of f_index because
// each family maps its domain bijectively onto its output progression.
inline Int predecessor_under(int index, const Int& target) {
    StepMap s = step_map(index);
    unsigned k = index > 0 ? unsigned(index) : unsigned(-index);
    Int num = target * pow2_int(k) - s.map.cnum;
    if (s.map.sign < 0) num = -num;
    if (num % 3 != 0) throw std::logic_error("predecessor_under: target not in range");
    return num / 3;
}

inline std::string closed_form_string(const Int& target, bool positive_side) {
    int k0 = base_index(target, positive_side);
    unsigned k = unsigned(k0 > 0 ? k0 : -k0);
    // x = s*(2^k(6t - 1) - 2(-1)^k)/18 on the positive side,
    // x = s*(2^k(6t - 1) + 4(-1)^k)/18 on the non-positive side, k = k0 + 6n.
    Int six_t = 6 * target - 1;
    std::string e = "2^(" + std::to_string(k) + "+6n)";
    std::string term = "(" + six_t.str() + ")*" + e;
    int par = (k % 2 == 0) ? 1 : -1;  // (-1)^k
    int sign = positive_side ? ((k % 2 == 1) ? 1 : -1) : ((k % 2 == 0) ? 1 : -1);
    long corr = positive_side ? -2L * par : 4L * par;
    std::string inner = term + (corr >= 0 ? "+" : "") + std::to_string(corr);
    return (sign < 0 ? std::string("-(") + inner + ")/18" : "(" + inner + ")/18");
}

// n-th predecessor (n >= 0) of target on one side, via the closed form.
inline Int closed_form_value(const Int& target, bool positive_side, unsigned n) {
    int k0 = base_index(target, positive_side);
    unsigned k = unsigned(k0 > 0 ? k0 : -k0) + 6 * n;
    return predecessor_under(positive_side ? int(k) : -int(k), target);
}

// The count smallest-|index| predecessors of target, both sides merged.
// The self-loop predecessor of 0 (under f_{-2}) is skipped.
inline PredecessorFamily predecessors(const Int& target, unsigned count) {
    if (count < 1) throw std::invalid_argument("predecessors: count must be >= 1");
    PredecessorFamily fam;
    fam.target = target;
    fam.positive_form = closed_form_string(target, true);
    fam.negative_form = closed_form_string(target, false);
    int kp = base_index(target, true);
    int kn = base_index(target, false);
    while (fam.entries.size() < count) {
        int next = (kp < -kn) ? kp : kn;  // smaller |index| first
        Int p = predecessor_under(next, target);
        if (p != target)  // exclude the trivial self-loop at 0
            fam.entries.push_back({next, p});
        if (next == kp) kp += 6; else kn -= 6;
    }
    return fam;
}

struct TreeEdge {
    Int child;
    Int parent;  // spiral_next(child)
};

struct TreeSlice {
    unsigned radius = 0;
    std::vector<TreeEdge> edges;  // children ordered -radius..-1, 1..radius
    bool all_reach_zero = false;
};

// Edges (v, next(v)) for 0 < |v| <= radius; parent chains may pass through
// nodes outside the slice.
inline TreeSlice build_tree(unsigned radius, std::uint64_t budget = kDefaultBudget) {
    if (radius < 1) throw std::invalid_argument("build_tree: radius must be >= 1");
    TreeSlice t;
    t.radius = radius;
    t.all_reach_zero = true;
    for (long long v = -(long long)radius; v <= (long long)radius; ++v) {
        if (v == 0) continue;
        t.edges.push_back({Int(v), Int(spiral_next(v))});
        if (!spiral_trajectory(v, budget).reached_zero) t.all_reach_zero = false;
    }
    return t;
}

struct ConnectivityResult {
    bool connected = false;
    long long farthest_node = 0;   // node with the longest chain to 0
    std::uint64_t longest_chain = 0;
    long long failed_node = 0;     // set when a budget runs out
};

inline ConnectivityResult connectivity_check(unsigned radius,
                                             std::uint64_t budget = kDefaultBudget) {
    if (radius < 1) throw std::invalid_argument("connectivity_check: radius must be >= 1");
    ConnectivityResult r;
    r.connected = true;
    for (long long v = -(long long)radius; v <= (long long)radius; ++v) {
        if (v == 0) continue;
        auto t = spiral_trajectory(v, budget);
        if (!t.reached_zero) {
            r.connected = false;
            r.failed_node = v;
            continue;
        }
        std::uint64_t len = t.steps.size() - 1;
        if (len > r.longest_chain) {
            r.longest_chain = len;
            r.farthest_node = v;
        }
    }
    return r;
}

}  // namespace collatz
