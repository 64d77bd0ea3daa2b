#pragma once
// composition.hpp - Exact composition algebra over the step family: chains
// with residue-class domains, the four sign categories, sink and fixed-point
// analysis, the bounded Category-2 search and the common-line facts.

#include "collatz/step.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace collatz {

enum class Category { cat1 = 1, cat2 = 2, cat3 = 3, cat4 = 4 };

// Sign of coefficient / sign of constant. A zero constant classifies with the
// positive-constant case.
inline Category categorize(const AffineMap& m) {
    if (m.sign > 0) return m.cnum >= 0 ? Category::cat1 : Category::cat2;
    return m.cnum >= 0 ? Category::cat3 : Category::cat4;
}

// Coefficient in (0, 1) or (-1/2, 0): inputs return to smaller canonical
// indices on the spiral.
inline bool is_sink(const AffineMap& m) {
    Int p3 = pow3_int(m.pow3);
    Int p2 = pow2_int(m.pow2);
    if (m.sign > 0) return p3 < p2;
    return 2 * p3 < p2;
}

struct FixedPoint {
    bool is_identity = false;      // coefficient 1, zero constant
    bool no_fixed_point = false;   // coefficient 1, nonzero constant
    Rational x_star;               // defined when coefficient != 1
    bool is_integer = false;
    bool in_domain = false;        // only meaningful when a domain was supplied
};

inline FixedPoint fixed_point(const AffineMap& m,
                              const ResidueClass* domain = nullptr) {
    FixedPoint fp;
    Rational coef = m.coefficient();
    if (coef == 1) {
        if (m.cnum == 0) fp.is_identity = true;
        else fp.no_fixed_point = true;
        return fp;
    }
    fp.x_star = Rational(m.cnum, pow2_int(m.pow2)) / (1 - coef);
    fp.is_integer = denominator(fp.x_star) == 1;
    if (fp.is_integer && domain != nullptr)
        fp.in_domain = domain->contains(numerator(fp.x_star));
    return fp;
}

// An ordered list of family indices (applied left to right), its exact
// composite and the exact set of integers whose trajectory follows the
// indices in order. The domain of a realizable chain is a single residue
// class modulo 2^(sum |k_i|) on the sign side of the first index.
struct CompositionChain {
    std::vector<int> indices;
    AffineMap composite;
    bool realizable = false;
    ResidueClass domain;  // valid only when realizable
};

inline CompositionChain make_chain(const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("chain: index list must be non-empty");
    CompositionChain c;
    c.indices = indices;
    StepMap first = step_map(indices[0]);
    c.composite = first.map;
    c.domain = first.domain;
    c.realizable = true;
    unsigned n = first.map.pow2;  // accumulated halvings == log2(domain modulus)
    for (std::size_t i = 1; i < indices.size(); ++i) {
        int prev = indices[i - 1];
        int cur = indices[i];
        // The range of every family has one sign; the next index must sit on
        // that side or the chain is unrealizable.
        if (family_is_positive(output_family(prev)) != (cur > 0)) {
            c.realizable = false;
            c.composite = compose(step_map(cur).map, c.composite);
            for (std::size_t j = i + 1; j < indices.size(); ++j)
                c.composite = compose(step_map(indices[j]).map, c.composite);
            return c;
        }
        StepMap step = step_map(cur);
        unsigned k = cur > 0 ? unsigned(cur) : unsigned(-cur);
        // Pull the step domain back through the composite so far:
        //   (s*3^i x + cnum)/2^n == rho (mod 2^k)
        // has the unique solution x == inv(s*3^i) (rho*2^n - cnum) mod 2^(n+k).
        unsigned nn = n + k;
        Int inv = inverse_mod_pow2(pow3_int(c.composite.pow3), nn);
        Int rhs = step.domain.residue * pow2_int(n) - c.composite.cnum;
        if (c.composite.sign < 0) rhs = -rhs;
        Int r = (inv * rhs) % pow2_int(nn);
        if (r < 0) r += pow2_int(nn);
        c.domain.modulus = pow2_int(nn);
        c.domain.residue = r;
        c.composite = compose(step.map, c.composite);
        n = nn;
    }
    return c;
}

// The length-L chain realized by simulating the trajectory of x.
template <class I>
std::vector<int> realized_chain(I x, unsigned length) {
    std::vector<int> idx;
    for (unsigned i = 0; i < length; ++i) {
        idx.push_back(classify(x));
        x = spiral_next(x);
    }
    return idx;
}

// --- Common-line facts -----------------------------------------------------

// Every f_k passes through (1/9, 1/6); every f_{-k} through (2/9, 1/6).
struct IntersectionCheck {
    Rational positive_point_x{1, 9};
    Rational negative_point_x{2, 9};
    Rational common_y{1, 6};
    bool ok = false;
};

inline IntersectionCheck intersection_points(unsigned kmax) {
    if (kmax < 1) throw std::invalid_argument("intersection_points: kmax must be >= 1");
    IntersectionCheck chk;
    chk.ok = true;
    for (unsigned k = 1; k <= kmax; ++k) {
        if (step_map(int(k)).map.eval(chk.positive_point_x) != chk.common_y) chk.ok = false;
        if (step_map(-int(k)).map.eval(chk.negative_point_x) != chk.common_y) chk.ok = false;
    }
    return chk;
}

// f_{-k}(x) == f_k(1/3 - x): the two half-families are mirror images about
// x = 1/6, exactly.
inline bool conjugation_symmetry(unsigned kmax) {
    for (unsigned k = 1; k <= kmax; ++k) {
        AffineMap pos = step_map(int(k)).map;
        AffineMap neg = step_map(-int(k)).map;
        Rational conj_coef = -pos.coefficient();
        Rational conj_const = pos.eval(Rational(1, 3));
        if (neg.coefficient() != conj_coef) return false;
        if (Rational(neg.cnum, pow2_int(neg.pow2)) != conj_const) return false;
    }
    return true;
}

enum class MinQVariant { coef_lt_1, coef_gt_neg_half };

// Smallest q with 3^p < 2^q (coef_lt_1) or 2*3^p < 2^q (coef_gt_neg_half),
// by exact integer comparison.
inline unsigned min_q(unsigned p, MinQVariant variant) {
    if (p < 1) throw std::invalid_argument("min_q: p must be >= 1");
    Int v = pow3_int(p);
    if (variant == MinQVariant::coef_gt_neg_half) v *= 2;
    unsigned q = boost::multiprecision::msb(v) + 1;  // 2^(q-1) <= v < 2^q
    return q;
}

// --- Bounded chain enumeration --------------------------------------------
//
// Chains are enumerated in fast fixed-width arithmetic; the bounds below keep
// every intermediate inside int64/uint64 (sum of halvings <= 40 guarantees
// constant numerators below 2^62 at depth <= 14).

struct SearchLimits {
    unsigned max_depth = 12;   // number of composed steps
    unsigned max_sum_k = 30;   // total halvings (log2 of the composite denominator)
    unsigned jobs = 1;
};

struct SearchWitness {
    std::vector<int> indices;
    CompositionChain chain;  // recomputed exactly for reporting
    bool is_fixed_point = false;
    Int fixed_point_value;
};

struct SearchReport {
    SearchLimits limits;
    std::uint64_t chains_visited = 0;
    std::vector<SearchWitness> category2;
    std::vector<SearchWitness> fixed_points;
};

namespace detail {

struct FastTables {
    // constant numerators and domain residues for both sides, k = 1..kmax
    std::vector<std::int64_t> q_pos, q_neg;
    std::vector<std::uint64_t> r_pos, r_neg;
    explicit FastTables(unsigned kmax) {
        q_pos.resize(kmax + 1);
        q_neg.resize(kmax + 1);
        r_pos.resize(kmax + 1);
        r_neg.resize(kmax + 1);
        for (unsigned k = 1; k <= kmax; ++k) {
            q_pos[k] = std::int64_t(jacobsthal_c(k));
            q_neg[k] = std::int64_t(jacobsthal_d(k));
            r_pos[k] = std::uint64_t(step_domain(int(k)).residue);
            r_neg[k] = std::uint64_t(step_domain(-int(k)).residue);
        }
    }
};

inline constexpr std::uint64_t kInv3Mod2_64 = 0xAAAAAAAAAAAAAAABULL;

struct FastNode {
    unsigned depth = 0;
    unsigned sum_k = 0;
    int sign = 1;               // coefficient sign
    std::int64_t pow3 = 1;      // 3^depth
    std::int64_t cnum = 0;      // constant numerator over 2^sum_k
    std::uint64_t residue = 0;  // domain residue mod 2^sum_k
    std::uint64_t inv3m = 1;    // inverse of 3^depth mod 2^64
    bool out_positive = true;   // sign side of the next step
};

// Extend a node by one step of halving count k on the forced sign side.
inline FastNode extend(const FastNode& node, unsigned k, const FastTables& t) {
    FastNode c;
    c.depth = node.depth + 1;
    c.sum_k = node.sum_k + k;
    bool pos_side = node.out_positive;
    int step_sign = (k % 2 == 0) ? -1 : 1;  // (-1)^(k-1)
    if (!pos_side) step_sign = -step_sign;
    std::int64_t q = pos_side ? t.q_pos[k] : t.q_neg[k];
    std::uint64_t rho = pos_side ? t.r_pos[k] : t.r_neg[k];
    c.sign = node.sign * step_sign;
    c.pow3 = node.pow3 * 3;
    c.cnum = std::int64_t(step_sign) * 3 * node.cnum + q * (std::int64_t(1) << node.sum_k);
    c.inv3m = node.inv3m * kInv3Mod2_64;
    // x == inv(s*3^m) (rho*2^n - cnum) mod 2^(n+k)
    std::uint64_t rhs = (rho << node.sum_k) - std::uint64_t(node.cnum);
    std::uint64_t sol = node.inv3m * rhs;
    if (node.sign < 0) sol = std::uint64_t(0) - sol;
    std::uint64_t mask = (std::uint64_t(1) << c.sum_k) - 1;
    c.residue = sol & mask;
    c.out_positive = family_is_positive(output_family(pos_side ? int(k) : -int(k)));
    return c;
}

}  // namespace detail

// Enumerate every chain starting at f_1 or f_2 with depth <= limits.max_depth
// and total halvings <= limits.max_sum_k, invoking the visitor at every node.
// Visitor signature: void(const std::vector<int>& indices, const FastNode&).
// When jobs > 1, each worker enumerates the subtrees rooted at depth-2 nodes
// assigned to (job_id mod jobs); depth <= 2 nodes are visited by job 0 only,
// so every chain is visited exactly once across workers.
template <class Visitor>
std::uint64_t enumerate_chains(const SearchLimits& limits, Visitor&& visit,
                               unsigned job_id = 0, unsigned jobs = 1) {
    if (limits.max_depth < 1 || limits.max_depth > 14)
        throw std::invalid_argument("enumerate_chains: depth must be in [1, 14]");
    if (limits.max_sum_k < limits.max_depth || limits.max_sum_k > 40)
        throw std::invalid_argument("enumerate_chains: sum-k budget must be in [depth, 40]");
    detail::FastTables tables(limits.max_sum_k);
    std::uint64_t count = 0;
    std::vector<int> indices;
    detail::FastNode root;  // identity; out_positive = true, so k1 acts on x > 0
    std::uint64_t subtree = 0;

    std::function<void(const detail::FastNode&)> dfs =
        [&](const detail::FastNode& node) {
            if (node.depth >= limits.max_depth) return;
            unsigned kcap = limits.max_sum_k - node.sum_k;
            unsigned kmax = (node.depth == 0) ? std::min(2u, kcap) : kcap;
            for (unsigned k = 1; k <= kmax; ++k) {
                unsigned child_depth = node.depth + 1;
                bool assigned = true;
                if (jobs > 1 && child_depth == 2) assigned = (subtree++ % jobs) == job_id;
                bool do_visit = jobs == 1 || child_depth > 2 || job_id == 0;
                bool do_recurse = child_depth != 2 || assigned;
                if (!do_visit && !do_recurse) continue;
                detail::FastNode child = detail::extend(node, k, tables);
                indices.push_back(node.out_positive ? int(k) : -int(k));
                if (do_visit) {
                    ++count;
                    visit(indices, child);
                }
                if (do_recurse) dfs(child);
                indices.pop_back();
            }
        };
    dfs(root);
    return count;
}

// Exhaustive Category-2 and fixed-point hunt over the bounded chain space.
// Every composite with positive coefficient and negative constant is reported,
// as is every chain whose exact fixed point is an integer inside the chain
// domain. Both lists are expected to be empty.
inline SearchReport search_category2(const SearchLimits& limits) {
    SearchReport report;
    report.limits = limits;
    unsigned jobs = std::max(1u, limits.jobs);

    auto make_inspector = [&](SearchReport& out) {
        return [&out](const std::vector<int>& indices, const detail::FastNode& n) {
        bool cat2 = n.sign > 0 && n.cnum < 0;
        bool fp_hit = false;
        std::int64_t den = (std::int64_t(1) << n.sum_k) - std::int64_t(n.sign) * n.pow3;
        std::int64_t x0 = 0;
        if (den != 0 && n.cnum % den == 0) {
            x0 = n.cnum / den;
            std::uint64_t mask = (std::uint64_t(1) << n.sum_k) - 1;
            if (x0 >= 1 && ((std::uint64_t(x0) - n.residue) & mask) == 0) fp_hit = true;
        }
        if (cat2 || fp_hit) {
            SearchWitness w;
            w.indices = indices;
            w.chain = make_chain(indices);
            w.is_fixed_point = fp_hit;
            if (fp_hit) w.fixed_point_value = x0;
            if (cat2) out.category2.push_back(w);
            if (fp_hit) out.fixed_points.push_back(w);
        }
        };
    };

    if (jobs == 1) {
        report.chains_visited = enumerate_chains(limits, make_inspector(report));
    } else {
        std::vector<SearchReport> parts(jobs);
        std::vector<std::uint64_t> counts(jobs, 0);
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) {
            threads.emplace_back([&, j] {
                counts[j] = enumerate_chains(limits, make_inspector(parts[j]), j, jobs);
            });
        }
        for (auto& t : threads) t.join();
        for (unsigned j = 0; j < jobs; ++j) {
            report.chains_visited += counts[j];
            for (auto& w : parts[j].category2) report.category2.push_back(std::move(w));
            for (auto& w : parts[j].fixed_points) report.fixed_points.push_back(std::move(w));
        }
        auto by_indices = [](const SearchWitness& a, const SearchWitness& b) {
            return a.indices < b.indices;
        };
        std::sort(report.category2.begin(), report.category2.end(), by_indices);
        std::sort(report.fixed_points.begin(), report.fixed_points.end(), by_indices);
    }
    return report;
}

// --- Category transition probe ---------------------------------------------

// Observed category transitions: [before][side][parity of |k|] -> bitmask of
// categories seen after, where side is 0 for positive indices and parity is
// |k| % 2.
struct CategoryTransitions {
    std::array<std::array<std::array<unsigned, 2>, 2>, 5> seen{};  // bitmask by Category
    std::uint64_t chains_visited = 0;

    bool transition_seen(Category from, Category to) const {
        for (int side = 0; side < 2; ++side)
            for (int par = 0; par < 2; ++par)
                if (seen[int(from)][side][par] & (1u << int(to))) return true;
        return false;
    }
};

inline CategoryTransitions category_closure_probe(unsigned max_depth,
                                                  unsigned max_sum_k = 0) {
    if (max_depth < 2) throw std::invalid_argument("category_closure_probe: depth must be >= 2");
    SearchLimits limits;
    limits.max_depth = max_depth;
    limits.max_sum_k = max_sum_k ? max_sum_k : 2 * max_depth + 6;
    CategoryTransitions table;

    struct Prev {
        Category cat;
        bool valid = false;
    };
    std::vector<Category> stack;
    auto visit = [&](const std::vector<int>& indices, const detail::FastNode& n) {
        Category after = (n.sign > 0) ? (n.cnum >= 0 ? Category::cat1 : Category::cat2)
                                      : (n.cnum >= 0 ? Category::cat3 : Category::cat4);
        stack.resize(indices.size());
        stack[indices.size() - 1] = after;
        if (indices.size() >= 2) {
            Category before = stack[indices.size() - 2];
            int idx = indices.back();
            int side = idx > 0 ? 0 : 1;
            int par = (idx > 0 ? idx : -idx) % 2;
            table.seen[int(before)][side][par] |= 1u << int(after);
        }
    };
    table.chains_visited = enumerate_chains(limits, visit);
    return table;
}

}  // namespace collatz
