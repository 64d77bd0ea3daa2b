#include "collatz/collatz.hpp"

#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

using namespace collatz;

TEST_CASE("composite of [f2, f-2, f-1] is 27/32 x + 7/32 on 27 mod 32") {
    auto c = make_chain({2, -2, -1});
    REQUIRE(c.realizable);
    REQUIRE(c.composite.coefficient() == Rational(27, 32));
    REQUIRE(Rational(c.composite.cnum, pow2_int(c.composite.pow2)) == Rational(7, 32));
    REQUIRE(c.domain.modulus == 32);
    REQUIRE(c.domain.residue == 27);
    REQUIRE(c.composite.eval_integer(Int(27)) == 23);
    REQUIRE(c.composite.eval_integer(Int(59)) == 50);
    REQUIRE(realized_chain(Int(27), 3) == std::vector<int>{2, -2, -1});
    REQUIRE(realized_chain(Int(59), 3) == std::vector<int>{2, -2, -1});
}

TEST_CASE("composite of [f2, f-1, f1, f1, f4] is -243/512 x + 69/512 on 487 mod 512") {
    auto c = make_chain({2, -1, 1, 1, 4});
    REQUIRE(c.realizable);
    REQUIRE(c.composite.coefficient() == Rational(-243, 512));
    REQUIRE(Rational(c.composite.cnum, pow2_int(c.composite.pow2)) == Rational(69, 512));
    // the exact domain: simulate from its smallest member
    REQUIRE(c.domain.modulus == 512);
    REQUIRE(c.domain.residue == 487);
    REQUIRE(realized_chain(Int(487), 5) == std::vector<int>{2, -1, 1, 1, 4});
    REQUIRE(c.composite.eval_integer(Int(487)) == -231);
    REQUIRE(c.composite.eval_integer(Int(999)) == -474);
    REQUIRE(c.composite.eval_integer(Int(1511)) == -717);
    // 211 realizes a different chain, so it cannot lie in this domain
    REQUIRE_FALSE(c.domain.contains(Int(211)));
    REQUIRE(realized_chain(Int(211), 2) != std::vector<int>{2, -1});
}

TEST_CASE("sign-incompatible chains are unrealizable but still composable") {
    auto c = make_chain({1, -1});  // f_1 outputs positives, f_{-1} wants x <= 0
    REQUIRE_FALSE(c.realizable);
    REQUIRE(c.composite.coefficient() == Rational(-9, 4));
    auto d = make_chain({2, 1});  // f_2 outputs negatives
    REQUIRE_FALSE(d.realizable);
}

TEST_CASE("composition algebra is exact") {
    // constant of g . f equals g evaluated at f's constant
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(1, 13);
    std::bernoulli_distribution side(0.5);
    for (int trial = 0; trial < 1000; ++trial) {
        int a = pick(rng) * (side(rng) ? 1 : -1);
        int b = pick(rng) * (side(rng) ? 1 : -1);
        AffineMap f = step_map(a).map;
        AffineMap g = step_map(b).map;
        AffineMap gf = compose(g, f);
        REQUIRE(gf.coefficient() == g.coefficient() * f.coefficient());
        Rational f_const(f.cnum, pow2_int(f.pow2));
        Rational gf_const(gf.cnum, pow2_int(gf.pow2));
        REQUIRE(gf_const == g.eval(f_const));
        REQUIRE(gf.pow3 == 2u);
        REQUIRE(gf.pow2 == f.pow2 + g.pow2);
    }
}

TEST_CASE("domain soundness: members of a chain domain follow the chain") {
    // every realizable chain of length <= 6 with per-step halvings <= 3
    std::vector<std::vector<int>> chains;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
        if (!cur.empty()) chains.push_back(cur);
        if (cur.size() == 6) return;
        bool next_positive = cur.empty() || family_is_positive(output_family(cur.back()));
        for (int k = 1; k <= 3; ++k) {
            cur.push_back(next_positive ? k : -k);
            grow(cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    grow(cur);
    REQUIRE(chains.size() == 3 + 9 + 27 + 81 + 243 + 729);
    for (const auto& idx : chains) {
        auto c = make_chain(idx);
        REQUIRE(c.realizable);
        for (unsigned i = 0; i < 3; ++i) {
            Int x = c.domain.member(i);
            REQUIRE(realized_chain(x, unsigned(idx.size())) == idx);
            Int cursor = x;
            for (int j : idx) cursor = step_apply(j, cursor);
            REQUIRE(cursor == c.composite.eval_integer(x));
        }
    }
}

TEST_CASE("domain completeness: simulated trajectories land in chain domains") {
    for (long long x = -10000; x <= 10000; ++x) {
        if (x == 0) continue;
        auto idx = realized_chain(Int(x), 6);
        auto c = make_chain(idx);
        REQUIRE(c.realizable);
        CAPTURE(x);
        REQUIRE(c.domain.contains(Int(x)));
    }
}

TEST_CASE("categories split by coefficient and constant signs") {
    REQUIRE(categorize(step_map(1).map) == Category::cat1);   // 3/2 x
    REQUIRE(categorize(step_map(-2).map) == Category::cat1);  // 3/4 x
    REQUIRE(categorize(step_map(2).map) == Category::cat3);   // -3/4 x + 1/4
    REQUIRE(categorize(step_map(-1).map) == Category::cat3);
    REQUIRE(categorize(make_chain({2, -2, -1}).composite) == Category::cat1);
    // a negative-coefficient negative-constant composite: f_{-2} then f_{-3}
    auto c43 = make_chain({-2, -2});
    REQUIRE(categorize(c43.composite) == Category::cat1);
    // build Cat4 via an unrealizable composite to exercise the classifier
    AffineMap m{-1, 1, 2, Int(-3)};
    REQUIRE(categorize(m) == Category::cat4);
    AffineMap m2{1, 1, 1, Int(-3)};
    REQUIRE(categorize(m2) == Category::cat2);
}

TEST_CASE("sink iff coefficient in (0,1) or (-1/2,0)") {
    REQUIRE_FALSE(is_sink(step_map(1).map));    // 3/2
    REQUIRE_FALSE(is_sink(step_map(-1).map));   // -3/2
    REQUIRE_FALSE(is_sink(step_map(2).map));    // -3/4, below -1/2
    REQUIRE(is_sink(step_map(-2).map));         // 3/4
    REQUIRE(is_sink(step_map(3).map));          // 3/8
    REQUIRE(is_sink(step_map(-3).map));         // -3/8
    REQUIRE(is_sink(make_chain({2, -2, -1}).composite));       // 27/32
    REQUIRE(is_sink(make_chain({2, -1, 1, 1, 4}).composite));  // -243/512
}

TEST_CASE("sinks return inputs to smaller canonical indices") {
    std::vector<std::vector<int>> chains;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
        if (!cur.empty()) chains.push_back(cur);
        if (cur.size() == 5) return;
        bool next_positive = cur.empty() || family_is_positive(output_family(cur.back()));
        for (int k = 1; k <= 4; ++k) {
            cur.push_back(next_positive ? k : -k);
            grow(cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    grow(cur);
    for (const auto& idx : chains) {
        auto c = make_chain(idx);
        if (!is_sink(c.composite)) continue;
        for (unsigned i = 0; i < 3; ++i) {
            Int x = c.domain.member(i);
            if (x == 0) continue;  // the root itself has no smaller index
            Int y = c.composite.eval_integer(x);
            CAPTURE(x);
            REQUIRE(canonical_index(y) < canonical_index(x));
        }
    }
}

TEST_CASE("fixed points of single maps") {
    // f_{-2} fixes 0, which lies in its domain: the trivial cycle
    auto s = step_map(-2);
    FixedPoint fp = fixed_point(s.map, &s.domain);
    REQUIRE(fp.x_star == 0);
    REQUIRE(fp.is_integer);
    REQUIRE(fp.in_domain);
    // f_1 also fixes 0 but 0 is not a positive even number
    auto s1 = step_map(1);
    FixedPoint fp1 = fixed_point(s1.map, &s1.domain);
    REQUIRE(fp1.x_star == 0);
    REQUIRE_FALSE(fp1.in_domain);
    // 27/32 x + 7/32 fixes 7/5, not an integer
    auto c = make_chain({2, -2, -1});
    FixedPoint fpc = fixed_point(c.composite, &c.domain);
    REQUIRE(fpc.x_star == Rational(7, 5));
    REQUIRE_FALSE(fpc.is_integer);
    // identity and no-fixed-point corner cases
    FixedPoint id = fixed_point(AffineMap{1, 0, 0, Int(0)});
    REQUIRE(id.is_identity);
    FixedPoint none = fixed_point(AffineMap{1, 0, 0, Int(5)});
    REQUIRE(none.no_fixed_point);
}

TEST_CASE("no chain of length <= 8 has a nontrivial in-domain integer fixed point") {
    // chains starting on the positive side (as from f_1/f_2) never cycle
    std::vector<int> cur;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& c) {
        if (!c.empty()) {
            auto chain = make_chain(c);
            FixedPoint fp = fixed_point(chain.composite, &chain.domain);
            CAPTURE(c);
            REQUIRE_FALSE((fp.is_integer && fp.in_domain));
        }
        if (c.size() == 8) return;
        bool next_positive = c.empty() || family_is_positive(output_family(c.back()));
        for (int k = 1; k <= 3; ++k) {
            c.push_back(next_positive ? k : -k);
            grow(c);
            c.pop_back();
        }
    };
    grow(cur);
    // the one permitted cycle: 0 looping under f_{-2}, any number of times
    for (unsigned len = 1; len <= 8; ++len) {
        std::vector<int> loop(len, -2);
        auto chain = make_chain(loop);
        REQUIRE(chain.realizable);
        FixedPoint fp = fixed_point(chain.composite, &chain.domain);
        REQUIRE(fp.x_star == 0);
        REQUIRE(fp.is_integer);
        REQUIRE(fp.in_domain);
    }
}

TEST_CASE("all positive-side lines meet at (1/9, 1/6) and negative at (2/9, 1/6)") {
    auto chk = intersection_points(64);
    REQUIRE(chk.ok);
    REQUIRE(step_map(1).map.eval(Rational(1, 9)) == Rational(1, 6));
    REQUIRE(step_map(-1).map.eval(Rational(2, 9)) == Rational(1, 6));
    REQUIRE(step_map(4).map.eval(Rational(1, 9)) == Rational(1, 6));
}

TEST_CASE("the two half-families are conjugate through x -> 1/3 - x") {
    REQUIRE(conjugation_symmetry(64));
    for (int k = 1; k <= 20; ++k) {
        // pointwise: f_{-k}(x) == f_k(1/3 - x) at a few rationals
        for (const Rational& x : {Rational(0), Rational(-5), Rational(1, 7)}) {
            REQUIRE(step_map(-k).map.eval(x) ==
                    step_map(k).map.eval(Rational(1, 3) - x));
        }
    }
}

TEST_CASE("min_q reproduces the lattice points") {
    REQUIRE(min_q(1, MinQVariant::coef_lt_1) == 2);
    REQUIRE(min_q(2, MinQVariant::coef_lt_1) == 4);
    REQUIRE(min_q(3, MinQVariant::coef_lt_1) == 5);
    REQUIRE(min_q(1, MinQVariant::coef_gt_neg_half) == 3);
    REQUIRE(min_q(2, MinQVariant::coef_gt_neg_half) == 5);
    REQUIRE(min_q(3, MinQVariant::coef_gt_neg_half) == 6);
    // exactness against a big-integer oracle
    for (unsigned p = 1; p <= 200; ++p) {
        unsigned q = min_q(p, MinQVariant::coef_lt_1);
        REQUIRE(pow3_int(p) < pow2_int(q));
        REQUIRE(pow3_int(p) > pow2_int(q - 1));
        unsigned q2 = min_q(p, MinQVariant::coef_gt_neg_half);
        REQUIRE(2 * pow3_int(p) < pow2_int(q2));
        REQUIRE(2 * pow3_int(p) > pow2_int(q2 - 1));
    }
}

TEST_CASE("fast enumeration agrees with exact chain construction") {
    SearchLimits limits;
    limits.max_depth = 4;
    limits.max_sum_k = 10;
    std::uint64_t n = enumerate_chains(limits, [&](const std::vector<int>& idx,
                                                   const detail::FastNode& node) {
        auto c = make_chain(idx);
        REQUIRE(c.realizable);
        REQUIRE(Int(node.sign) * node.pow3 ==
                Int(c.composite.sign) * pow3_int(c.composite.pow3));
        REQUIRE(Int(node.cnum) == c.composite.cnum);
        REQUIRE(node.sum_k == c.composite.pow2);
        REQUIRE(Int(node.residue) == c.domain.residue);
    });
    // node count by a side computation: chains from f_1/f_2 with depth d <= 4
    // and halvings summing to <= 10
    std::uint64_t expect = 0;
    std::function<void(unsigned, unsigned)> count = [&](unsigned depth, unsigned sum) {
        if (depth == 4) return;
        unsigned cap = 10 - sum;
        unsigned kmax = depth == 0 ? std::min(2u, cap) : cap;
        for (unsigned k = 1; k <= kmax; ++k) {
            ++expect;
            count(depth + 1, sum + k);
        }
    };
    count(0, 0);
    REQUIRE(n == expect);
}

TEST_CASE("bounded search finds no Category-2 composite and no nontrivial cycle") {
    SearchLimits limits;
    limits.max_depth = 8;
    limits.max_sum_k = 22;
    auto report = search_category2(limits);
    REQUIRE(report.category2.empty());
    REQUIRE(report.fixed_points.empty());
    REQUIRE(report.chains_visited > 0);
    // parallel runs visit the same set
    limits.jobs = 3;
    auto par = search_category2(limits);
    REQUIRE(par.chains_visited == report.chains_visited);
    REQUIRE(par.category2.empty());
    REQUIRE(par.fixed_points.empty());
}

TEST_CASE("category transitions never reach Category 2") {
    auto probe = category_closure_probe(6);
    REQUIRE(probe.chains_visited > 0);
    for (Category from : {Category::cat1, Category::cat2, Category::cat3, Category::cat4}) {
        REQUIRE_FALSE(probe.transition_seen(from, Category::cat2));
    }
    // observed closure: Cat4 feeds back into {1, 3, 4}
    bool cat4_seen = probe.transition_seen(Category::cat4, Category::cat1) ||
                     probe.transition_seen(Category::cat4, Category::cat3) ||
                     probe.transition_seen(Category::cat4, Category::cat4);
    REQUIRE(cat4_seen);
}
