#pragma once
// trajectory.hpp - Full spiral trajectories, the reference Collatz oracle and
// the trajectory-equivalence checker (spiral steps vs odd Collatz iterates).

#include "collatz/step.hpp"

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace collatz {

inline constexpr std::uint64_t kDefaultBudget = 100000;

// T(n): n/2 if even, 3n+1 if odd.
template <class I>
I collatz_step(const I& n) {
    if (n < 1) throw std::invalid_argument("collatz_step: input must be >= 1");
    if ((n & 1) == 0) return n >> 1;
    return 3 * n + 1;
}

// The odd values in the Collatz trajectory of n, from n down to 1.
// n must be 1 or congruent to +-1 mod 6.
template <class I>
std::vector<I> odd_trajectory(I n, std::uint64_t budget = kDefaultBudget) {
    I r = n % 6;
    if (n < 1 || !(n == 1 || r == 1 || r == 5))
        throw std::invalid_argument("odd_trajectory: input must be 1 or of the form 6x +- 1");
    std::vector<I> odds;
    odds.push_back(n);
    std::uint64_t steps = 0;
    while (n != 1) {
        n = collatz_step(n);
        while ((n & 1) == 0) n >>= 1;
        odds.push_back(n);
        if (++steps > budget)
            throw std::runtime_error("odd_trajectory: step budget exhausted");
    }
    return odds;
}

template <class I>
struct SpiralTrajectory {
    std::vector<I> steps;   // starts at the start value; last is 0 unless truncated
    bool reached_zero = false;
};

// Iterate spiral_next from v until 0 or the budget runs out.
template <class I>
SpiralTrajectory<I> spiral_trajectory(I v, std::uint64_t budget = kDefaultBudget) {
    if (budget < 1) throw std::invalid_argument("spiral_trajectory: budget must be >= 1");
    SpiralTrajectory<I> t;
    t.steps.push_back(v);
    if (v == 0) {
        t.reached_zero = true;
        return t;
    }
    for (std::uint64_t i = 0; i < budget; ++i) {
        v = spiral_next(v);
        t.steps.push_back(v);
        if (v == 0) {
            t.reached_zero = true;
            break;
        }
    }
    return t;
}

template <class I>
struct EquivalenceResult {
    bool ok = false;
    std::vector<I> spiral_decoded;  // witness on mismatch
    std::vector<I> collatz_odds;
};

// Decoding the spiral trajectory of encode(n) must reproduce the odd Collatz
// trajectory of n, element for element.
template <class I>
EquivalenceResult<I> verify_step_equivalence(const I& n,
                                                std::uint64_t budget = kDefaultBudget) {
    EquivalenceResult<I> res;
    auto st = spiral_trajectory(spiral_encode(n), budget);
    if (!st.reached_zero) throw std::runtime_error("spiral trajectory budget exhausted");
    for (const I& v : st.steps) res.spiral_decoded.push_back(spiral_decode(v));
    res.collatz_odds = odd_trajectory(n, budget);
    res.ok = res.spiral_decoded == res.collatz_odds;
    if (res.ok) {
        res.spiral_decoded.clear();
        res.collatz_odds.clear();
    }
    return res;
}

// Row x: 6x+1 followed by its first i_max Collatz iterates.
template <class I>
std::vector<std::vector<I>> iterates_table(unsigned x_max, unsigned i_max) {
    if (x_max < 1 || i_max < 1)
        throw std::invalid_argument("iterates_table: bounds must be >= 1");
    std::vector<std::vector<I>> table;
    for (unsigned x = 1; x <= x_max; ++x) {
        std::vector<I> row;
        I n = I(6) * x + 1;
        row.push_back(n);
        for (unsigned i = 0; i < i_max; ++i) {
            n = collatz_step(n);
            row.push_back(n);
        }
        table.push_back(std::move(row));
    }
    return table;
}

struct SweepResult {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<std::int64_t> failures;  // offending n values, sorted
};

// Equivalence sweep over all n == +-1 (mod 6), n < max, partitioned across
// jobs. Workers share nothing; failure lists are merged and sorted so output
// is independent of the partition.
inline SweepResult verify_equivalence_range(std::int64_t max, unsigned jobs = 1,
                                            std::uint64_t budget = kDefaultBudget) {
    if (jobs < 1) jobs = 1;
    std::vector<SweepResult> parts(jobs);
    auto worker = [&](unsigned j) {
        SweepResult& out = parts[j];
        for (std::int64_t n = 1 + 6 * std::int64_t(j); n < max; n += 6 * jobs) {
            for (std::int64_t m : {n, n + 4}) {  // 6x+1 and 6x+5 in each block
                if (m >= max) continue;
                ++out.checked;
                auto r = verify_step_equivalence<std::int64_t>(m, budget);
                if (!r.ok) {
                    ++out.failed;
                    out.failures.push_back(m);
                }
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
        for (auto& t : threads) t.join();
    }
    SweepResult total;
    for (auto& p : parts) {
        total.checked += p.checked;
        total.failed += p.failed;
        total.failures.insert(total.failures.end(), p.failures.begin(), p.failures.end());
    }
    std::sort(total.failures.begin(), total.failures.end());
    return total;
}

}  // namespace collatz
