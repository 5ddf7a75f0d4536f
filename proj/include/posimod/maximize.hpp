#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimize.hpp"  // detail::require_* helpers
#include "oracle.hpp"
#include "result.hpp"
#include "subset.hpp"
#include "value.hpp"

namespace posimod {

namespace detail {

// Maximization tie-break: larger value, then larger cardinality, then
// smaller mask (maximal maximizers are the interesting ones).
struct MaxFold {
    bool set = false;
    SubsetMask witness;
    Value value;

    void offer(SubsetMask x, const Value& v) {
        if (!set) {
            set = true;
            witness = x;
            value = v;
            return;
        }
        if (v > value) {
            witness = x;
            value = v;
            return;
        }
        if (v == value) {
            int cx = x.cardinality(), cw = witness.cardinality();
            if (cx > cw || (cx == cw && x < witness)) witness = x;
        }
    }
};

}  // namespace detail

// Exhaustive maximum over nonempty subsets; witness is the largest-cardinality
// maximizer, lexicographic tie-break.
inline OptimizationResult brute_force_max(const SetFunctionOracle& f, int cap = kDefaultBruteCap) {
    if (f.n() > cap) throw std::invalid_argument("brute_force_max refused: n exceeds cap");
    long long start = f.call_count();
    detail::MaxFold best;
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) { best.offer(x, f.evaluate(x)); });
    return {best.witness, best.value, f.call_count() - start, "brute_force_max"};
}

// Exact count bounding how many probe sets of Step 3 can intersect every
// size-d maximizer: sum over k of C(2d, k) * C(n-2d, d-1-k). Zero when
// d <= 2 or n < 2d.
inline long long step_bound(int n, int d) {
    if (d < 1) throw std::invalid_argument("need d >= 1");
    if (d <= 2 || n < 2 * d) return 0;
    long long sum = 0;
    for (int k = 2; k <= d - 1; ++k) sum += binomial(2 * d, k) * binomial(n - 2 * d, d - 1 - k);
    return sum;
}

// How many members of the Step 3 probe family get inspected.
struct MaxBudget {
    int n = 0;
    int d = 0;
    long long step3_budget = 0;

    static MaxBudget compute(int n, int d, long long x1_family_size) {
        MaxBudget b;
        b.n = n;
        b.d = d;
        b.step3_budget = std::min(step_bound(n, d) + 1, x1_family_size);
        return b;
    }
};

// Closed-form ceiling on the distinct oracle calls max_posimodular makes:
// the two scans plus the budgeted probes. O(n^{d-1}) for fixed d.
inline long long max_posimodular_call_bound(int n, int d) {
    if (d == 0) return 2;
    long long total = 1;  // normalization check
    int lo = n < 2 * d ? std::max(1, n - d) : std::max(1, n - d + 1);
    for (int i = lo; i <= n; ++i) total += binomial(n, i);
    if (n < 2 * d) return total;
    total += binomial(n, d - 1);
    total += (step_bound(n, d) + 1) * n;
    return total;
}

// MaxPosimodular: scan all sets of size >= n-d+1, then size d-1; if both
// fall short, probing step_bound(n,d)+1 of the size-(d-1) value-(d-1) sets
// for a +1 extension finds a maximizer whenever the optimum is d. Below
// n = 2d the size->=n-d scan is exhaustive enough and cheap. O(n^{d-1})
// oracle calls.
inline OptimizationResult max_posimodular(const SetFunctionOracle& f) {
    int d = detail::require_range_bound(f, "max_posimodular");
    detail::require_normalized(f, "max_posimodular");
    long long start = f.call_count();
    const int n = f.n();

    if (d == 0) return {SubsetMask::full(n), f.evaluate(SubsetMask::full(n)), f.call_count() - start, "max_posimodular"};

    if (n < 2 * d) {
        detail::MaxFold fold;
        for (int size = std::max(1, n - d); size <= n; ++size)
            for_each_subset_of_size(n, size, [&](SubsetMask x) { fold.offer(x, f.evaluate(x)); });
        return {fold.witness, fold.value, f.call_count() - start, "max_posimodular"};
    }

    const Value target = value_of(d);

    // Step 1: all sets of size >= n-d+1.
    detail::MaxFold big;
    for (int size = std::max(1, n - d + 1); size <= n; ++size)
        for_each_subset_of_size(n, size, [&](SubsetMask x) { big.offer(x, f.evaluate(x)); });
    if (big.value == target) return {big.witness, big.value, f.call_count() - start, "max_posimodular"};

    // Step 2: all sets of size d-1; collect the value-(d-1) ones for Step 3.
    detail::MaxFold small;
    std::vector<SubsetMask> probe_family;
    for_each_subset_of_size(n, d - 1, [&](SubsetMask x) {
        Value v = f.evaluate(x);
        small.offer(x, v);
        if (v == value_of(d - 1)) probe_family.push_back(x);
    });
    if (small.value == target) return {small.witness, small.value, f.call_count() - start, "max_posimodular"};
    if (small.value <= value_of(d - 2)) return {big.witness, big.value, f.call_count() - start, "max_posimodular"};

    // Step 3: probe the first budgeted members for a +1 extension.
    MaxBudget budget = MaxBudget::compute(n, d, static_cast<long long>(probe_family.size()));
    for (long long i = 0; i < budget.step3_budget; ++i) {
        SubsetMask x = probe_family[static_cast<std::size_t>(i)];
        for (int v = 0; v < n; ++v) {
            if (x.contains(v)) continue;
            SubsetMask up = x.with(v);
            if (f.evaluate(up) == target) return {up, target, f.call_count() - start, "max_posimodular"};
        }
    }

    // Step 4.
    return {big.witness, big.value, f.call_count() - start, "max_posimodular"};
}

}  // namespace posimod
