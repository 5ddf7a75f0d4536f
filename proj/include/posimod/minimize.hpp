#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "horn.hpp"
#include "oracle.hpp"
#include "result.hpp"
#include "subset.hpp"
#include "value.hpp"

namespace posimod {

inline constexpr int kDefaultBruteCap = 20;

namespace detail {

// Global tie-break: smaller value, then smaller cardinality, then smaller
// mask. Scanning in any order and folding with this keeps results
// deterministic.
struct MinFold {
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
        if (v < value) {
            witness = x;
            value = v;
            return;
        }
        if (v == value) {
            int cx = x.cardinality(), cw = witness.cardinality();
            if (cx < cw || (cx == cw && x < witness)) witness = x;
        }
    }
};

inline void require_normalized(const SetFunctionOracle& f, const char* who) {
    if (f.evaluate(SubsetMask()) != Value(0))
        throw std::invalid_argument(std::string(who) + " expects a normalized oracle (f(empty) = 0)");
}

inline int require_range_bound(const SetFunctionOracle& f, const char* who) {
    if (!f.range_bound()) throw std::invalid_argument(std::string(who) + " needs a declared range bound");
    return *f.range_bound();
}

}  // namespace detail

// Exhaustive minimum over nonempty subsets. Witness is the lexicographically
// least minimizer of smallest cardinality.
inline OptimizationResult brute_force_min(const SetFunctionOracle& f, int cap = kDefaultBruteCap) {
    if (f.n() > cap) throw std::invalid_argument("brute_force_min refused: n exceeds cap");
    long long start = f.call_count();
    detail::MinFold best;
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) { best.offer(x, f.evaluate(x)); });
    return {best.witness, best.value, f.call_count() - start, "brute_force_min"};
}

// True iff every nonempty subset Y of x satisfies f(Y) >= f(x).
inline bool is_semi_extreme(const SetFunctionOracle& f, SubsetMask x, int cap = kDefaultBruteCap) {
    if (x.empty()) throw std::invalid_argument("is_semi_extreme needs a nonempty set");
    if (x.cardinality() > cap) throw std::invalid_argument("is_semi_extreme refused: |x| exceeds cap");
    Value fx = f.evaluate(x);
    bool ok = true;
    for_each_proper_nonempty_submask(x, [&](SubsetMask y) {
        if (ok && f.evaluate(y) < fx) ok = false;
    });
    return ok;
}

// Minimization for range bounds d <= 3 by repeatedly contracting a
// semi-extreme pair. Each round evaluates the current singletons, pairs,
// co-singletons and full set (memoization makes later rounds O(n) fresh
// calls), folds everything seen into the running best, and stops when no
// pair is semi-extreme; the surviving candidate sizes {1, n-1, n} then
// contain a true minimizer.
inline OptimizationResult min_d_le_3(const SetFunctionOracle& f) {
    int d = detail::require_range_bound(f, "min_d_le_3");
    if (d > 3) throw std::invalid_argument("min_d_le_3 needs range bound d <= 3");
    detail::require_normalized(f, "min_d_le_3");

    long long start = f.call_count();
    detail::MinFold best;
    SetFunctionOracle cur = f;
    ContractionMap rel = ContractionMap::identity(f.n());  // current universe -> f's universe

    for (;;) {
        const int m = cur.n();
        SubsetMask full = SubsetMask::full(m);

        std::vector<Value> singleton(static_cast<std::size_t>(m));
        for (int v = 0; v < m; ++v) {
            singleton[static_cast<std::size_t>(v)] = cur.evaluate(SubsetMask::single(v));
            best.offer(rel.expand(SubsetMask::single(v)), singleton[static_cast<std::size_t>(v)]);
        }
        best.offer(rel.expand(full), cur.evaluate(full));
        for (int v = 0; v < m && m > 1; ++v) {
            SubsetMask co = full.without(v);
            best.offer(rel.expand(co), cur.evaluate(co));
        }

        SubsetMask semi_pair;
        bool found = false;
        for_each_subset_of_size(m, 2, [&](SubsetMask pair) {
            Value fp = cur.evaluate(pair);
            best.offer(rel.expand(pair), fp);
            if (!found) {
                auto e = pair.elements();
                if (singleton[static_cast<std::size_t>(e[0])] >= fp && singleton[static_cast<std::size_t>(e[1])] >= fp) {
                    semi_pair = pair;
                    found = true;
                }
            }
        });

        if (m == 1 || !found) break;
        auto contracted = contract(cur, semi_pair);
        rel = compose(rel, local_contraction_map(m, semi_pair));
        cur = contracted.first;
    }
    return {best.witness, best.value, f.call_count() - start, "min_d_le_3"};
}

// Which small subsets can be built from the empty set one element at a time
// with strictly increasing value. Only sets of size <= d are tabulated; a
// bounded range makes everything larger unreachable automatically.
struct ReachabilityTable {
    int d = 0;
    std::unordered_map<std::uint32_t, bool> reachable;

    bool is_reachable(SubsetMask x) const {
        if (x.empty()) return true;
        auto it = reachable.find(x.bits());
        if (it != reachable.end()) return it->second;
        if (x.cardinality() > d) return false;
        throw std::logic_error("reachability table has no entry for " + x.to_string());
    }
};

// Dynamic program by increasing cardinality; queries f only on sets of size
// <= d.
inline ReachabilityTable reachability(const SetFunctionOracle& f, int d) {
    if (d < 0) throw std::invalid_argument("range bound must be nonnegative");
    detail::require_normalized(f, "reachability");
    ReachabilityTable table;
    table.d = d;
    const int n = f.n();
    const int top = std::min(d, n);
    std::unordered_map<std::uint32_t, Value> values;
    values.emplace(0u, Value(0));
    for (int size = 1; size <= top; ++size) {
        for_each_subset_of_size(n, size, [&](SubsetMask x) {
            Value fx = f.evaluate(x);
            values.emplace(x.bits(), fx);
            bool ok = false;
            for (int u : x.elements()) {
                SubsetMask facet = x.without(u);
                if (size > 1 && !table.reachable.at(facet.bits())) continue;
                if (fx > values.at(facet.bits())) {
                    ok = true;
                    break;
                }
            }
            table.reachable.emplace(x.bits(), ok);
        });
    }
    return table;
}

// The family of minimal unreachable sets together with the table they came
// from. Sizes lie in [1, d+1]; minimality inspects every proper subset
// because reachability is not downward closed.
struct UnreachableFamily {
    std::vector<SubsetMask> members;
    ReachabilityTable table;
};

inline UnreachableFamily minimal_unreachable(const ReachabilityTable& table, int n) {
    UnreachableFamily fam;
    fam.table = table;
    const int top = std::min(table.d + 1, n);
    for (int size = 1; size <= top; ++size) {
        for_each_subset_of_size(n, size, [&](SubsetMask u) {
            if (size <= table.d && table.reachable.at(u.bits())) return;
            // size == d+1 sets are unreachable outright.
            std::uint32_t full = u.bits();
            for (std::uint32_t s = (0u - full) & full; s != full && s != 0; s = (s - full) & full)
                if (!table.is_reachable(SubsetMask::of_bits(s))) return;
            fam.members.push_back(u);
        });
    }
    return fam;
}

// Everything the Horn pipeline produces for one oracle; shared by the
// minimizer, the enumerator and the extreme-set computation.
struct MinPipeline {
    ReachabilityTable table;
    UnreachableFamily family;
    HornCnf phi;       // dual Horn, over the original variables
    HornCnf definite;  // phi complemented
    std::vector<SubsetMask> closures;
};

inline MinPipeline build_min_pipeline(const SetFunctionOracle& f, int d) {
    MinPipeline p;
    p.table = reachability(f, d);
    p.family = minimal_unreachable(p.table, f.n());
    p.phi = build_phi(p.family.members, f.n());
    p.definite = complement_cnf(p.phi);
    p.closures = enumerate_closures(p.definite, f.n(), d);
    return p;
}

// MinPosimodular: best singleton versus the best closure complement of size
// >= 2 (every locally minimal set satisfies phi, and every satisfying
// assignment is a bounded-seed closure). O(n^d) oracle calls.
inline OptimizationResult min_posimodular(const SetFunctionOracle& f) {
    int d = detail::require_range_bound(f, "min_posimodular");
    detail::require_normalized(f, "min_posimodular");
    long long start = f.call_count();
    const int n = f.n();

    MinPipeline pipe = build_min_pipeline(f, d);

    detail::MinFold best;
    for (int v = 0; v < n; ++v) best.offer(SubsetMask::single(v), f.evaluate(SubsetMask::single(v)));
    SubsetMask all = SubsetMask::full(n);
    for (const auto& q : pipe.closures) {
        SubsetMask cand = all - q;
        if (cand.cardinality() < 2) continue;
        best.offer(cand, f.evaluate(cand));
    }
    return {best.witness, best.value, f.call_count() - start, "min_posimodular"};
}

// Closed-form ceiling on the distinct oracle calls min_posimodular makes:
// the reachability sweep plus one evaluation per closure complement and
// singleton. O(n^d) for fixed d.
inline long long min_posimodular_call_bound(int n, int d) {
    long long small_sets = 0;
    for (int i = 0; i <= std::min(d, n); ++i) small_sets += binomial(n, i);
    return 2 * small_sets + n + 1;
}

// f(x) < f(x \ {v}) for every v in x. Under a normalized oracle a singleton
// can never pass (that would need f < 0), which matches treating singleton
// minimizers separately everywhere.
inline bool is_locally_minimal(const SetFunctionOracle& f, SubsetMask x) {
    if (x.empty()) throw std::invalid_argument("is_locally_minimal needs a nonempty set");
    Value fx = f.evaluate(x);
    for (int v : x.elements())
        if (fx >= f.evaluate(x.without(v))) return false;
    return true;
}

// Streams every minimizer of f: first the minimizing singletons and the
// locally minimal minimizers from the Horn candidate pool, then the upward
// closure (T union {v} whenever it stays optimal) in breadth-first discovery
// order. Emissions are paced one per n fresh oracle calls so that at most n
// distinct evaluations separate consecutive emissions: scanning the i-th
// discovered minimizer costs at most n-1 fresh calls, so k*n calls into the
// sweep at least k+1 minimizers are already discovered and the emission
// queue cannot run dry. The sink returns false to stop early. Returns the
// number of sets emitted.
inline long long enumerate_all_minimizers(const SetFunctionOracle& f,
                                          const std::function<bool(SubsetMask)>& sink) {
    int d = detail::require_range_bound(f, "enumerate_all_minimizers");
    detail::require_normalized(f, "enumerate_all_minimizers");
    const int n = f.n();

    MinPipeline pipe = build_min_pipeline(f, d);
    SubsetMask all = SubsetMask::full(n);

    std::vector<SubsetMask> pool;
    detail::MinFold best;
    for (int v = 0; v < n; ++v) best.offer(SubsetMask::single(v), f.evaluate(SubsetMask::single(v)));
    for (const auto& q : pipe.closures) {
        SubsetMask cand = all - q;
        if (cand.cardinality() < 2) continue;
        pool.push_back(cand);
        best.offer(cand, f.evaluate(cand));
    }
    const Value fmin = best.value;

    // Seeds, all discovered before the first emission.
    std::vector<SubsetMask> discovered;
    std::unordered_set<std::uint32_t> seen;
    for (int v = 0; v < n; ++v) {
        SubsetMask s = SubsetMask::single(v);
        if (f.evaluate(s) == fmin && seen.insert(s.bits()).second) discovered.push_back(s);
    }
    for (const auto& cand : pool)
        if (f.evaluate(cand) == fmin && is_locally_minimal(f, cand) && seen.insert(cand.bits()).second)
            discovered.push_back(cand);

    std::size_t emit_idx = 0;
    long long count = 0;
    bool stopped = false;
    long long last_emit_calls = 0;
    auto emit_next = [&]() {
        if (stopped || emit_idx >= discovered.size()) return;
        ++count;
        last_emit_calls = f.call_count();
        if (!sink(discovered[emit_idx++])) stopped = true;
    };

    emit_next();
    for (std::size_t i = 0; i < discovered.size() && !stopped; ++i) {
        SubsetMask t = discovered[i];
        for (int v = 0; v < n && !stopped; ++v) {
            if (t.contains(v)) continue;
            SubsetMask up = t.with(v);
            if (seen.count(up.bits())) continue;
            if (f.call_count() - last_emit_calls >= n) emit_next();
            if (f.evaluate(up) == fmin && seen.insert(up.bits()).second) discovered.push_back(up);
        }
    }
    while (!stopped && emit_idx < discovered.size()) emit_next();
    return count;
}

inline std::vector<SubsetMask> all_minimizers(const SetFunctionOracle& f) {
    std::vector<SubsetMask> out;
    enumerate_all_minimizers(f, [&](SubsetMask x) {
        out.push_back(x);
        return true;
    });
    return out;
}

// ComputeExtremeSets: candidate pool = singletons plus closure complements;
// a pool member is extreme iff no smaller pool member inside it is as cheap.
// Output sorted by (cardinality, mask); the family is laminar for
// posimodular inputs.
inline std::vector<SubsetMask> compute_extreme_sets(const SetFunctionOracle& f) {
    int d = detail::require_range_bound(f, "compute_extreme_sets");
    detail::require_normalized(f, "compute_extreme_sets");
    const int n = f.n();

    MinPipeline pipe = build_min_pipeline(f, d);
    SubsetMask all = SubsetMask::full(n);

    std::vector<SubsetMask> pool;
    std::unordered_set<std::uint32_t> seen;
    for (int v = 0; v < n; ++v) {
        pool.push_back(SubsetMask::single(v));
        seen.insert(pool.back().bits());
    }
    for (const auto& q : pipe.closures) {
        SubsetMask cand = all - q;
        if (cand.empty()) continue;
        if (seen.insert(cand.bits()).second) pool.push_back(cand);
    }
    std::sort(pool.begin(), pool.end(), [](SubsetMask a, SubsetMask b) {
        int ca = a.cardinality(), cb = b.cardinality();
        return ca != cb ? ca < cb : a < b;
    });

    std::vector<Value> val;
    val.reserve(pool.size());
    for (const auto& x : pool) val.push_back(f.evaluate(x));

    std::vector<SubsetMask> extreme;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
            if (pool[j].proper_subset_of(pool[i]) && val[j] <= val[i]) ok = false;
        if (ok) extreme.push_back(pool[i]);
    }
    return extreme;
}

// Definition check used by tests and the laminarity criterion.
inline bool is_laminar(const std::vector<SubsetMask>& family) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            SubsetMask a = family[i], b = family[j];
            if (a.intersects(b) && !a.subset_of(b) && !b.subset_of(a)) return false;
        }
    return true;
}

}  // namespace posimod
