#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "subset.hpp"
#include "value.hpp"

namespace posimod {

// Undirected graph with nonnegative integer edge weights; vertices 0..n-1.
struct WeightedGraph {
    struct Edge {
        int u;
        int v;
        long long weight;
    };

    int n = 0;
    std::vector<Edge> edges;

    WeightedGraph() = default;
    WeightedGraph(int vertices, std::vector<Edge> es) : n(vertices), edges(std::move(es)) {
        if (n < 1 || n > kMaxGroundSize) throw std::invalid_argument("vertex count out of range");
        for (const auto& e : edges) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
            if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
            if (e.weight < 0) throw std::invalid_argument("edge weights must be nonnegative");
        }
    }

    long long total_weight() const {
        long long w = 0;
        for (const auto& e : edges) w += e.weight;
        return w;
    }
};

// g(X) = |X|, g(empty) = 0.
inline SetFunctionOracle make_cardinality(int n) {
    GroundSet g(n);
    return SetFunctionOracle(g, "cardinality(n=" + std::to_string(n) + ")", n,
                             [](SubsetMask x) { return value_of(x.cardinality()); });
}

// g(X) = min(|X|, d): the capped cardinality family used by the scaling and
// d <= 3 examples. Monotone with g(empty) = 0, hence posimodular.
inline SetFunctionOracle make_capped_cardinality(int n, int d) {
    if (d < 0) throw std::invalid_argument("cap must be nonnegative");
    GroundSet g(n);
    return SetFunctionOracle(g, "capped_cardinality(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")", d,
                             [d](SubsetMask x) { return value_of(std::min(x.cardinality(), d)); });
}

// The minimization hardness gadget: g_S(X) = 2k - |X| when X is a large
// subset of S (|X| >= k+1), and |X| otherwise. |S| must equal 2k.
inline SetFunctionOracle make_hardness_min(int n, int k, SubsetMask s) {
    if (k < 1 || 2 * k > n) throw std::invalid_argument("need 1 <= k <= n/2");
    GroundSet g(n);
    if (!g.contains(s)) throw std::invalid_argument("S outside ground set");
    if (s.cardinality() != 2 * k) throw std::invalid_argument("|S| must equal 2k");
    return SetFunctionOracle(g, "hardness_min(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",S=" + s.to_string() + ")",
                             n, [k, s](SubsetMask x) {
                                 if (x.subset_of(s) && x.cardinality() >= k + 1) return value_of(2 * k - x.cardinality());
                                 return value_of(x.cardinality());
                             });
}

// Bounded-range variant: base g is 0 at empty, |X| inside T, and
// |T| + |T & X| everywhere else; requires |T| = floor(d/2). The optional
// overlay S (a 2k-subset of T) patches in 2k - |X| on large subsets of S.
inline SetFunctionOracle make_hardness_min_bounded(int n, int d, SubsetMask t,
                                                   std::optional<SubsetMask> s_opt = std::nullopt) {
    if (d < 0) throw std::invalid_argument("range bound must be nonnegative");
    GroundSet g(n);
    if (!g.contains(t)) throw std::invalid_argument("T outside ground set");
    if (t.cardinality() != d / 2) throw std::invalid_argument("|T| must equal floor(d/2)");
    int k = 0;
    if (s_opt) {
        if (!s_opt->subset_of(t)) throw std::invalid_argument("S must be a subset of T");
        int sz = s_opt->cardinality();
        if (sz < 2 || sz % 2 != 0) throw std::invalid_argument("|S| must equal 2k for some k >= 1");
        k = sz / 2;
    }
    std::string kind = "hardness_min_bounded(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",T=" + t.to_string() +
                       (s_opt ? ",S=" + s_opt->to_string() : "") + ")";
    return SetFunctionOracle(g, kind, d, [t, s_opt, k](SubsetMask x) {
        if (s_opt && x.subset_of(*s_opt) && x.cardinality() >= k + 1) return value_of(2 * k - x.cardinality());
        if (x.empty()) return value_of(0);
        if (x.subset_of(t)) return value_of(x.cardinality());
        return value_of(t.cardinality() + (t & x).cardinality());
    });
}

// Maximization hardness gadget: cardinality capped at k (even n = 2k) or
// k+1 (odd n = 2k+1), with an optional single bumped set S.
inline SetFunctionOracle make_hardness_max(int n, std::optional<SubsetMask> s_opt = std::nullopt) {
    GroundSet g(n);
    const bool even = n % 2 == 0;
    const int k = n / 2;
    const int cap = even ? k : k + 1;  // g(X) = min(|X|, cap); bump value is cap + 1
    if (s_opt) {
        if (!g.contains(*s_opt)) throw std::invalid_argument("S outside ground set");
        if (s_opt->cardinality() < cap) throw std::invalid_argument("|S| too small for the bump to stay posimodular");
    }
    std::string kind = "hardness_max(n=" + std::to_string(n) + (s_opt ? ",S=" + s_opt->to_string() : "") + ")";
    return SetFunctionOracle(g, kind, cap + 1, [cap, s_opt](SubsetMask x) {
        if (s_opt && x == *s_opt) return value_of(cap + 1);
        return value_of(std::min(x.cardinality(), cap));
    });
}

// Small-range maximization gadget: g(X) = min(|X|, d-1) capped one below the
// range, with an optional bumped S of size >= n-d+1 where g_S(S) = d.
inline SetFunctionOracle make_hardness_max_smalld(int n, int d, std::optional<SubsetMask> s_opt = std::nullopt) {
    if (d < 1) throw std::invalid_argument("need d >= 1");
    if (n < 2 * d - 2) throw std::invalid_argument("need n >= 2d-2");
    GroundSet g(n);
    if (s_opt) {
        if (!g.contains(*s_opt)) throw std::invalid_argument("S outside ground set");
        if (s_opt->cardinality() < n - d + 1) throw std::invalid_argument("need |S| >= n-d+1");
    }
    std::string kind = "hardness_max_smalld(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                       (s_opt ? ",S=" + s_opt->to_string() : "") + ")";
    return SetFunctionOracle(g, kind, d, [d, s_opt](SubsetMask x) {
        if (s_opt && x == *s_opt) return value_of(d);
        int c = x.cardinality();
        return value_of(c <= d - 2 ? c : d - 1);
    });
}

// The nine-case function whose nontrivial semi-extreme sets all have size
// |S| or |S|-1. Range {0,...,7}; requires |S| >= 4.
inline SetFunctionOracle make_example1(int n, SubsetMask s) {
    GroundSet g(n);
    if (!g.contains(s)) throw std::invalid_argument("S outside ground set");
    if (s.cardinality() < 4) throw std::invalid_argument("need |S| >= 4");
    const int ssize = s.cardinality();
    return SetFunctionOracle(g, "example1(n=" + std::to_string(n) + ",S=" + s.to_string() + ")", 7,
                             [s, ssize](SubsetMask x) -> Value {
                                 const int in_s = (x & s).cardinality();
                                 const int card = x.cardinality();
                                 if (x.subset_of(s)) {
                                     if (card == 0 || card == ssize) return value_of(0);
                                     if (card == 1 || card == ssize - 1) return value_of(1);
                                     return value_of(2);
                                 }
                                 if (in_s == 0) return value_of(card == 1 ? 2 : 3);
                                 if (in_s == 1) return value_of(4);
                                 if (in_s == ssize) return value_of(7);
                                 if (in_s == ssize - 1) return value_of(6);
                                 return value_of(5);
                             });
}

// f(X) = total weight of edges with exactly one endpoint in X.
inline SetFunctionOracle make_cut_function(const WeightedGraph& graph) {
    GroundSet g(graph.n);
    long long total = graph.total_weight();
    if (total > (1LL << 40)) throw std::invalid_argument("total edge weight implausibly large");
    std::string kind = "cut_graph(n=" + std::to_string(graph.n) + ",m=" + std::to_string(graph.edges.size()) + ")";
    WeightedGraph gr = graph;
    return SetFunctionOracle(g, kind, static_cast<int>(total), [gr](SubsetMask x) {
        long long w = 0;
        for (const auto& e : gr.edges)
            if (x.contains(e.u) != x.contains(e.v)) w += e.weight;
        return value_of(w);
    });
}

// Random monotone function with range {0,...,d}: values are sampled per
// subset, then one sweep in increasing cardinality order raises each set to
// the max of its facets. Monotone plus f(empty) = 0 gives posimodularity.
// Fully determined by (n, d, seed); the raw engine output is reduced mod
// d+1 directly so the table does not depend on the platform's distribution
// implementation.
inline SetFunctionOracle make_random_monotone(int n, int d, std::uint64_t seed) {
    if (d < 0) throw std::invalid_argument("range bound must be nonnegative");
    GroundSet g(n);
    const std::uint32_t size = std::uint32_t{1} << n;
    std::vector<int> table(size, 0);
    std::mt19937_64 rng(seed);
    for (std::uint32_t m = 1; m < size; ++m) table[m] = static_cast<int>(rng() % static_cast<std::uint64_t>(d + 1));
    for (int card = 1; card <= n; ++card) {
        for_each_subset_of_size(n, card, [&](SubsetMask x) {
            int best = table[x.bits()];
            for (int v : x.elements()) best = std::max(best, table[x.without(v).bits()]);
            table[x.bits()] = best;
        });
    }
    std::string kind = "random_monotone(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")";
    return SetFunctionOracle(g, kind, d, [table = std::move(table)](SubsetMask x) { return value_of(table[x.bits()]); });
}

// Exact lower bound C(n, k+1) / C(2k, k+1) on the number of oracle calls any
// minimization algorithm needs to tell the cardinality function from every
// hardness_min overlay.
inline Value q_k_lower_bound(int n, int k) {
    if (k < 1 || 2 * k > n) throw std::invalid_argument("need 1 <= k <= n/2");
    if (n > 56) throw std::invalid_argument("n too large for exact 64-bit binomials");
    return Value(binomial(n, k + 1), binomial(2 * k, k + 1));
}

enum class Family {
    explicit_table,
    cut_graph,
    cardinality,
    hardness_min,
    hardness_min_bounded,
    hardness_max_even,
    hardness_max_odd,
    hardness_max_smalld,
    example1,
    random_monotone,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::explicit_table: return "explicit_table";
        case Family::cut_graph: return "cut_graph";
        case Family::cardinality: return "cardinality";
        case Family::hardness_min: return "hardness_min";
        case Family::hardness_min_bounded: return "hardness_min_bounded";
        case Family::hardness_max_even: return "hardness_max_even";
        case Family::hardness_max_odd: return "hardness_max_odd";
        case Family::hardness_max_smalld: return "hardness_max_smalld";
        case Family::example1: return "example1";
        case Family::random_monotone: return "random_monotone";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : {Family::explicit_table, Family::cut_graph, Family::cardinality, Family::hardness_min,
                     Family::hardness_min_bounded, Family::hardness_max_even, Family::hardness_max_odd,
                     Family::hardness_max_smalld, Family::example1, Family::random_monotone})
        if (name == family_name(f)) return f;
    return std::nullopt;
}

// Everything needed to rebuild one oracle deterministically. Two oracles
// built from equal descriptors agree on every subset.
struct InstanceDescriptor {
    Family family = Family::cardinality;
    int n = 1;
    std::optional<int> k;
    std::optional<int> d;
    std::optional<SubsetMask> s;
    std::optional<SubsetMask> t;
    std::optional<std::uint64_t> seed;
    std::vector<WeightedGraph::Edge> edges;
    std::vector<std::string> labels;

    // explicit_table payload: per-subset values plus an optional default for
    // subsets not listed.
    std::vector<std::pair<std::uint32_t, Value>> table_entries;
    std::optional<Value> table_default;
    std::optional<int> declared_range;  // explicit tables only

    SetFunctionOracle build() const {
        SetFunctionOracle oracle = build_family();
        // Generated families fix their own range; a declared bound may only
        // restate it.
        if (family != Family::explicit_table && declared_range && oracle.range_bound() &&
            *declared_range != *oracle.range_bound())
            throw std::invalid_argument("declared range_bound " + std::to_string(*declared_range) +
                                        " contradicts the family's range " + std::to_string(*oracle.range_bound()));
        return oracle;
    }

private:
    SetFunctionOracle build_family() const {
        switch (family) {
            case Family::cardinality:
                return make_cardinality(n);
            case Family::cut_graph:
                return make_cut_function(WeightedGraph(n, edges));
            case Family::hardness_min:
                if (!k || !s) throw std::invalid_argument("hardness_min needs k and S");
                return make_hardness_min(n, *k, *s);
            case Family::hardness_min_bounded:
                if (!d || !t) throw std::invalid_argument("hardness_min_bounded needs d and T");
                return make_hardness_min_bounded(n, *d, *t, s);
            case Family::hardness_max_even:
                if (n % 2 != 0) throw std::invalid_argument("hardness_max_even needs even n");
                return make_hardness_max(n, s);
            case Family::hardness_max_odd:
                if (n % 2 == 0) throw std::invalid_argument("hardness_max_odd needs odd n");
                return make_hardness_max(n, s);
            case Family::hardness_max_smalld:
                if (!d) throw std::invalid_argument("hardness_max_smalld needs d");
                return make_hardness_max_smalld(n, *d, s);
            case Family::example1:
                if (!s) throw std::invalid_argument("example1 needs S");
                return make_example1(n, *s);
            case Family::random_monotone:
                if (!d || !seed) throw std::invalid_argument("random_monotone needs d and seed");
                return make_random_monotone(n, *d, *seed);
            case Family::explicit_table:
                return build_table();
        }
        throw std::logic_error("unknown family");
    }

    SetFunctionOracle build_table() const {
        GroundSet g(n, labels);
        const std::uint32_t size = g.subset_count();
        std::vector<Value> table(size, table_default.value_or(Value(0)));
        std::vector<bool> given(size, false);
        for (const auto& [mask, value] : table_entries) {
            if (mask >= size) throw std::invalid_argument("table subset outside ground set");
            if (given[mask]) throw std::invalid_argument("duplicate table entry for subset");
            given[mask] = true;
            table[mask] = value;
        }
        if (!table_default) {
            for (std::uint32_t m = 0; m < size; ++m)
                if (!given[m])
                    throw std::invalid_argument("explicit table misses subset " + SubsetMask::of_bits(m).to_string() +
                                                " and declares no default value");
        }
        if (declared_range) {
            for (std::uint32_t m = 0; m < size; ++m)
                if (!is_integer(table[m]) || table[m] < Value(0) || table[m] > Value(*declared_range))
                    throw std::invalid_argument("table value " + format_value(table[m]) + " outside declared range {0,...," +
                                                std::to_string(*declared_range) + "}");
        }
        return SetFunctionOracle(g, "explicit_table(n=" + std::to_string(n) + ")", declared_range,
                                 [table = std::move(table)](SubsetMask x) { return table[x.bits()]; });
    }
};

// Ordered list of subsets some algorithm queried.
struct QueryTranscript {
    int n = 0;
    std::vector<SubsetMask> queries;

    QueryTranscript() = default;
    QueryTranscript(int ground_size, std::vector<SubsetMask> qs) : n(ground_size), queries(std::move(qs)) {
        GroundSet g(n);
        for (const auto& q : queries)
            if (!g.contains(q)) throw std::invalid_argument("transcript query outside ground set");
    }
};

// First S (|S| = 2k, ascending mask order) such that no queried X satisfies
// X subset of S with |X| >= k+1. Under such an S the cardinality function and
// the overlay g_S answer identically on the whole transcript. Returns nullopt
// when every candidate S is covered.
inline std::optional<SubsetMask> adversary_witness(const QueryTranscript& transcript, int n, int k) {
    if (k < 1 || 2 * k > n) throw std::invalid_argument("need 1 <= k <= n/2");
    if (transcript.n != n) throw std::invalid_argument("transcript ground size mismatch");
    // Only queries that could distinguish matter: k+1 <= |X| <= 2k.
    std::vector<SubsetMask> relevant;
    for (const auto& q : transcript.queries)
        if (q.cardinality() >= k + 1 && q.cardinality() <= 2 * k) relevant.push_back(q);
    std::optional<SubsetMask> witness;
    for_each_subset_of_size(n, 2 * k, [&](SubsetMask s) {
        if (witness) return;
        for (const auto& q : relevant)
            if (q.subset_of(s)) return;
        witness = s;
    });
    return witness;
}

}  // namespace posimod
