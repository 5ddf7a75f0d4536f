#pragma once

// Small oracle builders and independent brute-force oracles shared by the
// unit and acceptance suites. Everything here computes straight from the
// definitions, without touching the algorithms under test.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <posimod/posimod.hpp>

namespace testutil {

using namespace posimod;

// Oracle over a dense table of integer values, empty set first.
inline SetFunctionOracle make_table_oracle(int n, std::vector<long long> values,
                                           std::optional<int> range_bound = std::nullopt,
                                           std::string kind = "table") {
    std::vector<Value> table;
    table.reserve(values.size());
    for (long long v : values) table.push_back(Value(v));
    return SetFunctionOracle(GroundSet(n), std::move(kind), range_bound,
                             [table = std::move(table)](SubsetMask x) { return table.at(x.bits()); });
}

// Connected random graph: a random spanning tree plus extra random edges,
// weights uniform in {1, ..., max_weight}.
inline WeightedGraph random_connected_graph(int n, int extra_edges, int max_weight, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<WeightedGraph::Edge> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(v));
        edges.push_back({u, v, static_cast<long long>(rng() % static_cast<std::uint64_t>(max_weight)) + 1});
    }
    for (int i = 0; i < extra_edges; ++i) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (u == v) continue;
        edges.push_back({u, v, static_cast<long long>(rng() % static_cast<std::uint64_t>(max_weight)) + 1});
    }
    return WeightedGraph(n, std::move(edges));
}

// Minimum over nonempty subsets, straight scan.
inline Value direct_min(const SetFunctionOracle& f) {
    bool set = false;
    Value best(0);
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
        Value v = f.evaluate(x);
        if (!set || v < best) {
            best = v;
            set = true;
        }
    });
    return best;
}

inline Value direct_max(const SetFunctionOracle& f) {
    bool set = false;
    Value best(0);
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
        Value v = f.evaluate(x);
        if (!set || v > best) {
            best = v;
            set = true;
        }
    });
    return best;
}

// All nonempty minimizers, ascending by mask.
inline std::vector<SubsetMask> direct_minimizers(const SetFunctionOracle& f) {
    Value best = direct_min(f);
    std::vector<SubsetMask> out;
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
        if (f.evaluate(x) == best) out.push_back(x);
    });
    return out;
}

// Extreme sets from the definition: every nonempty proper subset is strictly
// more expensive. O(3^n).
inline std::vector<SubsetMask> direct_extreme_sets(const SetFunctionOracle& f) {
    std::vector<SubsetMask> out;
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
        Value fx = f.evaluate(x);
        bool extreme = true;
        for_each_proper_nonempty_submask(x, [&](SubsetMask y) {
            if (extreme && f.evaluate(y) <= fx) extreme = false;
        });
        if (extreme) out.push_back(x);
    });
    return out;
}

// Maximal maximizers over nonempty subsets: maximizers no superset of which
// is a maximizer.
inline std::vector<SubsetMask> direct_maximal_maximizers(const SetFunctionOracle& f) {
    Value best = direct_max(f);
    std::vector<SubsetMask> out;
    for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
        if (f.evaluate(x) != best) return;
        for (int v = 0; v < f.n(); ++v)
            if (!x.contains(v) && f.evaluate(x.with(v)) == best) return;
        out.push_back(x);
    });
    return out;
}

}  // namespace testutil
