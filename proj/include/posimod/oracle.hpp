#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subset.hpp"
#include "value.hpp"

namespace posimod {

// Default cap for the exhaustive structural verifiers (4^n pair scans).
inline constexpr int kDefaultVerifyCap = 12;

enum class Law { posimodular, submodular, monotone, symmetric };

inline const char* law_name(Law law) {
    switch (law) {
        case Law::posimodular: return "posimodular";
        case Law::submodular: return "submodular";
        case Law::monotone: return "monotone";
        case Law::symmetric: return "symmetric";
    }
    return "?";
}

// First failing instance of a structural law, with both sides as evaluated.
// Re-evaluating the oracle on x and y reproduces lhs < rhs.
struct ViolationWitness {
    SubsetMask x;
    SubsetMask y;
    Value lhs;
    Value rhs;
    Law law;
};

using VerifyResult = std::optional<ViolationWitness>;  // nullopt == Ok

// Maps a (possibly contracted) universe back to the original one: element i
// of the current universe expands to blocks[i], a nonempty subset of the
// original universe. Blocks are pairwise disjoint and cover the original
// universe, so composed contractions stay well defined.
class ContractionMap {
public:
    ContractionMap() = default;

    static ContractionMap identity(int n) {
        ContractionMap m;
        m.blocks_.reserve(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) m.blocks_.push_back(SubsetMask::single(v));
        return m;
    }

    explicit ContractionMap(std::vector<SubsetMask> blocks) : blocks_(std::move(blocks)) {
        SubsetMask seen;
        for (const auto& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("contraction block must be nonempty");
            if (b.intersects(seen)) throw std::invalid_argument("contraction blocks must be disjoint");
            seen = seen | b;
        }
    }

    int domain_size() const { return static_cast<int>(blocks_.size()); }

    const SubsetMask& block(int v) const { return blocks_.at(static_cast<std::size_t>(v)); }

    // Union of the blocks of x's members, in the original universe.
    SubsetMask expand(SubsetMask x) const {
        SubsetMask out;
        for (int v : x.elements()) {
            if (v >= domain_size()) throw std::invalid_argument("element outside contracted universe");
            out = out | blocks_[static_cast<std::size_t>(v)];
        }
        return out;
    }

    bool is_identity() const {
        for (int v = 0; v < domain_size(); ++v)
            if (blocks_[static_cast<std::size_t>(v)] != SubsetMask::single(v)) return false;
        return true;
    }

private:
    std::vector<SubsetMask> blocks_;
};

inline SubsetMask expand(const ContractionMap& map, SubsetMask x) { return map.expand(x); }

// outer maps universe B into universe A, inner maps universe C into B; the
// result maps C straight into A.
inline ContractionMap compose(const ContractionMap& outer, const ContractionMap& inner) {
    std::vector<SubsetMask> blocks;
    blocks.reserve(static_cast<std::size_t>(inner.domain_size()));
    for (int v = 0; v < inner.domain_size(); ++v) blocks.push_back(outer.expand(inner.block(v)));
    return ContractionMap(std::move(blocks));
}

// The one-step map produced by contracting s_block inside an n-element
// universe: surviving elements keep their relative order, the merged element
// goes last.
inline ContractionMap local_contraction_map(int n, SubsetMask s_block) {
    if (s_block.empty()) throw std::invalid_argument("contraction block must be nonempty");
    std::vector<SubsetMask> blocks;
    blocks.reserve(static_cast<std::size_t>(n - s_block.cardinality() + 1));
    for (int v = 0; v < n; ++v)
        if (!s_block.contains(v)) blocks.push_back(SubsetMask::single(v));
    blocks.push_back(s_block);
    return ContractionMap(std::move(blocks));
}

// A set function given by a value oracle. Copies share state: the memo cache
// and the call counter live on the root oracle, and wrappers built by
// normalize() or contract() delegate evaluation (and hence counting) to it.
// call_count() is the number of distinct subsets the root has evaluated; in
// raw-count mode every evaluation counts, cache hit or not.
class SetFunctionOracle {
public:
    SetFunctionOracle(GroundSet ground, std::string kind, std::optional<int> range_bound,
                      std::function<Value(SubsetMask)> fn)
        : state_(std::make_shared<State>()) {
        if (range_bound && *range_bound < 0) throw std::invalid_argument("range bound must be nonnegative");
        state_->ground = std::move(ground);
        state_->kind = std::move(kind);
        state_->range_bound = range_bound;
        state_->raw = std::move(fn);
        state_->map = ContractionMap::identity(state_->ground.n);
    }

    const GroundSet& ground() const { return state_->ground; }
    int n() const { return state_->ground.n; }
    const std::string& kind() const { return state_->kind; }
    std::optional<int> range_bound() const { return state_->range_bound; }

    // Partition of the original universe this oracle's elements stand for
    // (identity unless the oracle came out of contract()).
    const ContractionMap& universe_map() const { return state_->map; }

    Value evaluate(SubsetMask x) const {
        if (!state_->ground.contains(x)) throw std::invalid_argument("subset uses element index >= n");
        State* root = counting_root();
        if (root != state_.get()) return state_->raw(x);  // wrapper: root does the accounting
        std::lock_guard<std::mutex> lock(root->mu);
        if (root->count_raw) ++root->count;
        auto it = root->cache.find(x.bits());
        if (it != root->cache.end()) return it->second;
        Value v = root->raw(x);
        if (!root->count_raw) ++root->count;
        if (root->record) root->transcript.push_back(x);
        root->cache.emplace(x.bits(), v);
        return v;
    }

    Value operator()(SubsetMask x) const { return evaluate(x); }

    long long call_count() const {
        State* root = counting_root();
        std::lock_guard<std::mutex> lock(root->mu);
        return root->count;
    }

    // Raw-count mode: count every evaluation, cache hits included. Used by
    // the lower-bound experiments where deduplication would hide queries.
    void set_count_raw(bool on) const {
        State* root = counting_root();
        std::lock_guard<std::mutex> lock(root->mu);
        root->count_raw = on;
    }

    void record_queries(bool on) const {
        State* root = counting_root();
        std::lock_guard<std::mutex> lock(root->mu);
        root->record = on;
        if (!on) root->transcript.clear();
    }

    // Distinct subsets evaluated so far, in first-evaluation order (only
    // meaningful while record_queries(true) is active). Masks refer to the
    // root universe.
    std::vector<SubsetMask> recorded_queries() const {
        State* root = counting_root();
        std::lock_guard<std::mutex> lock(root->mu);
        return root->transcript;
    }

    friend SetFunctionOracle normalize(const SetFunctionOracle& f);
    friend std::pair<SetFunctionOracle, ContractionMap> contract(const SetFunctionOracle& f, SubsetMask s_block);

private:
    struct State {
        GroundSet ground;
        std::string kind;
        std::optional<int> range_bound;
        std::function<Value(SubsetMask)> raw;
        ContractionMap map;
        std::shared_ptr<State> count_root;  // null on root oracles
        mutable std::mutex mu;
        std::unordered_map<std::uint32_t, Value> cache;
        long long count = 0;
        bool count_raw = false;
        bool record = false;
        std::vector<SubsetMask> transcript;
    };

    State* counting_root() const {
        State* s = state_.get();
        while (s->count_root) s = s->count_root.get();
        return s;
    }

    explicit SetFunctionOracle(std::shared_ptr<State> st) : state_(std::move(st)) {}

    static SetFunctionOracle wrap(std::shared_ptr<State> st) { return SetFunctionOracle(std::move(st)); }

    std::shared_ptr<State> state_;
};

// [g(X) = f(X) - f(empty)] so that g(empty) = 0. Costs one evaluation of the
// empty set; everything else delegates to f.
inline SetFunctionOracle normalize(const SetFunctionOracle& f) {
    Value f0 = f.evaluate(SubsetMask());
    auto st = std::make_shared<SetFunctionOracle::State>();
    st->ground = f.ground();
    st->kind = f.kind() + (f0 == Value(0) ? "" : "|normalized");
    st->range_bound = f.range_bound();
    st->map = f.universe_map();
    st->count_root = f.state_->count_root ? f.state_->count_root : f.state_;
    SetFunctionOracle base = f;
    st->raw = [base, f0](SubsetMask x) { return base.evaluate(x) - f0; };
    return SetFunctionOracle::wrap(std::move(st));
}

// Contract s_block into one fresh element. Surviving elements keep their
// relative order; the new element is appended last. The returned map is the
// composition with any map already carried by f, so it always expands into
// the original universe.
inline std::pair<SetFunctionOracle, ContractionMap> contract(const SetFunctionOracle& f, SubsetMask s_block) {
    if (s_block.empty()) throw std::invalid_argument("contraction block must be nonempty");
    if (!f.ground().contains(s_block)) throw std::invalid_argument("contraction block outside ground set");

    const int n = f.n();
    const int n_out = n - s_block.cardinality() + 1;

    std::vector<int> survivors;
    survivors.reserve(static_cast<std::size_t>(n_out) - 1);
    for (int v = 0; v < n; ++v)
        if (!s_block.contains(v)) survivors.push_back(v);

    ContractionMap local_map = local_contraction_map(n, s_block);
    // Compose with f's own map so blocks land in the original universe.
    ContractionMap map = compose(f.universe_map(), local_map);

    GroundSet out_ground(n_out);
    if (!f.ground().labels.empty()) {
        std::vector<std::string> labels;
        labels.reserve(static_cast<std::size_t>(n_out));
        for (int v : survivors) labels.push_back(f.ground().labels[static_cast<std::size_t>(v)]);
        std::string merged;
        for (int v : s_block.elements()) {
            if (!merged.empty()) merged += "+";
            merged += f.ground().labels[static_cast<std::size_t>(v)];
        }
        labels.push_back(merged);
        out_ground = GroundSet(n_out, std::move(labels));
    }

    auto st = std::make_shared<SetFunctionOracle::State>();
    st->ground = std::move(out_ground);
    st->kind = f.kind() + "|contract" + s_block.to_string();
    st->range_bound = f.range_bound();
    st->map = map;
    st->count_root = f.state_->count_root ? f.state_->count_root : f.state_;
    SetFunctionOracle base = f;
    st->raw = [base, local_map](SubsetMask x) { return base.evaluate(local_map.expand(x)); };
    return {SetFunctionOracle::wrap(std::move(st)), map};
}

inline Value evaluate(const SetFunctionOracle& f, SubsetMask x) { return f.evaluate(x); }

namespace detail {

inline void check_verify_cap(const SetFunctionOracle& f, int cap) {
    if (f.n() > cap)
        throw std::invalid_argument("exhaustive verification refused: n = " + std::to_string(f.n()) +
                                    " exceeds cap " + std::to_string(cap));
}

// Dense table of all 2^n values; the pair scans below would hammer the memo
// map otherwise.
inline std::vector<Value> full_table(const SetFunctionOracle& f) {
    std::vector<Value> table;
    table.reserve(std::size_t{1} << f.n());
    for_each_subset(f.n(), [&](SubsetMask x) { table.push_back(f.evaluate(x)); });
    return table;
}

}  // namespace detail

// Checks f(X) + f(Y) >= f(X\Y) + f(Y\X) over all ordered pairs, reporting the
// first violation in lexicographic (X, Y) mask order.
inline VerifyResult verify_posimodular(const SetFunctionOracle& f, int cap = kDefaultVerifyCap) {
    detail::check_verify_cap(f, cap);
    auto table = detail::full_table(f);
    const std::uint32_t limit = std::uint32_t{1} << f.n();
    for (std::uint32_t x = 0; x < limit; ++x) {
        for (std::uint32_t y = 0; y < limit; ++y) {
            Value lhs = table[x] + table[y];
            Value rhs = table[x & ~y] + table[y & ~x];
            if (lhs < rhs)
                return ViolationWitness{SubsetMask::of_bits(x), SubsetMask::of_bits(y), lhs, rhs, Law::posimodular};
        }
    }
    return std::nullopt;
}

// Checks f(X) + f(Y) >= f(X&Y) + f(X|Y) over all ordered pairs.
inline VerifyResult verify_submodular(const SetFunctionOracle& f, int cap = kDefaultVerifyCap) {
    detail::check_verify_cap(f, cap);
    auto table = detail::full_table(f);
    const std::uint32_t limit = std::uint32_t{1} << f.n();
    for (std::uint32_t x = 0; x < limit; ++x) {
        for (std::uint32_t y = 0; y < limit; ++y) {
            Value lhs = table[x] + table[y];
            Value rhs = table[x & y] + table[x | y];
            if (lhs < rhs)
                return ViolationWitness{SubsetMask::of_bits(x), SubsetMask::of_bits(y), lhs, rhs, Law::submodular};
        }
    }
    return std::nullopt;
}

// Checks every covering pair (Y, Y | {v}); witness has x = the superset.
inline VerifyResult verify_monotone(const SetFunctionOracle& f, int cap = kDefaultVerifyCap) {
    detail::check_verify_cap(f, cap);
    auto table = detail::full_table(f);
    const std::uint32_t limit = std::uint32_t{1} << f.n();
    for (std::uint32_t y = 0; y < limit; ++y) {
        for (int v = 0; v < f.n(); ++v) {
            if ((y >> v) & 1u) continue;
            std::uint32_t x = y | (std::uint32_t{1} << v);
            if (table[x] < table[y])
                return ViolationWitness{SubsetMask::of_bits(x), SubsetMask::of_bits(y), table[x], table[y], Law::monotone};
        }
    }
    return std::nullopt;
}

// Checks f(X) = f(V\X). Scans nonempty X ascending, so the empty/full pair is
// covered once, at X = V; the witness puts the smaller value on the left.
inline VerifyResult verify_symmetric(const SetFunctionOracle& f, int cap = kDefaultVerifyCap) {
    detail::check_verify_cap(f, cap);
    auto table = detail::full_table(f);
    const std::uint32_t limit = std::uint32_t{1} << f.n();
    const std::uint32_t all = limit - 1;
    for (std::uint32_t x = 1; x < limit; ++x) {
        std::uint32_t c = all & ~x;
        if (table[x] != table[c]) {
            if (table[x] < table[c])
                return ViolationWitness{SubsetMask::of_bits(x), SubsetMask::of_bits(c), table[x], table[c], Law::symmetric};
            return ViolationWitness{SubsetMask::of_bits(c), SubsetMask::of_bits(x), table[c], table[x], Law::symmetric};
        }
    }
    return std::nullopt;
}

inline VerifyResult verify_law(const SetFunctionOracle& f, Law law, int cap = kDefaultVerifyCap) {
    switch (law) {
        case Law::posimodular: return verify_posimodular(f, cap);
        case Law::submodular: return verify_submodular(f, cap);
        case Law::monotone: return verify_monotone(f, cap);
        case Law::symmetric: return verify_symmetric(f, cap);
    }
    throw std::logic_error("unknown law");
}

}  // namespace posimod
