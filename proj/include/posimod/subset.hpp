#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace posimod {

// Library-wide cap on ground-set size: every algorithm here is exhaustive or
// O(n^d), and subsets must fit in one machine word.
inline constexpr int kMaxGroundSize = 24;

// A subset of {0, ..., n-1} in canonical bit-indexed form. The ground-set
// size is not stored; operations that need it (complement, full set) take it
// explicitly or live on GroundSet.
class SubsetMask {
public:
    constexpr SubsetMask() = default;

    static constexpr SubsetMask of_bits(std::uint32_t bits) { return SubsetMask(bits); }

    static SubsetMask single(int v) {
        check_element(v);
        return SubsetMask(std::uint32_t{1} << v);
    }

    static SubsetMask of(std::initializer_list<int> elems) {
        SubsetMask m;
        for (int v : elems) m = m.with(v);
        return m;
    }

    static SubsetMask from_elements(const std::vector<int>& elems) {
        SubsetMask m;
        for (int v : elems) m = m.with(v);
        return m;
    }

    static SubsetMask full(int n) {
        if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("ground-set size out of range");
        if (n == 0) return SubsetMask();
        return SubsetMask((std::uint32_t{1} << n) - 1);
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int cardinality() const { return std::popcount(bits_); }

    bool contains(int v) const { return v >= 0 && v < 32 && (bits_ >> v) & 1u; }

    SubsetMask with(int v) const {
        check_element(v);
        return SubsetMask(bits_ | (std::uint32_t{1} << v));
    }
    SubsetMask without(int v) const {
        check_element(v);
        return SubsetMask(bits_ & ~(std::uint32_t{1} << v));
    }

    constexpr bool subset_of(SubsetMask o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool proper_subset_of(SubsetMask o) const { return subset_of(o) && bits_ != o.bits_; }
    constexpr bool intersects(SubsetMask o) const { return (bits_ & o.bits_) != 0; }

    friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ | b.bits_); }
    friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & b.bits_); }
    // Set difference a \ b.
    friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(SubsetMask a, SubsetMask b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(SubsetMask a, SubsetMask b) { return a.bits_ != b.bits_; }
    // Lexicographic-by-mask order used by every deterministic tie-break.
    friend constexpr bool operator<(SubsetMask a, SubsetMask b) { return a.bits_ < b.bits_; }

    // Smallest element; only valid on nonempty masks.
    int first_element() const {
        if (empty()) throw std::logic_error("first_element of empty subset");
        return std::countr_zero(bits_);
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(cardinality()));
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : elements()) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

private:
    constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

    static void check_element(int v) {
        if (v < 0 || v >= kMaxGroundSize) throw std::invalid_argument("element index out of range: " + std::to_string(v));
    }

    std::uint32_t bits_ = 0;
};

// The universe V. Labels are optional display names for elements.
struct GroundSet {
    int n = 0;
    std::vector<std::string> labels;  // empty, or exactly n pairwise-distinct names

    GroundSet() = default;
    explicit GroundSet(int size, std::vector<std::string> names = {}) : n(size), labels(std::move(names)) {
        if (n < 1 || n > kMaxGroundSize) throw std::invalid_argument("ground-set size must be in [1, 24]");
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("label count differs from n");
            for (std::size_t i = 0; i < labels.size(); ++i)
                for (std::size_t j = i + 1; j < labels.size(); ++j)
                    if (labels[i] == labels[j]) throw std::invalid_argument("duplicate element label: " + labels[i]);
        }
    }

    SubsetMask all() const { return SubsetMask::full(n); }
    SubsetMask complement(SubsetMask x) const { return all() - x; }
    bool contains(SubsetMask x) const { return x.subset_of(all()); }
    std::uint32_t subset_count() const { return std::uint32_t{1} << n; }
};

// Iteration helpers used by every exhaustive scan in the library.

template <typename Fn>
void for_each_subset(int n, Fn&& fn) {
    std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t m = 0; m < limit; ++m) fn(SubsetMask::of_bits(m));
}

template <typename Fn>
void for_each_nonempty_subset(int n, Fn&& fn) {
    std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t m = 1; m < limit; ++m) fn(SubsetMask::of_bits(m));
}

// Masks of fixed cardinality k within {0..n-1}, in increasing numeric order
// (Gosper's hack).
template <typename Fn>
void for_each_subset_of_size(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(SubsetMask());
        return;
    }
    std::uint32_t limit = std::uint32_t{1} << n;
    std::uint32_t m = (std::uint32_t{1} << k) - 1;
    while (m < limit) {
        fn(SubsetMask::of_bits(m));
        std::uint32_t c = m & -m;
        std::uint32_t r = m + c;
        std::uint32_t next = (((r ^ m) >> 2) / c) | r;
        if (r >= limit || next == m) break;
        m = next;
    }
}

// All nonempty proper submasks of x, ascending by mask value.
template <typename Fn>
void for_each_proper_nonempty_submask(SubsetMask x, Fn&& fn) {
    std::uint32_t full = x.bits();
    if (full == 0) return;
    // Ascending enumeration: (s - full) & full steps through submasks.
    for (std::uint32_t s = (0u - full) & full; s != full && s != 0; s = (s - full) & full) fn(SubsetMask::of_bits(s));
}

inline long long binomial(int n, int r) {
    if (r < 0 || r > n || n < 0) return 0;
    if (r > n - r) r = n - r;
    long long acc = 1;
    for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
}

}  // namespace posimod
