#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "subset.hpp"

namespace posimod {

// Disjunction of literals: positive over P, negated over N. P and N are
// disjoint and not both empty.
struct Clause {
    SubsetMask positives;
    SubsetMask negatives;

    Clause(SubsetMask p, SubsetMask n) : positives(p), negatives(n) {
        if (p.intersects(n)) throw std::invalid_argument("clause with P(c) and N(c) overlapping");
        if (p.empty() && n.empty()) throw std::invalid_argument("empty clause");
    }
};

enum class CnfForm { dual_horn, definite_horn, general };

struct HornCnf {
    std::vector<Clause> clauses;
    CnfForm form = CnfForm::general;

    HornCnf() = default;
    HornCnf(std::vector<Clause> cs, CnfForm f) : clauses(std::move(cs)), form(f) {
        for (const auto& c : clauses) {
            if (f == CnfForm::dual_horn && c.negatives.cardinality() > 1)
                throw std::invalid_argument("dual-Horn clause with more than one negative literal");
            if (f == CnfForm::definite_horn && c.positives.cardinality() != 1)
                throw std::invalid_argument("definite-Horn clause must have exactly one positive literal");
        }
    }
};

// True iff every clause has a positive literal inside the assignment or a
// negative literal outside it.
inline bool eval_cnf(const HornCnf& cnf, SubsetMask assignment) {
    for (const auto& c : cnf.clauses) {
        if (c.positives.intersects(assignment)) continue;
        if (!c.negatives.subset_of(assignment)) continue;
        return false;
    }
    return true;
}

// Swap P and N in every clause. Turns the dual-Horn CNF phi(x) into the
// definite-Horn CNF phi(~x): eval_cnf(out, X) == eval_cnf(in, V\X).
inline HornCnf complement_cnf(const HornCnf& cnf) {
    if (cnf.form != CnfForm::dual_horn) throw std::invalid_argument("complement_cnf expects a dual-Horn CNF");
    std::vector<Clause> out;
    out.reserve(cnf.clauses.size());
    for (const auto& c : cnf.clauses) {
        if (c.negatives.cardinality() != 1)
            throw std::invalid_argument("clause without a negative literal cannot become definite Horn");
        out.emplace_back(c.negatives, c.positives);
    }
    return HornCnf(std::move(out), CnfForm::definite_horn);
}

// Forward chaining: the least fixed point Q >= seed under firing definite
// clauses with N(c) <= Q and P(c) disjoint from Q. Fire order does not affect
// the result; the queue keyed by negative-literal membership keeps each seed
// at O(total literal count).
inline SubsetMask fcp(const HornCnf& cnf, SubsetMask seed) {
    if (cnf.form != CnfForm::definite_horn) throw std::invalid_argument("fcp expects a definite-Horn CNF");

    const std::size_t m = cnf.clauses.size();
    std::vector<int> pending(m);           // negatives not yet in Q
    std::vector<std::vector<std::uint32_t>> watch(kMaxGroundSize);
    std::vector<std::uint32_t> ready;

    SubsetMask q = seed;
    for (std::uint32_t i = 0; i < m; ++i) {
        const Clause& c = cnf.clauses[i];
        pending[i] = (c.negatives - q).cardinality();
        for (int v : (c.negatives - q).elements()) watch[static_cast<std::size_t>(v)].push_back(i);
        if (pending[i] == 0) ready.push_back(i);
    }
    while (!ready.empty()) {
        std::uint32_t i = ready.back();
        ready.pop_back();
        const Clause& c = cnf.clauses[i];
        if (c.positives.intersects(q)) continue;
        int added = c.positives.first_element();  // definite: exactly one positive
        q = q.with(added);
        for (std::uint32_t j : watch[static_cast<std::size_t>(added)]) {
            if (--pending[j] == 0) ready.push_back(j);
        }
    }
    return q;
}

// The dual-Horn CNF built from a family of minimal unreachable sets: one
// clause (OR of x_u over U\{s}) or ~x_s per member U and element s in U. A
// singleton member yields the unit clause ~x_s.
inline HornCnf build_phi(const std::vector<SubsetMask>& unreachable, int n) {
    std::vector<Clause> clauses;
    for (const auto& u : unreachable) {
        if (u.empty()) throw std::invalid_argument("unreachable family member must be nonempty");
        if (!u.subset_of(SubsetMask::full(n))) throw std::invalid_argument("unreachable member outside ground set");
        for (int s : u.elements()) clauses.emplace_back(u.without(s), SubsetMask::single(s));
    }
    return HornCnf(std::move(clauses), CnfForm::dual_horn);
}

// {fcp(cnf, T) : |T| <= d}, deduplicated, in lexicographic seed order (first
// seed that produces each closure wins). Every satisfying assignment of a
// definite-Horn CNF arising from a range-d unreachable family shows up here.
inline std::vector<SubsetMask> enumerate_closures(const HornCnf& cnf, int n, int d) {
    if (cnf.form != CnfForm::definite_horn) throw std::invalid_argument("enumerate_closures expects definite Horn");
    if (d < 0) throw std::invalid_argument("seed size bound must be nonnegative");
    std::vector<SubsetMask> out;
    std::unordered_set<std::uint32_t> seen;
    for_each_subset(n, [&](SubsetMask seed) {
        if (seed.cardinality() > d) return;
        SubsetMask closure = fcp(cnf, seed);
        if (seen.insert(closure.bits()).second) out.push_back(closure);
    });
    return out;
}

// One clause per line, literals 1-indexed, negative literals negated,
// 0-terminated. Debug aid only.
inline std::string to_dimacs(const HornCnf& cnf, int n) {
    std::string s = "p cnf " + std::to_string(n) + " " + std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& c : cnf.clauses) {
        for (int v : c.positives.elements()) s += std::to_string(v + 1) + " ";
        for (int v : c.negatives.elements()) s += "-" + std::to_string(v + 1) + " ";
        s += "0\n";
    }
    return s;
}

}  // namespace posimod
