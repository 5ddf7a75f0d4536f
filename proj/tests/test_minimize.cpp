#include <catch2/catch_amalgamated.hpp>

#include <posimod/posimod.hpp>

#include "helpers.hpp"

using namespace posimod;
using testutil::make_table_oracle;

namespace {

SetFunctionOracle path_cut() { return make_cut_function(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}})); }

}  // namespace

TEST_CASE("brute_force_min") {
    auto card = brute_force_min(make_cardinality(5));
    REQUIRE(card.value == Value(1));
    REQUIRE(card.witness == SubsetMask::of({0}));

    SubsetMask s = SubsetMask::of({0, 1, 2, 3});
    auto gs = brute_force_min(make_hardness_min(8, 2, s));
    REQUIRE(gs.value == Value(0));
    REQUIRE(gs.witness == s);

    auto cut = brute_force_min(path_cut());
    REQUIRE(cut.value == Value(0));
    REQUIRE(cut.witness == SubsetMask::full(3));
    REQUIRE(cut.oracle_calls == 7);

    REQUIRE_THROWS_AS(brute_force_min(make_cardinality(22)), std::invalid_argument);
}

TEST_CASE("is_semi_extreme") {
    auto card = make_cardinality(6);
    REQUIRE(is_semi_extreme(card, SubsetMask::of({3})));
    REQUIRE_FALSE(is_semi_extreme(card, SubsetMask::of({1, 4})));

    SubsetMask s = SubsetMask::of({0, 1, 2, 3});
    REQUIRE(is_semi_extreme(make_example1(8, s), s));
    REQUIRE_THROWS_AS(is_semi_extreme(card, SubsetMask()), std::invalid_argument);
}

TEST_CASE("min_d_le_3 on the named examples") {
    auto cut = min_d_le_3(path_cut());
    REQUIRE(cut.value == Value(0));
    REQUIRE(cut.witness == SubsetMask::full(3));

    auto capped = min_d_le_3(make_capped_cardinality(6, 1));
    REQUIRE(capped.value == Value(1));
    REQUIRE(capped.witness.cardinality() == 1);

    REQUIRE_THROWS_AS(min_d_le_3(make_cardinality(6)), std::invalid_argument);  // d = 6
    auto unbounded = SetFunctionOracle(GroundSet(3), "nobound", std::nullopt, [](SubsetMask x) { return Value(x.cardinality()); });
    REQUIRE_THROWS_AS(min_d_le_3(unbounded), std::invalid_argument);
}

TEST_CASE("min_d_le_3 agrees with brute force on bounded instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto f = make_random_monotone(7, 3, seed);
        INFO(f.kind());
        REQUIRE(min_d_le_3(f).value == brute_force_min(f).value);
    }
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto f = make_random_monotone(9, 2, 100 + seed);
        REQUIRE(min_d_le_3(f).value == brute_force_min(f).value);
    }
}

TEST_CASE("min_d_le_3 stays within O(n^2) oracle calls") {
    for (int d = 1; d <= 3; ++d) {
        for (int n : {6, 10, 14}) {
            auto f = make_capped_cardinality(n, d);
            auto r = min_d_le_3(f);
            REQUIRE(r.oracle_calls <= 2 * n * n);
        }
    }
}

TEST_CASE("reachability") {
    auto capped = make_capped_cardinality(3, 2);
    auto table = reachability(capped, 2);
    for_each_nonempty_subset(3, [&](SubsetMask x) {
        if (x.cardinality() <= 2) REQUIRE(table.is_reachable(x));
    });
    REQUIRE(table.is_reachable(SubsetMask()));
    REQUIRE_FALSE(table.is_reachable(SubsetMask::full(3)));  // size d+1

    // f({a}) = 1, f({b}) = 0, f({a,b}) = 2: {b} is unreachable while the
    // larger {a,b} is reachable, so reachability is not downward closed.
    auto t = make_table_oracle(2, {0, 1, 0, 2}, 2);
    auto tab = reachability(t, 2);
    REQUIRE(tab.is_reachable(SubsetMask::of({0})));
    REQUIRE_FALSE(tab.is_reachable(SubsetMask::of({1})));
    REQUIRE(tab.is_reachable(SubsetMask::of({0, 1})));
}

TEST_CASE("reachability never queries past the range bound") {
    auto f = make_random_monotone(8, 3, 9);
    reachability(f, 3);
    long long expected = 1;  // empty set, via the normalization check
    for (int i = 1; i <= 3; ++i) expected += binomial(8, i);
    REQUIRE(f.call_count() == expected);
}

TEST_CASE("minimal_unreachable") {
    auto capped = make_capped_cardinality(3, 2);
    auto fam = minimal_unreachable(reachability(capped, 2), 3);
    REQUIRE(fam.members.size() == 1);
    REQUIRE(fam.members[0] == SubsetMask::full(3));

    // A zero-valued singleton is a minimal unreachable set.
    auto t = make_table_oracle(2, {0, 1, 0, 2}, 2);
    auto fam2 = minimal_unreachable(reachability(t, 2), 2);
    REQUIRE(fam2.members == std::vector<SubsetMask>{SubsetMask::of({1})});
    REQUIRE(t.evaluate(SubsetMask::of({1})) == Value(0));

    // Family members obey the size window and the facet inequality.
    for (std::uint64_t seed : {3ull, 14ull, 15ull}) {
        auto f = make_random_monotone(8, 3, seed);
        auto fam3 = minimal_unreachable(reachability(f, 3), 8);
        for (const auto& u : fam3.members) {
            REQUIRE(u.cardinality() >= 1);
            REQUIRE(u.cardinality() <= 4);
            if (u.cardinality() <= 3)
                for (int v : u.elements()) REQUIRE(f.evaluate(u) <= f.evaluate(u.without(v)));
        }
    }
}

TEST_CASE("min_posimodular on the named examples") {
    auto capped = min_posimodular(make_capped_cardinality(3, 2));
    REQUIRE(capped.value == Value(1));
    REQUIRE(capped.witness == SubsetMask::of({0}));

    SubsetMask s = SubsetMask::of({0, 1, 2, 3});
    auto ex1 = min_posimodular(make_example1(8, s));
    REQUIRE(ex1.value == Value(0));
    REQUIRE(ex1.witness == s);
    REQUIRE(ex1.witness == brute_force_min(make_example1(8, s)).witness);

    auto gs = min_posimodular(make_hardness_min(8, 2, s));
    REQUIRE(gs.value == Value(0));
    REQUIRE(gs.witness == s);

    auto unbounded = SetFunctionOracle(GroundSet(3), "nobound", std::nullopt, [](SubsetMask x) { return Value(x.cardinality()); });
    REQUIRE_THROWS_AS(min_posimodular(unbounded), std::invalid_argument);
}

TEST_CASE("min_posimodular degenerate inputs") {
    auto one = make_cardinality(1);
    auto r = min_posimodular(one);
    REQUIRE(r.witness == SubsetMask::of({0}));
    REQUIRE(r.value == Value(1));

    auto zero = SetFunctionOracle(GroundSet(4), "zero", 0, [](SubsetMask) { return Value(0); });
    auto rz = min_posimodular(zero);
    REQUIRE(rz.value == Value(0));
    REQUIRE(rz.witness == SubsetMask::of({0}));
}

TEST_CASE("min_posimodular agrees with brute force across the families") {
    std::vector<SetFunctionOracle> pool;
    for (std::uint64_t seed = 0; seed < 10; ++seed) pool.push_back(make_random_monotone(7, 4, seed));
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        pool.push_back(make_cut_function(testutil::random_connected_graph(7, 4, 3, seed)));
    pool.push_back(make_hardness_min(8, 2, SubsetMask::of({1, 2, 4, 6})));
    pool.push_back(make_hardness_min_bounded(8, 8, SubsetMask::of({0, 2, 4, 6}), SubsetMask::of({2, 4})));
    pool.push_back(make_example1(8, SubsetMask::of({0, 1, 2, 3, 4})));
    pool.push_back(make_capped_cardinality(8, 3));
    for (const auto& f : pool) {
        INFO(f.kind());
        REQUIRE(min_posimodular(f).value == brute_force_min(f).value);
    }
}

TEST_CASE("is_locally_minimal") {
    SubsetMask s = SubsetMask::of({0, 1, 2, 3});
    auto gs = make_hardness_min(8, 2, s);
    REQUIRE(is_locally_minimal(gs, s));
    REQUIRE_FALSE(is_locally_minimal(gs, SubsetMask::of({0, 1})));
    // Singletons never pass once f is normalized: that would need f < 0.
    REQUIRE_FALSE(is_locally_minimal(gs, SubsetMask::of({0})));
    REQUIRE_THROWS_AS(is_locally_minimal(gs, SubsetMask()), std::invalid_argument);
}

TEST_CASE("locally minimal minimizers satisfy phi") {
    for (std::uint64_t seed : {1ull, 8ull, 23ull}) {
        auto f = make_random_monotone(7, 3, seed);
        auto pipe = build_min_pipeline(f, 3);
        Value fmin = testutil::direct_min(f);
        for_each_nonempty_subset(7, [&](SubsetMask x) {
            if (f.evaluate(x) == fmin && x.cardinality() >= 2 && is_locally_minimal(f, x))
                REQUIRE(eval_cnf(pipe.phi, x));
        });
    }
}

TEST_CASE("semi-extreme sets never separate every minimizer") {
    for (auto f : {make_example1(7, SubsetMask::of({1, 2, 4, 5})), make_random_monotone(7, 3, 31),
                   make_cut_function(testutil::random_connected_graph(7, 3, 2, 8))}) {
        auto minimizers = testutil::direct_minimizers(f);
        for_each_nonempty_subset(f.n(), [&](SubsetMask x) {
            if (!is_semi_extreme(f, x)) return;
            bool compatible = false;
            for (const auto& y : minimizers)
                if (x.subset_of(y) || !x.intersects(y)) {
                    compatible = true;
                    break;
                }
            REQUIRE(compatible);
        });
    }
}

TEST_CASE("key lemma: a non-increasing extension pins s outside disjoint sets") {
    for (auto f : {make_random_monotone(6, 3, 4), make_example1(6, SubsetMask::of({0, 1, 3, 5}))}) {
        const int n = f.n();
        SubsetMask all = SubsetMask::full(n);
        for_each_subset(n, [&](SubsetMask x) {
            for (int sElem = 0; sElem < n; ++sElem) {
                if (x.contains(sElem)) continue;
                if (f.evaluate(x) < f.evaluate(x.with(sElem))) continue;
                SubsetMask rest = all - x;
                for_each_subset(n, [&](SubsetMask y) {
                    if (!y.subset_of(rest)) return;
                    REQUIRE(f.evaluate(y) >= f.evaluate(y.without(sElem)));
                });
            }
        });
    }
}

TEST_CASE("enumerate_all_minimizers emits exactly the minimizer family") {
    auto zero = SetFunctionOracle(GroundSet(3), "zero", 0, [](SubsetMask) { return Value(0); });
    REQUIRE(all_minimizers(zero).size() == 7);

    auto card = all_minimizers(make_cardinality(4));
    REQUIRE(card.size() == 4);
    for (const auto& m : card) REQUIRE(m.cardinality() == 1);

    auto cut = all_minimizers(path_cut());
    REQUIRE(cut == std::vector<SubsetMask>{SubsetMask::full(3)});

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto f = make_random_monotone(7, 3, seed);
        auto got = all_minimizers(f);
        auto want = testutil::direct_minimizers(f);
        std::sort(got.begin(), got.end());
        REQUIRE(got == want);  // same sets, no duplicates
    }
}

TEST_CASE("enumerate_all_minimizers respects the sink's stop signal") {
    auto zero = SetFunctionOracle(GroundSet(4), "zero", 0, [](SubsetMask) { return Value(0); });
    int seen = 0;
    long long emitted = enumerate_all_minimizers(zero, [&](SubsetMask) { return ++seen < 3; });
    REQUIRE(emitted == 3);
    REQUIRE(seen == 3);
}

TEST_CASE("compute_extreme_sets on the named examples") {
    auto cut_extreme = compute_extreme_sets(path_cut());
    REQUIRE(cut_extreme == std::vector<SubsetMask>{SubsetMask::of({0}), SubsetMask::of({1}), SubsetMask::of({2}),
                                                   SubsetMask::full(3)});
    REQUIRE(is_laminar(cut_extreme));

    auto card_extreme = compute_extreme_sets(make_cardinality(5));
    REQUIRE(card_extreme.size() == 5);
    for (const auto& x : card_extreme) REQUIRE(x.cardinality() == 1);
}

TEST_CASE("compute_extreme_sets matches the definitional family") {
    std::vector<SetFunctionOracle> pool;
    for (std::uint64_t seed = 0; seed < 8; ++seed) pool.push_back(make_random_monotone(7, 4, seed));
    for (std::uint64_t seed = 0; seed < 4; ++seed)
        pool.push_back(make_cut_function(testutil::random_connected_graph(7, 4, 3, 50 + seed)));
    pool.push_back(make_example1(8, SubsetMask::of({2, 3, 5, 7})));
    pool.push_back(make_hardness_min(8, 2, SubsetMask::of({0, 3, 5, 6})));
    for (const auto& f : pool) {
        INFO(f.kind());
        auto got = compute_extreme_sets(f);
        auto want = testutil::direct_extreme_sets(f);
        auto sorted = got;
        std::sort(sorted.begin(), sorted.end());
        std::sort(want.begin(), want.end());
        REQUIRE(sorted == want);
        REQUIRE(is_laminar(got));
    }
}

TEST_CASE("random posimodular tables: every optimizer agrees with brute force") {
    // Rejection-sampled exact tables; unlike the structured families these
    // are mostly neither monotone nor symmetric.
    std::mt19937_64 rng(424242);
    int found = 0;
    for (int trial = 0; trial < 120000 && found < 15; ++trial) {
        int n = 4 + static_cast<int>(rng() % 2);
        int d = 2 + static_cast<int>(rng() % 2);
        std::vector<long long> vals(std::size_t{1} << n, 0);
        for (std::size_t m = 1; m < vals.size(); ++m) vals[m] = static_cast<long long>(rng() % (d + 1));
        auto f = testutil::make_table_oracle(n, vals, d);
        if (verify_posimodular(f).has_value()) continue;
        ++found;
        INFO("n=" << n << " d=" << d << " trial=" << trial);
        Value bm = brute_force_min(f).value;
        REQUIRE(min_posimodular(testutil::make_table_oracle(n, vals, d)).value == bm);
        REQUIRE(min_d_le_3(testutil::make_table_oracle(n, vals, d)).value == bm);
        REQUIRE(max_posimodular(testutil::make_table_oracle(n, vals, d)).value == brute_force_max(f).value);
        auto got = compute_extreme_sets(testutil::make_table_oracle(n, vals, d));
        auto want = testutil::direct_extreme_sets(f);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        REQUIRE(got == want);
        auto mins = all_minimizers(testutil::make_table_oracle(n, vals, d));
        std::sort(mins.begin(), mins.end());
        REQUIRE(mins == testutil::direct_minimizers(f));
    }
    REQUIRE(found >= 10);
}

TEST_CASE("min_posimodular stays exact at n beyond the verify cap") {
    auto f = make_capped_cardinality(12, 3);
    REQUIRE(min_posimodular(f).value == brute_force_min(f).value);
    auto g = make_random_monotone(12, 2, 6);
    REQUIRE(min_posimodular(g).value == brute_force_min(g).value);
}

TEST_CASE("a loose but valid range bound keeps the algorithms exact") {
    auto f = SetFunctionOracle(GroundSet(6), "capped2_declared4", 4,
                               [](SubsetMask x) { return value_of(std::min(x.cardinality(), 2)); });
    REQUIRE(min_posimodular(f).value == Value(1));
    REQUIRE(max_posimodular(f).value == Value(2));
}

TEST_CASE("min_posimodular call count stays under its O(n^d) ceiling") {
    for (int d = 1; d <= 3; ++d) {
        for (int n : {6, 8, 10}) {
            auto f = make_capped_cardinality(n, d);
            auto r = min_posimodular(f);
            REQUIRE(r.oracle_calls <= min_posimodular_call_bound(n, d));
        }
    }
}
