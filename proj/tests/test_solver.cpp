#include <catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "kcut/errors.hpp"
#include "kcut/oracles.hpp"
#include "kcut/solver.hpp"
#include "kcut/tree_packing.hpp"

using namespace kcut;

namespace {
SolverConfig exhaustive() {
    SolverConfig c;
    c.trial.exhaustive = true;
    c.threads = 1;
    return c;
}

void check_feasible(const MultiGraph& g, const KCutSolution& s, int k) {
    REQUIRE(s.partition.k() == k);
    REQUIRE_NOTHROW(s.partition.block_of(g.num_vertices()));
    CHECK(s.value == cut_value(g, s.partition));
    CHECK(s.cut_edges == cut_edges(g, s.partition));
}
}  // namespace

TEST_CASE("nontrivial bound") {
    CHECK(nontrivial_bound(testutil::cycle(5), 2) == 8);
    MultiGraph cubic = testutil::complete(4);
    CHECK(nontrivial_bound(cubic, 2) == 12);
    CHECK(nontrivial_bound(testutil::complete(5), 3) == 36);
    CHECK(nontrivial_bound(MultiGraph(3), 2) == 0);
}

TEST_CASE("solver examples") {
    MultiGraph g = testutil::complete(5);
    KCutSolution one = min_kcut(g, 1);
    CHECK(one.value == 0);
    CHECK(one.partition.k() == 1);
    MultiGraph star = MultiGraph::from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(min_kcut(star, 3).value == 2);
    MultiGraph twin = testutil::twin_cliques(4, 1);
    KCutSolution b = min_kcut(twin, 2);
    CHECK(b.value == 1);
    CHECK(b.partition.blocks == std::vector<std::vector<Vertex>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK_THROWS_AS(min_kcut(g, 6), InfeasibleError);
    CHECK(min_kcut(g, 5).value == 10);
}

TEST_CASE("solver modes") {
    MultiGraph twin = testutil::twin_cliques(4, 1);
    SolverConfig cfg;
    cfg.mode = SolverMode::treecut_only;
    CHECK(min_kcut(twin, 2, cfg).value == 1);
    cfg.mode = SolverMode::oracle_only;
    KCutSolution o = min_kcut(twin, 2, cfg);
    CHECK(o.value == 1);
    CHECK(o.provenance == "oracle");
    CHECK_THROWS_AS(min_kcut(testutil::complete(12), 2, cfg), BudgetError);
}

TEST_CASE("disconnected inputs") {
    MultiGraph g = MultiGraph::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(min_kcut(g, 2).value == 0);
    CHECK(min_kcut(g, 3).value == 2);
    auto trees = pack_trees(g, 2);
    REQUIRE(trees.size() == 2);
    int virtual_edges = 0;
    for (const Edge& e : trees[0].edges()) virtual_edges += e.id < 0;
    CHECK(virtual_edges == 1);
}

TEST_CASE("sparsification gate fires on dense graphs and keeps the answer") {
    // Two K100s joined by 3 bridges: min degree 99 exceeds 4 * max(4 ln 200, 8).
    MultiGraph g = testutil::twin_cliques(100, 3);
    SolverStats st;
    KCutSolution s = min_kcut(g, 2, {}, &st);
    CHECK(st.sparsified);
    CHECK(st.ni_edges > 0);
    CHECK_FALSE(st.kt_iterations.empty());
    CHECK(s.value == 3);
    check_feasible(g, s, 2);
}

TEST_CASE("property: solver output is feasible and never beats the oracle") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 60; ++it) {
        int n = 3 + static_cast<int>(rng() % 7);
        MultiGraph g = testutil::random_connected(n, static_cast<int>(rng() % 14), it % 2 == 1, rng);
        int k = 2 + static_cast<int>(rng() % std::min(3, n - 1));
        SolverConfig cfg;
        cfg.trial.seed = it;
        KCutSolution s = min_kcut(g, k, cfg);
        check_feasible(g, s, k);
        CHECK(s.value >= brute_min_kcut(g, k).value);
    }
}

TEST_CASE("property: exhaustive solver is exact when a tight tree or a singleton optimum exists") {
    std::mt19937_64 rng(62);
    int triggered = 0;
    for (int it = 0; it < 60; ++it) {
        int n = 3 + static_cast<int>(rng() % 7);
        MultiGraph g = testutil::random_connected(n, static_cast<int>(rng() % 14), it % 2 == 0, rng);
        int k = 2 + static_cast<int>(rng() % std::min(2, n - 1));
        SolverStats st;
        KCutSolution s = min_kcut(g, k, exhaustive(), &st);
        KCutSolution opt = brute_min_kcut(g, k);
        bool trivial = false;
        for (const auto& b : opt.partition.blocks) trivial = trivial || b.size() == 1;
        bool tight = false;
        for (const auto& t : st.top_trees) tight = tight || is_tight(t, opt.partition);
        if (!trivial && !tight) continue;
        ++triggered;
        INFO("it=" << it);
        REQUIRE(s.value == opt.value);
    }
    CHECK(triggered > 50);
}

TEST_CASE("property: answers do not depend on the worker count") {
    std::mt19937_64 rng(63);
    for (int it = 0; it < 10; ++it) {
        MultiGraph g = testutil::random_connected(9, 12, true, rng);
        SolverConfig a, b;
        a.threads = 1;
        b.threads = 4;
        KCutSolution x = min_kcut(g, 3, a), y = min_kcut(g, 3, b);
        CHECK(x.value == y.value);
        CHECK(x.partition.blocks == y.partition.blocks);
        CHECK(x.provenance == y.provenance);
    }
}
