#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyc/random.hpp"
#include "cyc/tw.hpp"
#include "support.hpp"

using namespace cyc;
using test::coin;
using test::uni;

namespace {

const Problem kProblems[] = {Problem::SFVS, Problem::ECT, Problem::SOCT, Problem::SECT};

Multigraph cycle_graph(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// one bag holding everything
NiceTreeDecomposition one_bag(const Multigraph& g) {
    TreeDecomposition td;
    td.bags.push_back({});
    for (int v = 0; v < g.n(); ++v) td.bags[0].push_back(v);
    return nicify(td);
}

// path decomposition {i, i+1, n-1} for a cycle 0..n-1
NiceTreeDecomposition cycle_td(int n) {
    TreeDecomposition td;
    for (int i = 0; i + 2 < n; ++i) {
        td.bags.push_back({i, i + 1, n - 1});
        std::sort(td.bags.back().begin(), td.bags.back().end());
        if (i) td.tree_edges.push_back({i - 1, i});
    }
    return nicify(td);
}

Weight solve(const Multigraph& g, Problem p, bool prune = true) {
    TwOptions o;
    o.prune = prune;
    return solve_tw(g, one_bag(g), p, o).value;
}

}  // namespace

TEST_CASE("small examples") {
    CHECK(solve_tw(cycle_graph(4), cycle_td(4), Problem::ECT).value == 1);
    CHECK(solve_tw(cycle_graph(5), cycle_td(5), Problem::ECT).value == 0);

    Multigraph k4(4);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
    for (int v = 0; v < 4; ++v) k4.set_s(v);
    CHECK(solve(k4, Problem::SFVS) == 2);

    Multigraph c4 = cycle_graph(4);
    c4.set_s(0);
    c4.set_weight(0, 5);
    CHECK(solve_tw(c4, cycle_td(4), Problem::SECT).value == 1);

    test::Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        Multigraph g = test::small_graph(rng, uni(rng, 1, 8), 0.5, 2, 0.0);
        CHECK(solve(g, Problem::SOCT) == 0);
    }
}

TEST_CASE("single transitions") {
    SUBCASE("introduce then forget on an edgeless graph") {
        Multigraph g(1);
        g.set_weight(0, 3);
        auto r = solve_tw(g, one_bag(g), Problem::ECT, {true});
        CHECK(r.value == 0);
        CHECK(r.deleted.empty());
    }
    SUBCASE("forget with no neighbours in the bag") {
        Multigraph g(3);
        g.add_edge(0, 1);
        TreeDecomposition td;
        td.bags = {{0, 1}, {2}};
        td.tree_edges = {{0, 1}};
        CHECK(solve_tw(g, nicify(td), Problem::SOCT).value == 0);
    }
    SUBCASE("join of two empty sides") {
        Multigraph g(2);
        TreeDecomposition td;
        td.bags = {{}, {0}, {1}};
        td.tree_edges = {{0, 1}, {0, 2}};
        auto ntd = nicify(td);
        bool has_join = false;
        for (const auto& nd : ntd.nodes) has_join = has_join || nd.kind == NiceNode::Kind::Join;
        CHECK(has_join);
        CHECK(solve_tw(g, ntd, Problem::SFVS).value == 0);
    }
}

TEST_CASE("invalid input is rejected") {
    Multigraph g = cycle_graph(4);
    TreeDecomposition td;
    td.bags = {{0, 1}, {2, 3}};
    td.tree_edges = {{0, 1}};
    CHECK_THROWS_AS(check_nice(nicify(td), g), StructureError);
    CHECK_THROWS_AS(solve_tw(g, nicify(td), Problem::ECT), StructureError);
    CHECK_THROWS_AS(solve_tw(g, cycle_td(4), Problem::NMWC), StructureError);
}

TEST_CASE("matches exhaustive search on random 3-tree subgraphs") {
    Rng rng(7);
    for (Problem p : kProblems) {
        int checked = 0;
        for (int it = 0; it < 200; ++it) {
            RandomGraphOptions o;
            o.inf_prob = 0.15;
            auto inst = random_ktree_instance(rng, 1 + static_cast<int>(rng() % 10), 3, p, o);
            auto ntd = nicify(inst.td);
            const Weight want = test::exhaustive(inst.g, p);
            for (bool prune : {true, false}) {
                TwOptions opt;
                opt.witness = true;
                opt.prune = prune;
                auto r = solve_tw(inst.g, ntd, p, opt);
                INFO(std::string(problem_name(p)), " prune ", prune, "\n", write_graph(inst.g));
                CHECK(r.value == want);
                CHECK(test::weight_of(inst.g, r.deleted) == r.value);
                CHECK(test::cycle_free_by_enumeration(inst.g.remove_vertices(r.deleted), p));
                CHECK(r.stats.max_forest <= size_bound(p, ntd.width() + 1));
                ++checked;
            }
        }
        CHECK(checked == 400);
    }
}

TEST_CASE("OCT runs as SOCT with every vertex in S") {
    Rng rng(8);
    for (int it = 0; it < 100; ++it) {
        auto inst = random_ktree_instance(rng, 1 + static_cast<int>(rng() % 9), 3, Problem::OCT);
        CHECK(solve_tw(inst.g, nicify(inst.td), Problem::OCT).value == test::exhaustive(inst.g, Problem::OCT));
    }
}

TEST_CASE("a fresh isolated vertex does not change the optimum") {
    Rng rng(9);
    for (Problem p : kProblems)
        for (int it = 0; it < 60; ++it) {
            auto inst = random_ktree_instance(rng, 2 + static_cast<int>(rng() % 8), 3, p);
            const Weight before = solve_tw(inst.g, nicify(inst.td), p).value;
            Multigraph g = inst.g;
            const int v = g.add_vertex();
            g.set_s(v, coin(rng, 0.5));
            TreeDecomposition td = inst.td;
            td.bags.push_back({v});
            td.tree_edges.push_back({0, static_cast<int>(td.bags.size()) - 1});
            CHECK(solve_tw(g, nicify(td), p).value == before);
        }
}

TEST_CASE("parallel joins agree with serial ones") {
    Rng rng(10);
    for (Problem p : kProblems)
        for (int it = 0; it < 40; ++it) {
            auto inst = random_ktree_instance(rng, 10 + static_cast<int>(rng() % 20), 3, p);
            auto ntd = nicify(inst.td);
            TwOptions par;
            par.parallel = true;
            CHECK(solve_tw(inst.g, ntd, p, par).value == solve_tw(inst.g, ntd, p).value);
        }
}
