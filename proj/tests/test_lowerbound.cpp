#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cyc/lowerbound.hpp"
#include "cyc/random.hpp"
#include "support.hpp"

using namespace cyc;
using test::bipartite_without;

namespace {

CnfFormula formula(int n, std::vector<std::vector<int>> cl) {
    CnfFormula f;
    f.n = n;
    f.clauses = std::move(cl);
    return f;
}

}  // namespace

TEST_CASE("arrow") {
    Multigraph g(2);
    Arrow a = add_arrow(g, 0, 1);
    CHECK(g.n() == 9);
    CHECK(g.m() == 12);
    // every 2-set whose removal leaves the arrow bipartite
    std::vector<std::pair<int, int>> octs;
    CHECK_FALSE(bipartite_without(g, {}));
    for (int x = 0; x < 9; ++x) {
        CHECK_FALSE(bipartite_without(g, {x}));
        for (int y = x + 1; y < 9; ++y)
            if (bipartite_without(g, {x, y})) octs.push_back({x, y});
    }
    REQUIRE(octs.size() == 1);
    CHECK(std::set<int>{octs[0].first, octs[0].second} == std::set<int>{a.a[0], a.a[2]});
    CHECK(bipartite_without(g, {a.u, a.a[1], a.v}));
    CHECK_FALSE(bipartite_without(g, {a.u, a.a[1]}));
}

TEST_CASE("instance for a two-literal clause") {
    auto inst = build_instance(formula(2, {{1, -2}}));
    CHECK(inst.phi.n == 2);
    CHECK(inst.phi.rho() == 2);
    CHECK(inst.alpha == 18);
    CHECK(inst.A.size() == 19);
    CHECK(inst.B.size() == 19);
    int arrows = 0;
    for (const auto& copy : inst.arrows)
        for (const auto& cl : copy) arrows += static_cast<int>(cl.size());
    CHECK(arrows == 2 * 3);
}

TEST_CASE("odd variable counts are padded and unit clauses give triangles") {
    auto inst = build_instance(formula(1, {{1}}));
    CHECK(inst.phi.n == 2);
    for (const auto& copy : inst.cycle) {
        REQUIRE(copy.size() == 1);
        CHECK(copy[0].size() == 3);
    }
    CHECK_THROWS_AS(build_instance(formula(2, {})), StructureError);
    CHECK_THROWS_AS(build_instance(formula(2, {{1}, {}})), StructureError);
}

TEST_CASE("assignment to transversal") {
    auto inst = build_instance(formula(2, {{1, 2}, {2}}));
    auto t = construct_oct_from_assignment(inst, {true, true});
    CHECK(static_cast<long long>(t.size()) == inst.alpha);
    CHECK(bipartite_without(inst.g, t));
    CHECK_THROWS_AS(construct_oct_from_assignment(inst, {true, false}), StructureError);
}

TEST_CASE("random satisfiable formulas") {
    Rng rng(61);
    for (int it = 0; it < 20; ++it) {
        auto [phi, tau] = random_satisfiable_cnf(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4), 3);
        REQUIRE(satisfies(phi, tau));
        auto inst = build_instance(phi);
        const long long n = inst.phi.n, m = static_cast<long long>(inst.phi.clauses.size()), rho = inst.phi.rho();
        CHECK(n % 2 == 0);
        CHECK(inst.alpha == (n + 1) * (n * m + 2 * rho));
        CHECK(static_cast<long long>(inst.A.size()) == inst.alpha + 1);
        CHECK(static_cast<long long>(inst.B.size()) == inst.alpha + 1);
        long long arrows = 0;
        for (const auto& copy : inst.arrows)
            for (const auto& cl : copy)
                for (const auto& a : cl) {
                    ++arrows;
                    // the wiring: u-a1-a2-a3-v plus b_i over each path edge
                    const int path[5] = {a.u, a.a[0], a.a[1], a.a[2], a.v};
                    for (int i = 0; i < 4; ++i) {
                        int direct = 0, via = 0;
                        for (int e : inst.g.inc(path[i])) direct += inst.g.other(e, path[i]) == path[i + 1];
                        for (int e : inst.g.inc(a.b[i])) via += inst.g.other(e, a.b[i]) == path[i] || inst.g.other(e, a.b[i]) == path[i + 1];
                        CHECK(direct == 1);
                        CHECK(via == 2);
                        CHECK(inst.g.inc(a.b[i]).size() == 2);
                    }
                }
        CHECK(arrows == rho * (n + 1));
        for (const auto& copy : inst.cycle)
            for (const auto& c : copy) CHECK(c.size() % 2 == 1);

        auto t = construct_oct_from_assignment(inst, tau);
        CHECK(static_cast<long long>(t.size()) == inst.alpha);
        CHECK(bipartite_without(inst.g, t));
        // T is a vertex cover of every row path across all copies
        std::set<int> in_t(t.begin(), t.end());
        const int copies = static_cast<int>(inst.path.size());
        for (int i = 0; i < n; ++i) {
            std::vector<int> row;
            for (int k = 0; k < copies; ++k)
                for (int v : inst.path[k][i]) row.push_back(v);
            for (size_t j = 0; j + 1 < row.size(); ++j) CHECK((in_t.count(row[j]) || in_t.count(row[j + 1])));
        }

        auto e = emit_linear_kexpr(inst);
        CHECK(is_linear(e));
        CHECK(max_label_used(e) <= inst.label_budget());
        CHECK(eval_kexpr(e).g == inst.g);
        CHECK(eval_kexpr(normalize_kexpr(e)).g == inst.g);
    }
}

TEST_CASE("positive formulas accept the all-true assignment") {
    Rng rng(62);
    for (int it = 0; it < 5; ++it) {
        CnfFormula f = random_cnf(rng, 4, 3, 3);
        for (auto& c : f.clauses)
            for (auto& l : c) l = std::abs(l);
        auto inst = build_instance(f);
        auto t = construct_oct_from_assignment(inst, std::vector<bool>(inst.phi.n, true));
        CHECK(bipartite_without(inst.g, t));
    }
}

TEST_CASE("DIMACS") {
    auto f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3 0\n");
    CHECK(f.n == 3);
    CHECK(f.clauses == std::vector<std::vector<int>>{{1, -2}, {3}});
    auto g = parse_dimacs(write_dimacs(f));
    CHECK(g.n == f.n);
    CHECK(g.clauses == f.clauses);
    CHECK(parse_assignment("1 -2 3 0", 3) == std::vector<bool>{true, false, true});
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), ParseError);
}
