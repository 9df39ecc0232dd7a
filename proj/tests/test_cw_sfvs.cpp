#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cyc/cw_sfvs.hpp"
#include "cyc/random.hpp"
#include "support.hpp"

using namespace cyc;
using test::coin;
using test::uni;

namespace {

const char* kTriangle = "(j 1 2 (u (v 3 1) (r 1 2 (j 1 2 (u (v 1 1) (v 2 2))))))";
// C4 = K_{2,2} with sides {1,3} and {2,4}
const char* kC4 = "(j 1 2 (u (u (v 1 1) (v 3 1)) (u (v 2 2) (v 4 2))))";

CwResult run(const std::string& text, std::vector<Weight> w, std::vector<char> s, CwOptions o = {}) {
    return solve_sfvs_cw(prepare_sfvs_expression(parse_kexpr(text)), w, s, o);
}

Multigraph attributed(const CliqueExpression& e, const std::vector<Weight>& w, const std::vector<char>& s) {
    Multigraph g = eval_kexpr(e).g;
    for (int v = 0; v < g.n(); ++v) g.set_weight(v, w[v]), g.set_s(v, s[v]);
    return g;
}

int count_active(const Forest& f) {
    int c = 0;
    for (const auto& n : f.node) c += n.active();
    return c;
}

}  // namespace

TEST_CASE("small examples") {
    CHECK(run(kTriangle, {1, 1, 1}, {1, 0, 0}).value == 1);
    CHECK(run(kTriangle, {1, 1, 1}, {0, 0, 0}).value == 0);
    auto r = run(kC4, {1, 1, 1, kInf}, {1, 1, 1, 1}, {true});
    CHECK(r.value == 1);
    CHECK(r.deleted.size() == 1);
    CHECK(r.deleted[0] != 3);
}

TEST_CASE("reduce_cw") {
    SUBCASE("triangle with a labeled pendant") {
        FGraph g;
        for (int i = 0; i < 3; ++i) g.add_node(FNode{-1, false, Sym::None});
        int p = g.add_node(FNode{0, false, Sym::None});
        g.add_edge(0, 1, 0);
        g.add_edge(1, 2, 0);
        g.add_edge(2, 0, 0);
        g.add_edge(2, p, 0);
        Forest f = reduce_cw(g);
        REQUIRE(f.size() == 1);
        CHECK(f.node[0].vid == 0);
    }
    SUBCASE("S-marked interior of a path") {
        FGraph g;
        g.add_node(FNode{0, false, Sym::None});
        g.add_node(FNode{-1, true, Sym::None});
        g.add_node(FNode{-1, false, Sym::None});
        g.add_node(FNode{1, false, Sym::None});
        for (int i = 0; i < 3; ++i) g.add_edge(i, i + 1, 0);
        Forest f = reduce_cw(g);
        REQUIRE(f.size() == 3);
        int mid = -1;
        for (int i = 0; i < 3; ++i)
            if (!f.node[i].active()) mid = i;
        REQUIRE(mid >= 0);
        CHECK(f.node[mid].s);
    }
    SUBCASE("cycle through labeled vertices becomes a star") {
        FGraph g;
        for (int i = 0; i < 4; ++i) g.add_node(FNode{i < 2 ? i : -1, false, Sym::None});
        for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4, 0);
        Forest f = reduce_cw(g);
        // the centre has degree 2 once the unlabeled leaves go
        CHECK(f.size() == 2);
        CHECK(count_active(f) == 2);
    }
    SUBCASE("reduced input is unchanged") {
        FGraph g;
        g.add_node(FNode{0, false, Sym::None});
        g.add_node(FNode{1, true, Sym::None});
        g.add_edge(0, 1, 0);
        Forest f = reduce_cw(g);
        Forest again = reduce_cw(to_fgraph(f));
        CHECK(canonical_encode(again) == canonical_encode(f));
        CHECK(f.size() == 2);
    }
}

TEST_CASE("transitions seen through root states") {
    CwOptions keep;
    keep.keep_root = true;
    SUBCASE("join with an empty side keeps the state") {
        // label 2 is empty when joined
        auto r = solve_sfvs_cw(parse_kexpr("(j 1 2 (v 1 1))"), {4}, {1}, keep);
        std::set<std::string> got;
        for (const auto& st : r.root_states) got.insert(std::string(lstate_name(st.P[0])) + lstate_name(st.P[1]));
        CHECK(got.count("Q1*Q0"));
        CHECK(got.count("Q0Q0"));
    }
    SUBCASE("rename merges two disconnected singletons into a starred hub") {
        auto r = solve_sfvs_cw(parse_kexpr("(r 1 2 (u (v 1 1) (v 2 2)))"), {1, 1}, {1, 1}, keep);
        bool hub = false;
        for (const auto& st : r.root_states)
            if (st.value == 0 && st.P[1] == LState::Qws) {
                hub = true;
                CHECK(st.P[0] == LState::Empty);
                CHECK(count_active(st.f) == 1);
            }
        CHECK(hub);
    }
    SUBCASE("union over disjoint label halves adds values") {
        auto r = solve_sfvs_cw(prepare_sfvs_expression(parse_kexpr("(u (v 1 1) (v 2 1))")), {2, 3}, {0, 0}, keep);
        std::set<Weight> vals;
        for (const auto& st : r.root_states) vals.insert(st.value);
        CHECK(vals.count(5));
        CHECK(vals.count(0));
    }
}

TEST_CASE("malformed expressions are refused") {
    CHECK_THROWS_AS(check_sfvs_expression(parse_kexpr("(j 1 2 (j 1 2 (u (v 1 1) (v 2 2))))")), StructureError);
    CHECK_THROWS_AS(check_sfvs_expression(parse_kexpr("(u (v 1 1) (v 2 1))")), StructureError);
    CHECK_NOTHROW(check_sfvs_expression(prepare_sfvs_expression(parse_kexpr("(u (v 1 1) (v 2 1))"))));
}

TEST_CASE("multiway cut examples") {
    auto nm = [](const std::string& text, const std::vector<int>& terms) {
        auto e = parse_kexpr(text);
        Multigraph g = eval_kexpr(e).g;
        for (int t : terms) g.set_terminal(t);
        auto ni = transform_nmwc(g, e);
        return solve_sfvs_cw(prepare_sfvs_expression(ni.e), ni.weights, ni.s).value;
    };
    const char* path = "(j 1 2 (u (v 3 1) (r 1 2 (j 1 2 (u (v 1 1) (v 2 2))))))";
    CHECK(nm(path, {}) == 0);
    // a-b-c built as b joined to {a, c}
    CHECK(nm("(j 1 2 (u (v 2 2) (u (v 1 1) (v 3 1))))", {0, 2}) == 1);
    // adjacent terminals cannot be separated
    CHECK(nm(kTriangle, {0, 1}) == kInf);
    CHECK(nm(kC4, {0, 2}) == 2);
}

TEST_CASE("matches exhaustive search") {
    Rng rng(11);
    int n_sfvs = 0;
    for (int it = 0; it < 300; ++it) {
        const int n = 1 + static_cast<int>(rng() % 10), k = 1 + static_cast<int>(rng() % 3);
        auto e = random_kexpr(rng, n, k);
        std::vector<Weight> w(n);
        std::vector<char> s(n);
        for (int v = 0; v < n; ++v) w[v] = coin(rng, 0.1) ? kInf : uni(rng, 1, 3), s[v] = coin(rng, 0.35);
        Multigraph g = attributed(e, w, s);
        CwOptions o;
        o.witness = true;
        auto r = solve_sfvs_cw(prepare_sfvs_expression(e), w, s, o);
        INFO(write_kexpr(e));
        CHECK(r.value == test::exhaustive(g, Problem::SFVS));
        if (r.value != kInf) {
            CHECK(test::weight_of(g, r.deleted) == r.value);
            CHECK(test::cycle_free_by_enumeration(g.remove_vertices(r.deleted), Problem::SFVS));
        }
        CHECK(r.max_forest <= size_bound(Problem::SFVS, 2 * k));
        ++n_sfvs;
    }
    CHECK(n_sfvs == 300);
}

TEST_CASE("multiway cut matches exhaustive search") {
    Rng rng(12);
    for (int it = 0; it < 150; ++it) {
        const int n = 1 + static_cast<int>(rng() % 9), k = 1 + static_cast<int>(rng() % 3);
        auto e = random_kexpr(rng, n, k);
        Multigraph g = eval_kexpr(e).g;
        for (int v = 0; v < n; ++v) {
            g.set_weight(v, uni(rng, 1, 3));
            g.set_terminal(v, coin(rng, 0.3));
        }
        auto ni = transform_nmwc(g, e);
        CHECK(ni.sink == n);
        CHECK(ni.e.k == 2 * k + 1);
        CHECK(solve_sfvs_cw(prepare_sfvs_expression(ni.e), ni.weights, ni.s).value == test::exhaustive(g, Problem::NMWC));
    }
}

TEST_CASE("root states are admissible and keep representatives where the guess needs one") {
    Rng rng(13);
    int audited = 0;
    for (int it = 0; it < 150; ++it) {
        const int n = 1 + static_cast<int>(rng() % 7), k = 1 + static_cast<int>(rng() % 3);
        auto e = prepare_sfvs_expression(random_kexpr(rng, n, k));
        std::vector<Weight> w(n);
        std::vector<char> s(n);
        for (int v = 0; v < n; ++v) w[v] = uni(rng, 1, 3), s[v] = coin(rng, 0.4);
        CwOptions o;
        o.keep_root = true;
        o.witness = true;
        auto r = solve_sfvs_cw(e, w, s, o);
        LabeledGraph lg = eval_kexpr(e);
        for (int v = 0; v < n; ++v) lg.g.set_weight(v, w[v]), lg.g.set_s(v, s[v]);
        for (const auto& st : r.root_states) {
            // labels with a representative in the forest
            std::set<int> reps, want;
            for (const auto& nd : st.f.node)
                if (nd.active()) reps.insert(nd.vid);
            for (int i = 0; i < e.k; ++i)
                if (st.P[i] != LState::Empty && st.P[i] != LState::Qf) want.insert(i);
            CHECK(reps == want);
            CHECK(test::weight_of(lg.g, st.deleted) == st.value);
            // G~ = G - U with the surviving labels
            std::vector<int> keep;
            std::vector<char> gone(n, 0);
            for (int v : st.deleted) gone[v] = 1;
            for (int v = 0; v < n; ++v)
                if (!gone[v]) keep.push_back(v);
            LabeledGraph gt;
            gt.g = lg.g.induced(keep);
            for (int v : keep) gt.label.push_back(lg.label[v]);
            CHECK(compatible(gt, st.P));
            LabeledGraph h = auxiliary_graph(gt, st.P);
            CHECK(test::cycle_free_by_enumeration(h.g, Problem::SFVS));
            ++audited;
        }
    }
    CHECK(audited > 300);
}

TEST_CASE("parallel unions agree with serial ones") {
    Rng rng(14);
    for (int it = 0; it < 40; ++it) {
        const int n = 5 + static_cast<int>(rng() % 20), k = 1 + static_cast<int>(rng() % 3);
        auto e = prepare_sfvs_expression(random_kexpr(rng, n, k));
        std::vector<Weight> w(n, 1);
        std::vector<char> s(n);
        for (int v = 0; v < n; ++v) s[v] = coin(rng, 0.4);
        CwOptions par;
        par.parallel = true;
        CHECK(solve_sfvs_cw(e, w, s, par).value == solve_sfvs_cw(e, w, s).value);
    }
}
