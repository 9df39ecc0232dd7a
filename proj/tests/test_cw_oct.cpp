#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyc/cw_oct.hpp"
#include "cyc/random.hpp"
#include "support.hpp"

using namespace cyc;
using test::coin;
using test::uni;

namespace {

// the order written out by hand: 0 below everything, 3 above everything
bool my_leq(int a, int b) { return a == b || a == 0 || b == 3; }

bool vec_leq(int x, int y, int k) {
    for (int i = 0; i < k; ++i)
        if (!my_leq(x >> (2 * i) & 3, y >> (2 * i) & 3)) return false;
    return true;
}

OctTable naive_zeta(const OctTable& t, int k) {
    const int N = 1 << (2 * k);
    OctTable out(N, kInf);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            if (vec_leq(y, x, k)) out[x] = std::min(out[x], t[y]);
    return out;
}

OctTable random_table(test::Rng& rng, int k) {
    OctTable t(1u << (2 * k));
    for (auto& x : t) x = coin(rng, 0.2) ? kInf : uni(rng, 0, 20);
    return t;
}

OctResult solve(const std::string& text, std::vector<Weight> w, bool witness = false) {
    OctOptions o;
    o.witness = witness;
    return solve_oct_cw(parse_kexpr(text), w, o);
}

bool two_coloured(const Multigraph& g, const OctResult& r) {
    std::vector<int> side(g.n(), -1);
    for (int v : r.side_a) side[v] = 0;
    for (int v : r.side_b) side[v] = 1;
    for (int v : r.deleted)
        if (side[v] != -1) return false;
    for (int v = 0; v < g.n(); ++v)
        if (side[v] == -1 && !std::count(r.deleted.begin(), r.deleted.end(), v)) return false;
    for (auto [u, v] : g.edges())
        if (side[u] != -1 && side[u] == side[v]) return false;
    return true;
}

}  // namespace

TEST_CASE("poset") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK(poset::leq(a, b) == my_leq(a, b));
            const int s = poset::sup(a, b), i = poset::inf_elem(a, b);
            CHECK(my_leq(a, s));
            CHECK(my_leq(b, s));
            CHECK(my_leq(i, a));
            CHECK(my_leq(i, b));
            for (int c = 0; c < 4; ++c) {
                if (my_leq(a, c) && my_leq(b, c)) CHECK(my_leq(s, c));
                if (my_leq(c, a) && my_leq(c, b)) CHECK(my_leq(c, i));
            }
        }
    CHECK(poset::sup(1, 2) == 3);
    CHECK(poset::inf_elem(1, 2) == 0);
}

TEST_CASE("zeta transform examples") {
    OctTable t{5, 3, 4, 9};
    zeta_min(t, 1);
    CHECK(t == OctTable{5, 3, 4, 3});
    OctTable inf(16, kInf);
    zeta_min(inf, 2);
    CHECK(inf == OctTable(16, kInf));
    OctTable c(64, 7);
    zeta_min_parallel(c, 3);
    CHECK(c == OctTable(64, 7));
}

TEST_CASE("zeta transform matches the definition") {
    test::Rng rng(21);
    for (int k = 1; k <= 3; ++k)
        for (int it = 0; it < 20; ++it) {
            OctTable t = random_table(rng, k), a = t, b = t;
            zeta_min(a, k);
            zeta_min_parallel(b, k);
            CHECK(a == naive_zeta(t, k));
            CHECK(b == a);
        }
}

TEST_CASE("union convolution equals the product of transforms") {
    test::Rng rng(22);
    for (int k = 1; k <= 3; ++k)
        for (int it = 0; it < 10; ++it) {
            OctTable a = random_table(rng, k), b = random_table(rng, k);
            OctTable d = union_direct(a, b, k);
            OctTable za = a, zb = b;
            zeta_min(za, k);
            zeta_min(zb, k);
            const int N = 1 << (2 * k);
            for (int x = 0; x < N; ++x) {
                CHECK(d[x] == add(za[x], zb[x]));
                // and directly from the definition
                Weight best = kInf;
                for (int y = 0; y < N; ++y)
                    for (int z = 0; z < N; ++z) {
                        int s = 0;
                        for (int i = 0; i < k; ++i) s |= poset::sup(y >> (2 * i) & 3, z >> (2 * i) & 3) << (2 * i);
                        if (vec_leq(s, x, k)) best = std::min(best, add(a[y], b[z]));
                    }
                CHECK(d[x] == best);
            }
        }
}

TEST_CASE("small examples") {
    CHECK(solve("(u (v 1 1) (u (v 2 1) (v 3 2)))", {4, 5, 6}).value == 0);
    CHECK(solve("(j 1 2 (u (v 3 1) (r 1 2 (j 1 2 (u (v 1 1) (v 2 2))))))", {1, 1, 1}).value == 1);
    // C5 = path 1-2-3-4-5 closed by 5-1; vertex 5 weighs 7
    const char* c5 =
        "(j 2 3 (j 1 2 (u (v 5 2) (r 2 1 (r 1 4 (j 1 2 (u (v 4 2) (r 2 1 (r 1 4 (j 1 2 (u (v 3 2) "
        "(j 1 3 (u (v 1 3) (v 2 1))))))))))))))";
    auto lg = eval_kexpr(parse_kexpr(c5));
    CHECK(lg.g.m() == 5);
    for (int v = 0; v < 5; ++v) CHECK(lg.g.inc(v).size() == 2);
    auto r = solve(c5, {1, 1, 1, 1, 7}, true);
    CHECK(r.value == 1);
    CHECK(two_coloured(lg.g, r));
    const char* k4 = "(j 1 2 (u (v 4 2) (r 2 1 (j 1 2 (u (v 3 2) (r 2 1 (j 1 2 (u (v 1 1) (v 2 2)))))))))";
    CHECK(eval_kexpr(parse_kexpr(k4)).g.m() == 6);
    r = solve(k4, {1, 1, 1, 1});
    CHECK(r.value == 2);
    CHECK(r.table_size == 16);
}

TEST_CASE("matches exhaustive search") {
    Rng rng(23);
    for (int it = 0; it < 250; ++it) {
        const int n = 1 + static_cast<int>(rng() % 12), k = 1 + static_cast<int>(rng() % 4);
        auto e = random_kexpr(rng, n, k);
        Multigraph g = eval_kexpr(e).g;
        std::vector<Weight> w(n);
        for (int v = 0; v < n; ++v) g.set_weight(v, w[v] = uni(rng, 1, 5));
        OctOptions o;
        o.witness = true;
        o.parallel = coin(rng, 0.5);
        auto r = solve_oct_cw(e, w, o);
        INFO(write_kexpr(e));
        CHECK(r.value == test::exhaustive(g, Problem::OCT));
        CHECK(test::weight_of(g, r.deleted) == r.value);
        CHECK(two_coloured(g, r));
        CHECK(r.table_size == (std::size_t{1} << (2 * e.k)));
    }
}
