#pragma once

// Independent brute-force helpers for the unit and acceptance tests. Nothing
// here calls into the solver code paths it is used to check.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "cyc/graph.hpp"
#include "cyc/io.hpp"

namespace cyc::test {

using Rng = std::mt19937_64;

inline int uni(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
inline bool coin(Rng& r, double p) { return std::uniform_real_distribution<double>(0, 1)(r) < p; }

// Simple multigraph generator: density p, at most `maxmult` parallel copies.
inline Multigraph small_graph(Rng& r, int n, double p, int maxmult = 2, double s_prob = 0.3) {
    Multigraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(r, p)) {
                int c = uni(r, 1, maxmult);
                for (int i = 0; i < c; ++i) g.add_edge(u, v);
            }
    for (int v = 0; v < n; ++v) g.set_s(v, coin(r, s_prob));
    return g;
}

struct Cycle {
    std::vector<int> verts;
    std::vector<int> edges;
};

// Every simple cycle once (a pair of parallel edges is a 2-cycle).
inline std::vector<Cycle> simple_cycles(const Multigraph& g) {
    std::vector<Cycle> out;
    const int n = g.n();
    std::vector<char> on(n, 0);
    std::vector<int> vs, es;
    // cycles whose minimum vertex is `root`, each direction once
    std::function<void(int, int)> dfs = [&](int root, int x) {
        for (int e : g.inc(x)) {
            int y = g.other(e, x);
            if (!es.empty() && e == es.back()) continue;
            if (y == root) {
                if (vs.size() == 1) continue;
                // orient: for 2-cycles compare edge ids, else second vertex < last vertex
                if (vs.size() == 2 ? es[0] < e : vs[1] < vs.back()) {
                    Cycle c{vs, es};
                    c.edges.push_back(e);
                    out.push_back(c);
                }
                continue;
            }
            if (y < root || on[y]) continue;
            on[y] = 1;
            vs.push_back(y);
            es.push_back(e);
            dfs(root, y);
            vs.pop_back();
            es.pop_back();
            on[y] = 0;
        }
    };
    for (int r = 0; r < n; ++r) {
        on[r] = 1;
        vs = {r};
        es.clear();
        dfs(r, r);
        on[r] = 0;
    }
    return out;
}

// Cycle condition of each problem (OCT: every odd cycle; S ignored).
inline bool bad_cycle(const Multigraph& g, const Cycle& c, Problem p) {
    bool s = false;
    for (int v : c.verts) s = s || g.in_s(v);
    const bool even = c.verts.size() % 2 == 0;
    switch (p) {
        case Problem::SFVS: return s;
        case Problem::ECT: return even;
        case Problem::SOCT: return s && !even;
        case Problem::SECT: return s && even;
        case Problem::OCT: return !even;
        case Problem::NMWC: return false;
    }
    return false;
}

inline bool cycle_free_by_enumeration(const Multigraph& g, Problem p) {
    for (const auto& c : simple_cycles(g))
        if (bad_cycle(g, c, p)) return false;
    return true;
}

// Simple u-v paths as vertex lists.
inline std::vector<std::vector<int>> simple_paths(const Multigraph& g, int u, int v) {
    std::vector<std::vector<int>> out;
    std::vector<char> on(g.n(), 0);
    std::vector<int> cur{u};
    on[u] = 1;
    std::function<void(int)> dfs = [&](int x) {
        if (x == v) {
            out.push_back(cur);
            return;
        }
        for (int e : g.inc(x)) {
            int y = g.other(e, x);
            if (on[y]) continue;
            on[y] = 1;
            cur.push_back(y);
            dfs(y);
            cur.pop_back();
            on[y] = 0;
        }
    };
    dfs(u);
    return out;
}

inline bool reachable_without(const Multigraph& g, int a, int b, int banned) {
    std::vector<char> seen(g.n(), 0);
    std::vector<int> st{a};
    seen[a] = 1;
    if (banned >= 0) seen[banned] = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        if (x == b) return true;
        for (int e : g.inc(x)) {
            int y = g.other(e, x);
            if (!seen[y]) seen[y] = 1, st.push_back(y);
        }
    }
    return false;
}

// Cut vertices by removal: v is a cut vertex iff two of its neighbours become disconnected.
inline std::vector<int> cutvertices_by_removal(const Multigraph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> nb;
        for (int e : g.inc(v)) nb.push_back(g.other(e, v));
        bool cut = false;
        for (size_t i = 1; i < nb.size() && !cut; ++i) cut = !reachable_without(g, nb[0], nb[i], v);
        if (cut) out.push_back(v);
    }
    return out;
}

// Two distinct vertices lie in a common nontrivial block iff some simple
// cycle passes through both.
inline bool share_cycle(const std::vector<Cycle>& cs, int a, int b) {
    for (const auto& c : cs)
        if (std::count(c.verts.begin(), c.verts.end(), a) && std::count(c.verts.begin(), c.verts.end(), b)) return true;
    return false;
}

// Exhaustive optimum over deletion sets (ignores terminals unless nmwc).
inline Weight exhaustive(const Multigraph& g, Problem p) {
    const int n = g.n();
    Weight best = kInf;
    for (long long m = 0; m < (1LL << n); ++m) {
        Weight c = 0;
        std::vector<int> del;
        for (int v = 0; v < n; ++v)
            if (m >> v & 1) c = add(c, g.weight(v)), del.push_back(v);
        if (c >= best) continue;
        Multigraph h = g.remove_vertices(del);
        bool ok;
        if (p == Problem::NMWC) {
            ok = true;
            for (int v : del) ok = ok && !g.terminal(v);
            auto t = g.terminals();
            for (size_t i = 0; ok && i < t.size(); ++i)
                for (size_t j = i + 1; ok && j < t.size(); ++j) ok = !reachable_without(h, t[i], t[j], -1);
        } else {
            ok = cycle_free_by_enumeration(h, p);
        }
        if (ok) best = c;
    }
    return best;
}

// BFS 2-colouring, skipping removed vertices
inline bool bipartite_without(const Multigraph& g, const std::vector<int>& del) {
    std::vector<int> col(g.n(), -1);
    for (int v : del) col[v] = 2;
    for (int s = 0; s < g.n(); ++s) {
        if (col[s] != -1) continue;
        col[s] = 0;
        std::vector<int> q{s};
        for (size_t h = 0; h < q.size(); ++h) {
            int x = q[h];
            for (int e : g.inc(x)) {
                int y = g.other(e, x);
                if (col[y] == 2) continue;
                if (col[y] == -1) {
                    col[y] = col[x] ^ 1;
                    q.push_back(y);
                } else if (col[y] == col[x]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline Weight weight_of(const Multigraph& g, const std::vector<int>& xs) {
    Weight c = 0;
    for (int v : xs) c = add(c, g.weight(v));
    return c;
}

}  // namespace cyc::test
