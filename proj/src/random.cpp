#include "cyc/random.hpp"

#include <algorithm>
#include <numeric>

#include "cyc/oracle.hpp"

namespace cyc {

namespace {

int uni(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

}  // namespace

void randomize_weights(Rng& rng, Multigraph& g, Problem p, int max_weight, double inf_prob) {
    std::vector<int> infs;
    for (int v = 0; v < g.n(); ++v) {
        g.set_weight(v, uni(rng, 1, std::max(1, max_weight)));
        if (coin(rng, inf_prob)) infs.push_back(v);
    }
    // undeletable vertices must leave a solvable instance
    while (!infs.empty()) {
        std::vector<char> inf(g.n(), 0);
        for (int v : infs) inf[v] = 1;
        std::vector<int> finite;
        for (int v = 0; v < g.n(); ++v)
            if (!inf[v]) finite.push_back(v);
        if (feasible_by_classification(g.remove_vertices(finite), p)) break;
        infs.erase(infs.begin() + uni(rng, 0, static_cast<int>(infs.size()) - 1));
    }
    for (int v : infs) g.set_weight(v, kInf);
}

TwInstance random_ktree_instance(Rng& rng, int n, int k, Problem p, const RandomGraphOptions& o) {
    TwInstance r;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    r.g = Multigraph(n);
    auto edge = [&](int a, int b) {
        if (!coin(rng, o.edge_prob)) return;
        r.g.add_edge(perm[a], perm[b]);
        if (coin(rng, o.parallel_prob)) r.g.add_edge(perm[a], perm[b]);
    };
    const int base = std::min(n, k + 1);
    std::vector<std::vector<int>> bags;
    if (n > 0) {
        std::vector<int> b0;
        for (int v = 0; v < base; ++v) {
            b0.push_back(v);
            for (int u = 0; u < v; ++u) edge(u, v);
        }
        bags.push_back(b0);
    }
    for (int v = base; v < n; ++v) {
        int parent = uni(rng, 0, static_cast<int>(bags.size()) - 1);
        std::vector<int> b = bags[parent];
        b.erase(b.begin() + uni(rng, 0, static_cast<int>(b.size()) - 1));
        for (int u : b) edge(u, v);
        b.push_back(v);
        bags.push_back(b);
        r.td.tree_edges.push_back({parent, static_cast<int>(bags.size()) - 1});
    }
    for (auto& b : bags) {
        for (int& x : b) x = perm[x];
        std::sort(b.begin(), b.end());
    }
    r.td.bags = bags;
    for (int v = 0; v < n; ++v) r.g.set_s(v, coin(rng, o.s_prob));
    randomize_weights(rng, r.g, p, o.max_weight, o.inf_prob);
    return r;
}

Multigraph random_multigraph(Rng& rng, int n, const RandomGraphOptions& o) {
    Multigraph g(n);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            if (!coin(rng, o.edge_prob)) continue;
            g.add_edge(u, v);
            if (coin(rng, o.parallel_prob)) g.add_edge(u, v);
        }
    for (int v = 0; v < n; ++v) {
        g.set_s(v, coin(rng, o.s_prob));
        g.set_weight(v, uni(rng, 1, std::max(1, o.max_weight)));
    }
    return g;
}

namespace {

int decorate(Rng& rng, CliqueExpression& e, int node, int k, double join_prob, double rename_prob) {
    if (k < 2) return node;
    while (coin(rng, join_prob)) {
        int i = uni(rng, 0, k - 1), j = uni(rng, 0, k - 2);
        if (j >= i) ++j;
        node = kx_join(e, i, j, node);
    }
    if (coin(rng, rename_prob)) {
        int i = uni(rng, 0, k - 1), j = uni(rng, 0, k - 2);
        if (j >= i) ++j;
        node = kx_rename(e, i, j, node);
    }
    return node;
}

}  // namespace

CliqueExpression random_kexpr(Rng& rng, int n, int k, double join_prob, double rename_prob) {
    CliqueExpression e;
    e.k = k;
    std::vector<int> pieces;
    for (int v = 0; v < n; ++v) pieces.push_back(kx_vertex(e, v, uni(rng, 0, k - 1)));
    while (pieces.size() > 1) {
        int a = uni(rng, 0, static_cast<int>(pieces.size()) - 1);
        std::swap(pieces[a], pieces.back());
        int l = pieces.back();
        pieces.pop_back();
        int b = uni(rng, 0, static_cast<int>(pieces.size()) - 1);
        std::swap(pieces[b], pieces.back());
        int r = pieces.back();
        pieces.pop_back();
        pieces.push_back(decorate(rng, e, kx_union(e, l, r), k, join_prob, rename_prob));
    }
    return e;
}

CliqueExpression random_linear_kexpr(Rng& rng, int n, int k, double join_prob, double rename_prob) {
    CliqueExpression e;
    e.k = k;
    int cur = -1;
    for (int v = 0; v < n; ++v) {
        int x = kx_vertex(e, v, uni(rng, 0, k - 1));
        cur = cur < 0 ? x : decorate(rng, e, kx_union(e, cur, x), k, join_prob, rename_prob);
    }
    e.k = k;
    return e;
}

CnfFormula random_cnf(Rng& rng, int n, int m, int max_len) {
    CnfFormula f;
    f.n = n;
    for (int c = 0; c < m; ++c) {
        int len = uni(rng, 1, max_len);
        std::vector<int> cl;
        for (int x = 0; x < len; ++x) cl.push_back(uni(rng, 1, n) * (coin(rng, 0.5) ? 1 : -1));
        f.clauses.push_back(cl);
    }
    return f;
}

std::pair<CnfFormula, std::vector<bool>> random_satisfiable_cnf(Rng& rng, int n, int m, int max_len) {
    CnfFormula f = random_cnf(rng, n, m, max_len);
    std::vector<bool> tau(n);
    for (int v = 0; v < n; ++v) tau[v] = coin(rng, 0.5);
    for (auto& cl : f.clauses) {
        bool ok = false;
        for (int l : cl) ok |= (l > 0) == tau[std::abs(l) - 1];
        if (!ok) {
            int x = uni(rng, 0, static_cast<int>(cl.size()) - 1);
            cl[x] = -cl[x];
        }
    }
    return {f, tau};
}

}  // namespace cyc
