#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cyc/forest.hpp"

namespace cyc {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

struct Blob {
    std::vector<int> verts;  // H nodes
    std::vector<int> edges;  // H edges
};

class Merger {
public:
    Merger(FGraph& h, Problem p) : H(h), prob(p), in_blob(h.edges.size(), 0) {}

    bool process(const Blob& b) {
        for (int e : b.edges) in_blob[e] = 1;
        switch (prob) {
            case Problem::SFVS:
            case Problem::NMWC: return sfvs(b);
            case Problem::ECT: return ect(b);
            case Problem::SOCT:
            case Problem::OCT: return soct(b);
            case Problem::SECT: return sect(b);
        }
        return false;
    }

private:
    FGraph& H;
    Problem prob;
    std::vector<char> in_blob;

    const FNode& nd(int x) const { return H.node[x]; }
    bool labeled(int x) const { return nd(x).sym != Sym::None; }

    // potentials over the blob; pot indexed by position in b.verts
    std::optional<std::vector<std::uint8_t>> potentials(const Blob& b, int split = -1) const {
        std::vector<int> loc(H.node.size(), -1);
        for (size_t i = 0; i < b.verts.size(); ++i) loc[b.verts[i]] = static_cast<int>(i);
        Multigraph g(static_cast<int>(b.verts.size()));
        F2Labeling lab;
        int v2 = -1, seen = 0;
        if (split >= 0) v2 = g.add_vertex();
        for (int e : b.edges) {
            int a = loc[H.edges[e].a], c = loc[H.edges[e].b];
            if (split >= 0 && (a == split || c == split) && seen++ == 1) {
                // second blob edge at the split vertex moves to its copy
                if (a == split)
                    a = v2;
                else
                    c = v2;
            }
            g.add_edge(a, c);
            lab.push_back(H.edges[e].val);
        }
        if (split >= 0) {
            g.add_edge(split, v2);
            lab.push_back(1);
        }
        auto pot = compute_potentials(g, lab);
        if (pot && split >= 0) pot->pop_back();
        return pot;
    }

    // moves the non-blob edges of labeled node x onto hub, then drops x
    void identify(int x, int hub, std::uint8_t px) {
        for (int e : H.live_inc(x)) {
            int y = H.other(e, x);
            H.add_edge(hub, y, H.edges[e].val ^ px);
        }
        H.kill_node(x);
    }

    void kill_blob_edges(const Blob& b) {
        for (int e : b.edges) H.kill_edge(e);
    }

    bool sfvs(const Blob& b) {
        for (int x : b.verts)
            if (nd(x).s) return false;
        kill_blob_edges(b);
        int hub = H.add_node(FNode{});
        for (int x : b.verts) H.add_edge(hub, x, 0);
        return true;
    }

    bool ect(const Blob& b) {
        if (b.edges.size() != b.verts.size()) return false;
        std::unordered_map<int, int> deg;
        std::uint8_t sum = 0;
        for (int e : b.edges) {
            ++deg[H.edges[e].a];
            ++deg[H.edges[e].b];
            sum ^= H.edges[e].val;
        }
        for (int x : b.verts)
            if (deg[x] != 2 || nd(x).sym == Sym::OddCycle) return false;
        if (sum == 0) return false;
        kill_blob_edges(b);
        int hub = H.add_node(FNode{-1, false, Sym::OddCycle});
        for (int x : b.verts) H.add_edge(hub, x, 0);
        return true;
    }

    void hub_over(const Blob& b, const std::vector<int>& idx, int hub, const std::vector<std::uint8_t>* pot) {
        for (int i : idx) {
            int x = b.verts[i];
            std::uint8_t px = pot ? (*pot)[i] : 0;
            if (labeled(x))
                identify(x, hub, px);
            else
                H.add_edge(hub, x, px);
        }
    }

    bool soct(const Blob& b) {
        bool has_s = false, has_nb = false;
        for (int x : b.verts) {
            has_s |= nd(x).s;
            has_nb |= nd(x).sym == Sym::NotBipartite;
        }
        auto pot = potentials(b);
        if (has_s && (!pot || has_nb)) return false;
        const bool bip = pot && !has_nb;
        kill_blob_edges(b);
        int hub = H.add_node(FNode{-1, has_s, bip ? Sym::Bipartite : Sym::NotBipartite});
        std::vector<int> all(b.verts.size());
        std::iota(all.begin(), all.end(), 0);
        hub_over(b, all, hub, bip ? &*pot : nullptr);
        return true;
    }

    bool sect(const Blob& b) {
        bool has_s = false;
        int ib = 0, nb = 0, oc = 0;
        for (int x : b.verts) {
            has_s |= nd(x).s;
            ib += nd(x).sym == Sym::InternalBipartite;
            nb += nd(x).sym == Sym::NotBipartite;
            oc += nd(x).sym == Sym::OddCycle;
        }
        std::vector<int> all(b.verts.size());
        std::iota(all.begin(), all.end(), 0);
        if (!has_s) {
            auto pot = potentials(b);
            if (ib > 1) return false;
            if (ib == 1 && (!pot || nb)) return false;
            Sym lab = ib ? Sym::InternalBipartite : (pot && !nb ? Sym::Bipartite : Sym::NotBipartite);
            kill_blob_edges(b);
            int hub = H.add_node(FNode{-1, false, lab});
            hub_over(b, all, hub, lab == Sym::NotBipartite ? nullptr : &*pot);
            return true;
        }
        if (ib || nb || oc) return false;
        const int n = static_cast<int>(b.verts.size());
        std::vector<int> loc(H.node.size(), -1);
        for (int i = 0; i < n; ++i) loc[b.verts[i]] = i;
        std::vector<int> deg(n, 0);
        Dsu dsu(n);
        for (int e : b.edges) {
            int a = loc[H.edges[e].a], c = loc[H.edges[e].b];
            ++deg[a];
            ++deg[c];
            if (!nd(b.verts[a]).s && !nd(b.verts[c]).s) dsu.unite(a, c);
        }
        int split = -1;
        for (int i = 0; i < n; ++i) {
            if (!nd(b.verts[i]).s) continue;
            if (deg[i] > 2) return false;
            if (split < 0 || b.verts[i] < b.verts[split]) split = i;
        }
        std::vector<int> out(n, 0);
        for (int e : b.edges) {
            int a = loc[H.edges[e].a], c = loc[H.edges[e].b];
            bool sa = nd(b.verts[a]).s, sc = nd(b.verts[c]).s;
            if (sa != sc) ++out[dsu.find(sa ? c : a)];
        }
        for (int i = 0; i < n; ++i)
            if (out[i] > 2) return false;
        auto pot = potentials(b, split);
        if (!pot) return false;
        kill_blob_edges(b);
        int ochub = H.add_node(FNode{-1, true, Sym::OddCycle});
        std::unordered_map<int, std::vector<int>> pieces;
        for (int i = 0; i < n; ++i) {
            if (nd(b.verts[i]).s)
                H.add_edge(ochub, b.verts[i], 0);
            else
                pieces[dsu.find(i)].push_back(i);
        }
        std::vector<int> roots;
        for (auto& [r, _] : pieces) roots.push_back(r);
        std::sort(roots.begin(), roots.end());
        for (int r : roots) {
            int hub = H.add_node(FNode{-1, false, Sym::InternalBipartite});
            hub_over(b, pieces[r], hub, &*pot);
            H.add_edge(ochub, hub, 0);
        }
        return true;
    }
};

}  // namespace

std::optional<Forest> merge(const Forest& f1, const Forest& f2, Problem p) {
    FGraph H = to_fgraph(f1);
    std::vector<int> map2(f2.size());
    for (int i = 0; i < f2.size(); ++i) {
        int hit = -1;
        if (f2.node[i].active())
            for (int x = 0; x < f1.size() && hit < 0; ++x)
                if (f1.node[x].vid == f2.node[i].vid) hit = x;
        map2[i] = hit >= 0 ? hit : H.add_node(f2.node[i]);
    }
    Dsu comp(static_cast<int>(H.node.size()));
    for (const auto& e : H.edges) comp.unite(e.a, e.b);
    bool cyclic = false;
    for (int i = 0; i < f2.size(); ++i)
        if (f2.parent[i] != i) {
            const int a = map2[i], b = map2[f2.parent[i]];
            if (comp.find(a) == comp.find(b))
                cyclic = true;
            else
                comp.unite(a, b);
            H.add_edge(a, b, f2.up[i]);
        }
    if (!cyclic) {
        if (p == Problem::SFVS || p == Problem::NMWC)
            for (auto& e : H.edges) e.val = 0;
        reduce_in_place(H, p);
        return to_forest(H);
    }

    // blocks of the union; nontrivial blocks sharing a labeled node form a blob
    const int nn = static_cast<int>(H.node.size());
    Multigraph M(nn);
    std::vector<int> emap;
    for (int e = 0; e < static_cast<int>(H.edges.size()); ++e) {
        if (!H.edges[e].alive) continue;
        M.add_edge(H.edges[e].a, H.edges[e].b);
        emap.push_back(e);
    }
    auto bd = biconnected_components(M);
    std::vector<int> nt;
    for (int i = 0; i < static_cast<int>(bd.blocks.size()); ++i)
        if (bd.blocks[i].nontrivial) nt.push_back(i);
    if (!nt.empty()) {
        Dsu dsu(static_cast<int>(nt.size()));
        std::vector<int> owner(nn, -1);
        for (int j = 0; j < static_cast<int>(nt.size()); ++j)
            for (int x : bd.blocks[nt[j]].verts) {
                if (H.node[x].sym == Sym::None) continue;
                if (owner[x] >= 0)
                    dsu.unite(owner[x], j);
                else
                    owner[x] = j;
            }
        std::vector<Blob> blobs(nt.size());
        for (int j = 0; j < static_cast<int>(nt.size()); ++j) {
            Blob& b = blobs[dsu.find(j)];
            for (int x : bd.blocks[nt[j]].verts) b.verts.push_back(x);
            for (int e : bd.blocks[nt[j]].edges) b.edges.push_back(emap[e]);
        }
        Merger mg(H, p);
        for (auto& b : blobs) {
            if (b.edges.empty()) continue;
            std::sort(b.verts.begin(), b.verts.end());
            b.verts.erase(std::unique(b.verts.begin(), b.verts.end()), b.verts.end());
            if (!mg.process(b)) return std::nullopt;
        }
    }
    if (p == Problem::SFVS || p == Problem::NMWC)
        for (auto& e : H.edges) e.val = 0;
    reduce_in_place(H, p);
    return to_forest(H);
}

}  // namespace cyc
