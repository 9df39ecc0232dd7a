#include "cyc/forest.hpp"

#include <algorithm>
#include <tuple>
#include <map>
#include <queue>
#include <sstream>

namespace cyc {

const char* sym_name(Sym s) {
    switch (s) {
        case Sym::None: return "none";
        case Sym::OddCycle: return "odd-cycle";
        case Sym::Bipartite: return "bipartite";
        case Sym::NotBipartite: return "not-bipartite";
        case Sym::InternalBipartite: return "internal-bipartite";
    }
    return "?";
}

std::vector<int> Forest::active_ids() const {
    std::vector<int> r;
    for (const auto& n : node)
        if (n.active()) r.push_back(n.vid);
    std::sort(r.begin(), r.end());
    return r;
}

int Forest::find_active(int vid) const {
    for (int i = 0; i < size(); ++i)
        if (node[i].vid == vid) return i;
    return -1;
}

// ---- FGraph -----------------------------------------------------------------

int FGraph::add_node(const FNode& n) {
    node.push_back(n);
    node_alive.push_back(1);
    inc.emplace_back();
    return static_cast<int>(node.size()) - 1;
}

int FGraph::add_edge(int a, int b, std::uint8_t v) {
    edges.push_back({a, b, static_cast<std::uint8_t>(v & 1), true});
    int e = static_cast<int>(edges.size()) - 1;
    inc[a].push_back(e);
    inc[b].push_back(e);
    return e;
}

void FGraph::kill_edge(int e) { edges[e].alive = false; }

void FGraph::kill_node(int v) {
    node_alive[v] = 0;
    for (int e : inc[v]) edges[e].alive = false;
}

int FGraph::degree(int v) const {
    int d = 0;
    for (int e : inc[v]) d += edges[e].alive;
    return d;
}

std::vector<int> FGraph::live_inc(int v) const {
    std::vector<int> r;
    for (int e : inc[v])
        if (edges[e].alive) r.push_back(e);
    return r;
}

FGraph to_fgraph(const Forest& f) {
    FGraph g;
    for (const auto& n : f.node) g.add_node(n);
    for (int i = 0; i < f.size(); ++i)
        if (f.parent[i] != i) g.add_edge(i, f.parent[i], f.up[i]);
    return g;
}

Forest to_forest(const FGraph& g) {
    const int n = static_cast<int>(g.node.size());
    std::vector<int> idx(n, -1);
    Forest f;
    for (int v = 0; v < n; ++v)
        if (g.node_alive[v]) {
            idx[v] = f.size();
            f.node.push_back(g.node[v]);
        }
    f.parent.assign(f.size(), -1);
    f.up.assign(f.size(), 0);
    int live_edges = 0;
    for (const auto& e : g.edges) live_edges += e.alive;
    int comps = 0;
    for (int r = 0; r < n; ++r) {
        if (!g.node_alive[r] || f.parent[idx[r]] >= 0) continue;
        ++comps;
        f.parent[idx[r]] = idx[r];
        std::vector<int> st{r};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int e : g.inc[v]) {
                if (!g.edges[e].alive) continue;
                int w = g.other(e, v);
                if (!g.node_alive[w]) throw InternalError("edge to a dead node");
                if (f.parent[idx[w]] >= 0) continue;
                f.parent[idx[w]] = idx[v];
                f.up[idx[w]] = g.edges[e].val;
                st.push_back(w);
            }
        }
    }
    if (live_edges != f.size() - comps) throw InternalError("forest expected, found a cycle");
    return f;
}

// ---- sizes --------------------------------------------------------------------

int symbol_count(Problem p) {
    switch (p) {
        case Problem::SFVS:
        case Problem::NMWC: return 1;
        case Problem::ECT: return 2;
        case Problem::SOCT:
        case Problem::OCT: return 3;
        case Problem::SECT: return 5;
    }
    return 5;
}

int size_bound(Problem p, int active) {
    if (active == 0) return 0;
    return (symbol_count(p) + 1) * (2 * active - 2) + 1;
}

// ---- underlying forest -------------------------------------------------------

Forest build_underlying_forest(const Multigraph& g, Problem p) {
    FGraph fg;
    const bool keep_s = p != Problem::ECT;
    const bool no_parity = p == Problem::SFVS || p == Problem::NMWC;
    for (int v = 0; v < g.n(); ++v) fg.add_node(FNode{v, keep_s && g.in_s(v), Sym::None});
    auto bd = biconnected_components(g);
    for (const auto& b : bd.blocks) {
        if (b.edges.empty()) continue;
        if (!b.nontrivial) {
            const auto& [u, v] = g.edge(b.edges[0]);
            fg.add_edge(u, v, no_parity ? 0 : 1);
            continue;
        }
        std::vector<int> verts;
        Multigraph c = g.edge_subgraph(b.edges, &verts);
        ComponentClass cls = classify_component(c, p == Problem::NMWC ? Problem::SFVS : p);
        if (cls == ComponentClass::Violating) {
            std::ostringstream msg;
            msg << "block on vertices";
            for (int v : verts) msg << ' ' << v + 1;
            msg << " contains a cycle to hit";
            throw StructureError(msg.str());
        }
        bool has_s = false;
        for (int i = 0; i < c.n(); ++i) has_s |= c.in_s(i) != 0;
        auto colour = bipartition(c);
        auto hub_all = [&](Sym sym, bool s, bool by_side) {
            int h = fg.add_node(FNode{-1, s, sym});
            for (int i = 0; i < c.n(); ++i) fg.add_edge(h, verts[i], by_side ? (*colour)[i] : 0);
        };
        switch (p) {
            case Problem::SFVS:
            case Problem::NMWC:
                hub_all(Sym::None, false, false);
                break;
            case Problem::ECT:
                hub_all(Sym::OddCycle, false, false);
                break;
            case Problem::SOCT:
                if (colour)
                    hub_all(Sym::Bipartite, has_s, true);
                else
                    hub_all(Sym::NotBipartite, has_s, false);
                break;
            case Problem::SECT:
                if (cls != ComponentClass::OddSCycleOfBipartiteSubcomponents) {
                    if (colour)
                        hub_all(Sym::Bipartite, false, true);
                    else
                        hub_all(Sym::NotBipartite, false, false);
                    break;
                }
                {
                    // pieces of C - S, each behind an internal-bipartite hub
                    std::vector<int> comp(c.n(), -1), side(c.n(), 0);
                    std::vector<int> hubs;
                    for (int s0 = 0; s0 < c.n(); ++s0) {
                        if (c.in_s(s0) || comp[s0] >= 0) continue;
                        int id = static_cast<int>(hubs.size());
                        comp[s0] = id;
                        std::vector<int> st{s0};
                        while (!st.empty()) {
                            int v = st.back();
                            st.pop_back();
                            for (int e : c.inc(v)) {
                                int w = c.other(e, v);
                                if (c.in_s(w) || comp[w] >= 0) continue;
                                comp[w] = id;
                                side[w] = side[v] ^ 1;
                                st.push_back(w);
                            }
                        }
                        hubs.push_back(fg.add_node(FNode{-1, false, Sym::InternalBipartite}));
                    }
                    for (int i = 0; i < c.n(); ++i)
                        if (comp[i] >= 0) fg.add_edge(hubs[comp[i]], verts[i], side[i]);
                    int oc = fg.add_node(FNode{-1, true, Sym::OddCycle});
                    for (int i = 0; i < c.n(); ++i)
                        if (c.in_s(i)) fg.add_edge(oc, verts[i], 0);
                    for (int h : hubs) fg.add_edge(oc, h, 0);
                }
                break;
            case Problem::OCT:
                throw StructureError("no underlying forest for this problem");
        }
    }
    return to_forest(fg);
}

// ---- reduction ----------------------------------------------------------------

void reduce_in_place(FGraph& g, Problem p) {
    const int n = static_cast<int>(g.node.size());
    // rule 1: inactive vertices of degree <= 1
    std::vector<int> deg(n, 0);
    std::queue<int> q;
    for (int v = 0; v < n; ++v) {
        if (!g.node_alive[v]) continue;
        deg[v] = g.degree(v);
        if (!g.node[v].active() && deg[v] <= 1) q.push(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (!g.node_alive[v]) continue;
        for (int e : g.inc[v]) {
            if (!g.edges[e].alive) continue;
            int w = g.other(e, v);
            g.edges[e].alive = false;
            if (--deg[w] <= 1 && !g.node[w].active()) q.push(w);
        }
        g.node_alive[v] = 0;
    }
    // rule 2: maximal paths through inactive degree-2 vertices
    auto interior = [&](int v) { return g.node_alive[v] && !g.node[v].active() && deg[v] == 2; };
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a) {
        if (!g.node_alive[a] || interior(a)) continue;
        for (int e0 : std::vector<int>(g.inc[a])) {
            if (!g.edges[e0].alive) continue;
            int first = g.other(e0, a);
            if (!interior(first) || seen[first]) continue;
            std::vector<int> mids, es{e0};
            int prev = a, cur = first;
            while (interior(cur)) {
                seen[cur] = 1;
                mids.push_back(cur);
                int nxt_e = -1;
                for (int e : g.inc[cur])
                    if (g.edges[e].alive && e != es.back()) {
                        nxt_e = e;
                        break;
                    }
                es.push_back(nxt_e);
                prev = cur;
                cur = g.other(nxt_e, cur);
            }
            (void)prev;
            const int b = cur;
            bool cov[5] = {false, false, false, false, false};
            bool cov_s = false, has_oc = false;
            int ib = 0;
            for (int x : {a, b}) {
                cov[static_cast<int>(g.node[x].sym)] = true;
                cov_s |= g.node[x].s;
                has_oc |= g.node[x].sym == Sym::OddCycle;
                ib += g.node[x].sym == Sym::InternalBipartite;
            }
            for (int x : mids) has_oc |= g.node[x].sym == Sym::OddCycle;
            const bool sect_two_ib = p == Problem::SECT && !has_oc;
            std::vector<int> keep;
            for (int x : mids) {
                const FNode& nd = g.node[x];
                bool k = false;
                if (nd.sym != Sym::None && !cov[static_cast<int>(nd.sym)]) k = true;
                if (nd.s && !cov_s) k = true;
                if (sect_two_ib && nd.sym == Sym::InternalBipartite && ib < 2) k = true;
                if (!k) continue;
                keep.push_back(x);
                cov[static_cast<int>(nd.sym)] = true;
                cov_s |= nd.s;
                ib += nd.sym == Sym::InternalBipartite;
            }
            if (keep.size() == mids.size()) continue;
            // rebuild: a - keep... - b with summed labels
            std::uint8_t acc = 0;
            size_t ki = 0;
            int last = a;
            for (size_t i = 0; i < mids.size(); ++i) {
                acc ^= g.edges[es[i]].val;
                g.edges[es[i]].alive = false;
                if (ki < keep.size() && mids[i] == keep[ki]) {
                    g.add_edge(last, mids[i], acc);
                    last = mids[i];
                    acc = 0;
                    ++ki;
                } else {
                    g.node_alive[mids[i]] = 0;
                }
            }
            acc ^= g.edges[es.back()].val;
            g.edges[es.back()].alive = false;
            g.add_edge(last, b, acc);
        }
    }
}

Forest reduce(const Forest& f, Problem p) {
    FGraph g = to_fgraph(f);
    reduce_in_place(g, p);
    return to_forest(g);
}

Forest deactivate(const Forest& f, int vid) {
    Forest r = f;
    int i = r.find_active(vid);
    if (i >= 0) r.node[i].vid = -1;
    return r;
}

Forest forest_union(const Forest& a, const Forest& b) {
    Forest r = a;
    const int off = a.size();
    for (int i = 0; i < b.size(); ++i) {
        r.node.push_back(b.node[i]);
        r.parent.push_back(b.parent[i] + off);
        r.up.push_back(b.up[i]);
    }
    return r;
}

Forest add_isolated(const Forest& f, int vid, bool s) {
    Forest r = f;
    r.node.push_back(FNode{vid, s, Sym::None});
    r.parent.push_back(r.size() - 1);
    r.up.push_back(0);
    return r;
}

// ---- canonical encoding -------------------------------------------------------
//
// Each maximal chain of inactive degree-2 nodes is folded into its endpoints'
// connecting "super edge" (sorted interior symbols, total parity). Parity is
// dropped when the chain or an endpoint is odd-cycle/not-bipartite, and the
// free side swap at branching bipartite hubs is fixed canonically.

namespace {

char node_code(const FNode& n) {
    return static_cast<char>('a' + static_cast<int>(n.sym) * 2 + (n.s ? 1 : 0));
}

bool kills_parity(const FNode& n) { return n.sym == Sym::OddCycle || n.sym == Sym::NotBipartite; }
bool gauge(const FNode& n) { return n.sym == Sym::Bipartite || n.sym == Sym::InternalBipartite; }

struct Enc {
    const Forest& f;
    std::vector<std::vector<std::pair<int, std::uint8_t>>> adj;
    std::vector<char> branch;
    std::map<std::tuple<int, int, int>, std::string> memo;

    explicit Enc(const Forest& ff) : f(ff), adj(ff.size()), branch(ff.size(), 0) {
        for (int i = 0; i < f.size(); ++i)
            if (f.parent[i] != i) {
                adj[i].push_back({f.parent[i], f.up[i]});
                adj[f.parent[i]].push_back({i, f.up[i]});
            }
        for (int i = 0; i < f.size(); ++i) branch[i] = f.node[i].active() || adj[i].size() != 2;
    }

    struct Super {
        int to, back;  // far branch node and its neighbour on the chain
        std::string mids;
        std::uint8_t parity;
        bool dead;  // parity meaningless
    };

    std::vector<Super> supers(int v, int from) {
        std::vector<Super> out;
        for (auto [w0, val0] : adj[v]) {
            if (w0 == from) continue;
            int prev = v, cur = w0;
            std::uint8_t par = val0;
            std::string mids;
            bool dead = kills_parity(f.node[v]);
            while (!branch[cur]) {
                mids.push_back(node_code(f.node[cur]));
                dead |= kills_parity(f.node[cur]);
                auto [n1, v1] = adj[cur][0].first == prev ? adj[cur][1] : adj[cur][0];
                par ^= v1;
                prev = cur;
                cur = n1;
            }
            dead |= kills_parity(f.node[cur]);
            std::sort(mids.begin(), mids.end());
            out.push_back({cur, prev, mids, dead ? std::uint8_t{0} : par, dead});
        }
        return out;
    }

    // up: -1 when the edge above is absent or dead, else its parity as seen
    // after the parent's choice of side
    std::string encode(int v, int from, int up) {
        auto key = std::make_tuple(v, from, gauge(f.node[v]) ? up : -1);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const FNode& n = f.node[v];
        std::string head = "(";
        if (n.active()) head += 'A' + std::to_string(n.vid);
        head += node_code(n);
        auto ss = supers(v, from);
        auto list = [&](std::uint8_t fl) {
            std::vector<std::string> items;
            for (const auto& s : ss) {
                std::uint8_t q = s.parity ^ fl;
                std::string sub = encode(s.to, s.back, s.dead ? -1 : q);
                // a bipartite child absorbs a live edge parity itself
                char shown = (s.dead || gauge(f.node[s.to])) ? '0' : char('0' + q);
                items.push_back(shown + ("[" + s.mids + "]") + sub);
            }
            std::sort(items.begin(), items.end());
            std::string r;
            for (auto& x : items) r += x;
            return r;
        };
        std::string body;
        if (!gauge(n))
            body = list(0);
        else if (up >= 0)
            body = list(static_cast<std::uint8_t>(up));
        else
            body = std::min(list(0), list(1));
        return memo[key] = head + body + ')';
    }
};
}  // namespace

std::string canonical_encode(const Forest& f) {
    Enc enc(f);
    // one tree per component, rooted at its smallest active id
    std::vector<int> comp(f.size(), -1);
    std::vector<std::string> trees;
    for (int r = 0; r < f.size(); ++r) {
        if (comp[r] >= 0) continue;
        std::vector<int> st{r}, members;
        comp[r] = r;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            members.push_back(v);
            for (auto [w, val] : enc.adj[v]) {
                (void)val;
                if (comp[w] < 0) {
                    comp[w] = r;
                    st.push_back(w);
                }
            }
        }
        int root = -1;
        for (int v : members)
            if (f.node[v].active() && (root < 0 || f.node[v].vid < f.node[root].vid)) root = v;
        if (root < 0) {
            // no active vertex: root at a branch node with the smallest encoding
            std::string best;
            bool have = false;
            for (int v : members) {
                if (!enc.branch[v]) continue;
                std::string s = enc.encode(v, -1, -1);
                if (!have || s < best) best = s, have = true;
            }
            if (!have) {
                // a cycle of degree-2 nodes cannot occur in a forest
                throw InternalError("unrootable component");
            }
            trees.push_back("I" + best);
            continue;
        }
        trees.push_back(enc.encode(root, -1, -1));
    }
    std::sort(trees.begin(), trees.end());
    std::string out;
    for (auto& t : trees) out += t;
    return out;
}

// ---- path queries ---------------------------------------------------------------

PathInfo path_info(const Forest& f, int vid_u, int vid_v) {
    PathInfo info;
    int u = f.find_active(vid_u), v = f.find_active(vid_v);
    if (u < 0 || v < 0) return info;
    std::vector<std::vector<std::pair<int, std::uint8_t>>> adj(f.size());
    for (int i = 0; i < f.size(); ++i)
        if (f.parent[i] != i) {
            adj[i].push_back({f.parent[i], f.up[i]});
            adj[f.parent[i]].push_back({i, f.up[i]});
        }
    std::vector<int> par(f.size(), -2);
    std::vector<std::uint8_t> pv(f.size(), 0);
    par[u] = -1;
    std::vector<int> st{u};
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (auto [w, val] : adj[x])
            if (par[w] == -2) {
                par[w] = x;
                pv[w] = val;
                st.push_back(w);
            }
    }
    if (par[v] == -2) return info;
    info.connected = true;
    for (int x = v;; x = par[x]) {
        const FNode& n = f.node[x];
        info.has[static_cast<int>(n.sym)] = true;
        info.ib_count += n.sym == Sym::InternalBipartite;
        info.s |= n.s;
        if (par[x] < 0) break;
        info.parity ^= pv[x];
    }
    return info;
}

std::string debug_string(const Forest& f) {
    std::ostringstream o;
    for (int i = 0; i < f.size(); ++i) {
        const auto& n = f.node[i];
        o << i << ':';
        if (n.active()) o << 'v' << n.vid + 1;
        if (n.s) o << 'S';
        if (n.sym != Sym::None) o << '<' << sym_name(n.sym) << '>';
        if (f.parent[i] != i) o << "->" << f.parent[i] << '/' << int(f.up[i]);
        o << ' ';
    }
    return o.str();
}

}  // namespace cyc
