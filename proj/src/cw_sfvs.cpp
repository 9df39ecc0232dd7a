#include "cyc/cw_sfvs.hpp"

#include <algorithm>
#include <exception>
#include <unordered_map>

namespace cyc {

const char* lstate_name(LState s) {
    switch (s) {
        case LState::Empty: return "Q0";
        case LState::Q1: return "Q1";
        case LState::Q1s: return "Q1*";
        case LState::Q2: return "Q2";
        case LState::Qw: return "Qw";
        case LState::Qws: return "Qw*";
        case LState::Qf: return "Qf";
    }
    return "?";
}

Forest reduce_cw(const FGraph& in) {
    FGraph g = in;
    for (auto& e : g.edges)
        if (e.a == e.b) e.alive = false;
    const int nn = static_cast<int>(g.node.size());
    Multigraph m(nn);
    std::vector<int> emap;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        if (g.edges[e].alive) {
            m.add_edge(g.edges[e].a, g.edges[e].b);
            emap.push_back(e);
        }
    for (const auto& b : biconnected_components(m).blocks) {
        if (!b.nontrivial) continue;
        for (int e : b.edges) g.kill_edge(emap[e]);
        int c = g.add_node(FNode{});
        for (int x : b.verts) g.add_edge(c, x, 0);
    }
    reduce_in_place(g, Problem::SFVS);
    return to_forest(g);
}

namespace {

using LS = LState;

bool in(LS x, std::initializer_list<LS> set) { return std::find(set.begin(), set.end(), x) != set.end(); }

struct Entry {
    Forest f;
    std::vector<LS> P;
    Weight val = kInf;
    int a = -1, b = -1;
    bool del = false;
};

struct Table {
    std::vector<Entry> e;
    std::unordered_map<std::string, int> idx;

    static std::string key(const Forest& f, const std::vector<LS>& P) {
        std::string k = canonical_encode(f);
        k += '|';
        for (LS x : P) k += static_cast<char>('0' + static_cast<int>(x));
        return k;
    }

    void offer(Entry&& en) {
        if (en.val == kInf) return;
        auto [it, fresh] = idx.try_emplace(key(en.f, en.P), static_cast<int>(e.size()));
        if (fresh)
            e.push_back(std::move(en));
        else if (en.val < e[it->second].val)
            e[it->second] = std::move(en);
    }
};

int node_of(const FGraph& g, int label) {
    for (int x = 0; x < static_cast<int>(g.node.size()); ++x)
        if (g.node_alive[x] && g.node[x].vid == label) return x;
    return -1;
}

// merges y into x
void identify(FGraph& g, int x, int y) {
    for (int e : g.live_inc(y)) {
        int z = g.other(e, y);
        if (z != x) g.add_edge(x, z, 0);
    }
    g.node[x].s = g.node[x].s || g.node[y].s;
    g.kill_node(y);
}

bool has_rep(LS x) { return in(x, {LS::Q1, LS::Q1s, LS::Q2, LS::Qw, LS::Qws}); }

class Solver {
public:
    Solver(int k, const std::vector<Weight>& w, const std::vector<char>& s, bool par) : k_(k), w_(w), s_(s), par_(par) {}

    int max_forest = 0;

    void check(const Forest& f) {
        int lab = 0;
        for (const auto& n : f.node) lab += n.active();
        if (f.size() > size_bound(Problem::SFVS, lab)) throw InternalError("state forest exceeds its size bound");
        max_forest = std::max(max_forest, f.size());
    }

    void emit(Table& t, FGraph& g, std::vector<LS> P, Weight val, int from) {
        Entry en;
        en.f = reduce_cw(g);
        check(en.f);
        en.P = std::move(P);
        en.val = val;
        en.a = from;
        t.offer(std::move(en));
    }

    Table leaf(int v, int label) {
        Table t;
        Entry d;
        d.P.assign(k_, LS::Empty);
        d.val = w_[v];
        d.del = true;
        t.offer(std::move(d));
        Entry keep;
        keep.P.assign(k_, LS::Empty);
        keep.P[label] = s_[v] ? LS::Q1s : LS::Q1;
        keep.f.node.push_back(FNode{label, s_[v] != 0, Sym::None});
        keep.f.parent.push_back(0);
        keep.f.up.push_back(0);
        keep.val = 0;
        t.offer(std::move(keep));
        return t;
    }

    Table join(const Table& c, int i, int j) {
        Table t;
        for (int q = 0; q < static_cast<int>(c.e.size()); ++q) {
            const Entry& x = c.e[q];
            LS pi = x.P[i], pj = x.P[j];
            if (pi == LS::Empty || pj == LS::Empty) {
                t.offer(Entry{x.f, x.P, x.val, q, -1, false});
                continue;
            }
            if (!has_rep(pi) || !has_rep(pj)) continue;
            PathInfo pinfo = path_info(x.f, i, j);
            if (pinfo.connected && pinfo.s) continue;
            // edge between the representatives
            if (in(pi, {LS::Q1, LS::Q1s}) && in(pj, {LS::Q1, LS::Q1s})) {
                FGraph g = to_fgraph(x.f);
                g.add_edge(node_of(g, i), node_of(g, j), 0);
                emit(t, g, x.P, x.val, q);
            }
            if (in(pi, {LS::Q1, LS::Q2}) && in(pj, {LS::Q1, LS::Q2})) {
                for (int fi = 0; fi < (pi == LS::Q2 ? 2 : 1); ++fi)
                    for (int fj = 0; fj < (pj == LS::Q2 ? 2 : 1); ++fj) {
                        FGraph g = to_fgraph(x.f);
                        int ri = node_of(g, i), rj = node_of(g, j);
                        g.add_edge(ri, rj, 0);
                        auto P = x.P;
                        if (fi) P[i] = LS::Qf, g.node[ri].vid = -1;
                        if (fj) P[j] = LS::Qf, g.node[rj].vid = -1;
                        emit(t, g, std::move(P), x.val, q);
                    }
            }
            // a waiting label absorbs the single vertex it was waiting for
            auto absorb = [&](int one, int wait) {
                FGraph g = to_fgraph(x.f);
                int r1 = node_of(g, one), rw = node_of(g, wait);
                identify(g, r1, rw);
                auto P = x.P;
                P[wait] = LS::Qf;
                emit(t, g, std::move(P), x.val, q);
            };
            if (pi == LS::Q1s && pj == LS::Qws) absorb(i, j);
            if (pj == LS::Q1s && pi == LS::Qws) absorb(j, i);
            if (pi == LS::Q1 && pj == LS::Qw) absorb(i, j);
            if (pj == LS::Q1 && pi == LS::Qw) absorb(j, i);
        }
        return t;
    }

    Table rename(const Table& c, int i, int j) {
        Table t;
        auto rank = [](LS x) { return x == LS::Q1 ? 1 : x == LS::Q2 ? 2 : 3; };
        for (int q = 0; q < static_cast<int>(c.e.size()); ++q) {
            const Entry& x = c.e[q];
            const LS pi = x.P[i], pj = x.P[j];
            auto P0 = x.P;
            P0[i] = LS::Empty;
            if (pi == LS::Empty) {
                t.offer(Entry{x.f, x.P, x.val, q, -1, false});
                continue;
            }
            if (pj == LS::Empty) {
                FGraph g = to_fgraph(x.f);
                int ri = node_of(g, i);
                if (ri >= 0) g.node[ri].vid = j;
                P0[j] = pi;
                emit(t, g, std::move(P0), x.val, q);
                continue;
            }
            PathInfo pinfo;
            if (has_rep(pi) && has_rep(pj)) pinfo = path_info(x.f, i, j);
            const bool linked = pinfo.connected, s_linked = pinfo.connected && pinfo.s;
            if (in(pi, {LS::Qf, LS::Q1, LS::Q1s}) && in(pj, {LS::Qf, LS::Q1, LS::Q1s})) {
                FGraph g = to_fgraph(x.f);
                for (int l : {i, j})
                    if (int r = node_of(g, l); r >= 0) g.node[r].vid = -1;
                auto P = P0;
                P[j] = LS::Qf;
                emit(t, g, std::move(P), x.val, q);
            }
            // new hub labeled j over both representatives
            auto hub = [&](bool s, LS st) {
                FGraph g = to_fgraph(x.f);
                int ri = node_of(g, i), rj = node_of(g, j);
                int h = g.add_node(FNode{j, s, Sym::None});
                g.add_edge(h, ri, 0);
                g.add_edge(h, rj, 0);
                g.node[ri].vid = -1;
                g.node[rj].vid = -1;
                auto P = P0;
                P[j] = st;
                emit(t, g, std::move(P), x.val, q);
            };
            if (pi == LS::Q1 && pj == LS::Q1 && !linked) hub(true, LS::Qws);
            if (((pi == LS::Q1s && in(pj, {LS::Q1, LS::Q1s})) || (pj == LS::Q1s && in(pi, {LS::Q1, LS::Q1s}))) && !linked) {
                hub(true, LS::Qws);
                hub(false, LS::Qw);
            }
            if (in(pi, {LS::Q1, LS::Q2, LS::Qw}) && in(pj, {LS::Q1, LS::Q2, LS::Qw}) && !s_linked) {
                FGraph g = to_fgraph(x.f);
                int ri = node_of(g, i), rj = node_of(g, j);
                identify(g, rj, ri);
                g.node[rj].vid = j;
                auto P = P0;
                P[j] = std::max({2, rank(pi), rank(pj)}) == 2 ? LS::Q2 : LS::Qw;
                emit(t, g, std::move(P), x.val, q);
            }
            // two groups waiting for the same S-vertex
            if (pi == LS::Qws && pj == LS::Qws && !linked) {
                FGraph g = to_fgraph(x.f);
                int ri = node_of(g, i), rj = node_of(g, j);
                identify(g, rj, ri);
                auto P = P0;
                P[j] = LS::Qws;
                emit(t, g, std::move(P), x.val, q);
            }
            // an edge, keeping the other side's representative as j
            auto attach = [&](int gone, int stays, LS st) {
                FGraph g = to_fgraph(x.f);
                int rg = node_of(g, gone), rs = node_of(g, stays);
                g.add_edge(rg, rs, 0);
                g.node[rg].vid = -1;
                g.node[rs].vid = j;
                auto P = P0;
                P[j] = st;
                emit(t, g, std::move(P), x.val, q);
            };
            if (!linked) {
                if (pi == LS::Q1s && in(pj, {LS::Qw, LS::Q2})) attach(i, j, LS::Qw);
                if (pj == LS::Q1s && in(pi, {LS::Qw, LS::Q2})) attach(j, i, LS::Qw);
                if (pi == LS::Qws && in(pj, {LS::Q1, LS::Q1s})) attach(j, i, LS::Qws);
                if (pj == LS::Qws && in(pi, {LS::Q1, LS::Q1s})) attach(i, j, LS::Qws);
            }
        }
        return t;
    }

    Table unite(const Table& l, const Table& r) {
        const long long nl = static_cast<long long>(l.e.size()), nr = static_cast<long long>(r.e.size());
        std::vector<Entry> out(static_cast<std::size_t>(nl * nr));
        std::vector<std::exception_ptr> err(out.size());
        auto body = [&](long long q) {
            try {
                const Entry& a = l.e[q / nr];
                const Entry& b = r.e[q % nr];
                Entry en;
                en.f = forest_union(a.f, b.f);
                en.P = a.P;
                for (int x = 0; x < k_; ++x) {
                    if (b.P[x] == LS::Empty) continue;
                    if (en.P[x] != LS::Empty) throw InternalError("union children share a label");
                    en.P[x] = b.P[x];
                }
                en.val = add(a.val, b.val);
                en.a = static_cast<int>(q / nr);
                en.b = static_cast<int>(q % nr);
                out[q] = std::move(en);
            } catch (...) {
                err[q] = std::current_exception();
            }
        };
        const long long total = nl * nr;
        if (par_) {
#pragma omp parallel for schedule(dynamic, 64)
            for (long long q = 0; q < total; ++q) body(q);
        } else {
            for (long long q = 0; q < total; ++q) body(q);
        }
        Table t;
        for (long long q = 0; q < total; ++q) {
            if (err[q]) std::rethrow_exception(err[q]);
            t.offer(std::move(out[q]));
        }
        return t;
    }

private:
    int k_;
    const std::vector<Weight>& w_;
    const std::vector<char>& s_;
    bool par_;
};

// labels carried by the subgraph at each node
std::vector<std::vector<char>> used_labels(const CliqueExpression& e) {
    std::vector<std::vector<char>> u(e.nodes.size(), std::vector<char>(e.k, 0));
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        switch (nd.op) {
            case KNode::Op::Vertex: u[t][nd.a] = 1; break;
            case KNode::Op::Union:
                for (int x = 0; x < e.k; ++x) u[t][x] = u[nd.c0][x] | u[nd.c1][x];
                break;
            case KNode::Op::Join: u[t] = u[nd.c0]; break;
            case KNode::Op::Rename:
                u[t] = u[nd.c0];
                if (u[t][nd.a] && nd.a != nd.b) u[t][nd.a] = 0, u[t][nd.b] = 1;
                break;
        }
    }
    return u;
}

}  // namespace

void check_sfvs_expression(const CliqueExpression& e) {
    NormalizeStats st;
    normalize_kexpr(e, &st);
    if (st.removed_redundant) throw StructureError("expression has joins that add no new edge; normalize it first");
    auto u = used_labels(e);
    for (const auto& nd : e.nodes) {
        if (nd.op == KNode::Op::Join && nd.a == nd.b) throw StructureError("join of a label with itself");
        if (nd.op != KNode::Op::Union) continue;
        for (int x = 0; x < e.k; ++x)
            if (u[nd.c0][x] && u[nd.c1][x]) throw StructureError("union children share a label; double the labels first");
    }
}

CliqueExpression prepare_sfvs_expression(const CliqueExpression& e) { return double_labels(normalize_kexpr(e)); }

CwResult solve_sfvs_cw(const CliqueExpression& e, const std::vector<Weight>& weights, const std::vector<char>& s, const CwOptions& opt) {
    check_sfvs_expression(e);
    CwResult res;
    if (e.nodes.empty()) {
        res.value = 0;
        return res;
    }
    Solver S(e.k, weights, s, opt.parallel);
    std::vector<Table> tab(e.nodes.size());
    const bool keep = opt.witness;
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        switch (nd.op) {
            case KNode::Op::Vertex: tab[t] = S.leaf(nd.v, nd.a); break;
            case KNode::Op::Join: tab[t] = S.join(tab[nd.c0], nd.a, nd.b); break;
            case KNode::Op::Rename:
                if (nd.a == nd.b) {
                    tab[t] = tab[nd.c0];
                    for (int q = 0; q < static_cast<int>(tab[t].e.size()); ++q) tab[t].e[q].a = q, tab[t].e[q].b = -1, tab[t].e[q].del = false;
                } else {
                    tab[t] = S.rename(tab[nd.c0], nd.a, nd.b);
                }
                break;
            case KNode::Op::Union: tab[t] = S.unite(tab[nd.c0], tab[nd.c1]); break;
        }
        res.total_states += tab[t].e.size();
        res.max_table = std::max(res.max_table, tab[t].e.size());
        if (!keep) {
            if (nd.c0 >= 0) tab[nd.c0] = Table();
            if (nd.c1 >= 0) tab[nd.c1] = Table();
        }
    }
    res.max_forest = S.max_forest;
    const Table& root = tab[e.root()];
    auto witness = [&](int i) {
        std::vector<int> del;
        std::vector<std::pair<int, int>> st{{e.root(), i}};
        while (!st.empty()) {
            auto [t, q] = st.back();
            st.pop_back();
            const KNode& nd = e.nodes[t];
            const Entry& en = tab[t].e[q];
            if (nd.op == KNode::Op::Vertex && en.del) del.push_back(nd.v);
            if (nd.c0 >= 0) st.push_back({nd.c0, en.a});
            if (nd.c1 >= 0) st.push_back({nd.c1, en.b});
        }
        std::sort(del.begin(), del.end());
        return del;
    };
    int best = -1;
    for (int i = 0; i < static_cast<int>(root.e.size()); ++i)
        if (best < 0 || root.e[i].val < root.e[best].val) best = i;
    if (best >= 0) {
        res.value = root.e[best].val;
        if (opt.witness) res.deleted = witness(best);
    }
    if (opt.keep_root)
        for (int i = 0; i < static_cast<int>(root.e.size()); ++i) {
            CwState cs{root.e[i].f, root.e[i].P, root.e[i].val, {}};
            if (opt.witness) cs.deleted = witness(i);
            res.root_states.push_back(std::move(cs));
        }
    return res;
}

NmwcInstance transform_nmwc(const Multigraph& g, const CliqueExpression& e) {
    const int k = e.k;
    NmwcInstance r;
    CliqueExpression& o = r.e;
    o.k = 2 * k + 1;
    std::vector<int> map(e.nodes.size(), -1);
    // terminals live on the shifted copy l + k of their label
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        switch (nd.op) {
            case KNode::Op::Vertex: map[t] = kx_vertex(o, nd.v, nd.a + (g.terminal(nd.v) ? k : 0)); break;
            case KNode::Op::Union: map[t] = kx_union(o, map[nd.c0], map[nd.c1]); break;
            case KNode::Op::Join: {
                int c = map[nd.c0];
                for (int x : {0, k})
                    for (int y : {0, k}) c = kx_join(o, nd.a + x, nd.b + y, c);
                map[t] = c;
                break;
            }
            case KNode::Op::Rename: map[t] = kx_rename(o, nd.a + k, nd.b + k, kx_rename(o, nd.a, nd.b, map[nd.c0])); break;
        }
    }
    const int n = g.n();
    r.sink = n;
    int root = e.nodes.empty() ? -1 : map[e.root()];
    int sv = kx_vertex(o, r.sink, 2 * k);
    root = root < 0 ? sv : kx_union(o, root, sv);
    for (int l = k; l < 2 * k; ++l) root = kx_join(o, l, 2 * k, root);
    o.k = 2 * k + 1;
    r.weights.assign(n + 1, kInf);
    r.s.assign(n + 1, 0);
    for (int v = 0; v < n; ++v)
        if (!g.terminal(v)) r.weights[v] = g.weight(v);
    r.s[r.sink] = 1;
    return r;
}

LabeledGraph auxiliary_graph(const LabeledGraph& gt, const std::vector<LState>& P) {
    LabeledGraph h;
    h.g = gt.g;
    h.label = gt.label;
    for (int i = 0; i < static_cast<int>(P.size()); ++i) {
        std::vector<int> members;
        for (int v = 0; v < gt.g.n(); ++v)
            if (gt.label[v] == i) members.push_back(v);
        switch (P[i]) {
            case LS::Q2:
            case LS::Qw:
            case LS::Qws: {
                int x = h.g.add_vertex(1, P[i] == LS::Qws);
                h.label.push_back(i);
                for (int v : members) {
                    h.g.add_edge(x, v);
                    h.label[v] = -1;
                }
                break;
            }
            case LS::Qf:
                for (int v : members) h.label[v] = -1;
                break;
            default: break;
        }
    }
    return h;
}

namespace {

// simple u-v path (u != v) visiting an S-vertex when need_s is set
bool path_search(const Multigraph& g, int u, int v, bool need_s) {
    std::vector<char> on(g.n(), 0);
    auto dfs = [&](auto&& self, int x, bool s) -> bool {
        if (x == v) return !need_s || s;
        on[x] = 1;
        for (int e : g.inc(x)) {
            int y = g.other(e, x);
            if (!on[y] && self(self, y, s || g.in_s(y))) {
                on[x] = 0;
                return true;
            }
        }
        on[x] = 0;
        return false;
    };
    return dfs(dfs, u, g.in_s(u) != 0);
}

}  // namespace

bool compatible(const LabeledGraph& gt, const std::vector<LState>& P) {
    for (int i = 0; i < static_cast<int>(P.size()); ++i) {
        std::vector<int> mem;
        int s_count = 0;
        for (int v = 0; v < gt.g.n(); ++v)
            if (gt.label[v] == i) {
                mem.push_back(v);
                s_count += gt.g.in_s(v);
            }
        const int cnt = static_cast<int>(mem.size());
        auto pair_path = [&](bool need_s) {
            for (int a = 0; a < cnt; ++a)
                for (int b = a + 1; b < cnt; ++b)
                    if (path_search(gt.g, mem[a], mem[b], need_s)) return true;
            return false;
        };
        bool ok = true;
        switch (P[i]) {
            case LS::Empty: ok = cnt == 0; break;
            case LS::Q1: ok = cnt == 1 && s_count == 0; break;
            case LS::Q1s: ok = cnt == 1 && s_count == 1; break;
            case LS::Q2: ok = cnt >= 2 && s_count == 0 && !pair_path(true); break;
            case LS::Qw: ok = cnt >= 2 && s_count >= 1 && !pair_path(true); break;
            case LS::Qws: ok = cnt >= 2 && !pair_path(false); break;
            case LS::Qf: ok = cnt >= 2; break;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace cyc
