#include "cyc/graph.hpp"

#include <algorithm>
#include <queue>

namespace cyc {

std::string weight_str(Weight w) { return w == kInf ? "inf" : std::to_string(w); }

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::SFVS: return "sfvs";
        case Problem::ECT: return "ect";
        case Problem::SOCT: return "soct";
        case Problem::SECT: return "sect";
        case Problem::OCT: return "oct";
        case Problem::NMWC: return "nmwc";
    }
    return "?";
}

Problem parse_problem(const std::string& s) {
    for (Problem p : {Problem::SFVS, Problem::ECT, Problem::SOCT, Problem::SECT, Problem::OCT, Problem::NMWC})
        if (s == problem_name(p)) return p;
    throw ParseError("unknown problem '" + s + "'");
}

Multigraph::Multigraph(int n) : inc_(n), in_s_(n, 0), term_(n, 0), w_(n, 1) {}

int Multigraph::add_vertex(Weight w, bool s) {
    inc_.emplace_back();
    in_s_.push_back(s);
    term_.push_back(0);
    w_.push_back(w);
    return n() - 1;
}

int Multigraph::add_edge(int u, int v) {
    if (u == v) throw StructureError("loop edge at vertex " + std::to_string(u + 1));
    if (u < 0 || v < 0 || u >= n() || v >= n()) throw StructureError("edge endpoint out of range");
    edges_.emplace_back(u, v);
    inc_[u].push_back(m() - 1);
    inc_[v].push_back(m() - 1);
    return m() - 1;
}

bool Multigraph::adjacent(int u, int v) const { return multiplicity(u, v) > 0; }

int Multigraph::multiplicity(int u, int v) const {
    const auto& a = inc_[u].size() < inc_[v].size() ? inc_[u] : inc_[v];
    int c = 0;
    for (int e : a) {
        const auto& [x, y] = edges_[e];
        if ((x == u && y == v) || (x == v && y == u)) ++c;
    }
    return c;
}

void Multigraph::set_weight(int v, Weight w) {
    if (w <= 0) throw StructureError("weight must be positive");
    w_[v] = w;
}

std::vector<int> Multigraph::s_vertices() const {
    std::vector<int> r;
    for (int v = 0; v < n(); ++v)
        if (in_s_[v]) r.push_back(v);
    return r;
}

std::vector<int> Multigraph::terminals() const {
    std::vector<int> r;
    for (int v = 0; v < n(); ++v)
        if (term_[v]) r.push_back(v);
    return r;
}

Multigraph Multigraph::remove_vertices(const std::vector<int>& del) const {
    std::vector<char> gone(n(), 0);
    for (int v : del) gone[v] = 1;
    Multigraph h(n());
    h.in_s_ = in_s_;
    h.term_ = term_;
    h.w_ = w_;
    for (const auto& [u, v] : edges_)
        if (!gone[u] && !gone[v]) h.add_edge(u, v);
    return h;
}

Multigraph Multigraph::induced(const std::vector<int>& keep, std::vector<int>* map) const {
    std::vector<int> mp(n(), -1);
    Multigraph h(static_cast<int>(keep.size()));
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
        mp[keep[i]] = i;
        h.in_s_[i] = in_s_[keep[i]];
        h.term_[i] = term_[keep[i]];
        h.w_[i] = w_[keep[i]];
    }
    for (const auto& [u, v] : edges_)
        if (mp[u] >= 0 && mp[v] >= 0) h.add_edge(mp[u], mp[v]);
    if (map) *map = std::move(mp);
    return h;
}

Multigraph Multigraph::edge_subgraph(const std::vector<int>& eids, std::vector<int>* verts) const {
    std::vector<int> mp(n(), -1), order;
    for (int e : eids)
        for (int x : {edges_[e].first, edges_[e].second})
            if (mp[x] < 0) {
                mp[x] = static_cast<int>(order.size());
                order.push_back(x);
            }
    Multigraph h(static_cast<int>(order.size()));
    for (int i = 0; i < h.n(); ++i) {
        h.in_s_[i] = in_s_[order[i]];
        h.term_[i] = term_[order[i]];
        h.w_[i] = w_[order[i]];
    }
    for (int e : eids) h.add_edge(mp[edges_[e].first], mp[edges_[e].second]);
    if (verts) *verts = std::move(order);
    return h;
}

bool Multigraph::operator==(const Multigraph& o) const {
    return n() == o.n() && in_s_ == o.in_s_ && term_ == o.term_ && w_ == o.w_ && sorted_edges(*this) == sorted_edges(o);
}

std::vector<Edge> sorted_edges(const Multigraph& g) {
    std::vector<Edge> r;
    r.reserve(g.m());
    for (auto [u, v] : g.edges()) r.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(r.begin(), r.end());
    return r;
}

BlockDecomposition biconnected_components(const Multigraph& g) {
    const int n = g.n();
    BlockDecomposition out;
    std::vector<int> disc(n, -1), low(n, 0), estack;
    std::vector<char> is_cut(n, 0);
    int timer = 0;
    struct Frame {
        int v, pe;
        size_t it;
        int children;
    };
    for (int r = 0; r < n; ++r) {
        if (disc[r] >= 0) continue;
        if (g.degree(r) == 0) {
            out.blocks.push_back(Block{{r}, {}, false});
            disc[r] = timer++;
            continue;
        }
        std::vector<Frame> st{{r, -1, 0, 0}};
        disc[r] = low[r] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.it < g.inc(f.v).size()) {
                int e = g.inc(f.v)[f.it++];
                if (e == f.pe) continue;
                int w = g.other(e, f.v);
                if (disc[w] < 0) {
                    estack.push_back(e);
                    disc[w] = low[w] = timer++;
                    f.children++;
                    st.push_back({w, e, 0, 0});
                } else if (disc[w] < disc[f.v]) {
                    estack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                st.pop_back();
                if (st.empty()) break;
                int p = st.back().v;
                low[p] = std::min(low[p], low[done.v]);
                if (low[done.v] >= disc[p]) {
                    if (st.size() > 1 || st.back().children > 1) is_cut[p] = 1;
                    Block b;
                    std::vector<int> vs;
                    while (true) {
                        int e = estack.back();
                        estack.pop_back();
                        b.edges.push_back(e);
                        vs.push_back(g.edge(e).first);
                        vs.push_back(g.edge(e).second);
                        if (e == done.pe) break;
                    }
                    std::sort(vs.begin(), vs.end());
                    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                    b.verts = std::move(vs);
                    std::sort(b.edges.begin(), b.edges.end());
                    b.nontrivial = b.edges.size() >= 2;
                    out.blocks.push_back(std::move(b));
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (is_cut[v]) out.cutvertices.push_back(v);
    return out;
}

std::vector<int> connected_components(const Multigraph& g, int* count) {
    std::vector<int> comp(g.n(), -1);
    int c = 0;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = c;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int e : g.inc(v)) {
                int w = g.other(e, v);
                if (comp[w] < 0) {
                    comp[w] = c;
                    st.push_back(w);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

std::optional<std::vector<std::uint8_t>> compute_potentials(const Multigraph& g, const F2Labeling& lab) {
    std::vector<std::uint8_t> x(g.n(), 0);
    std::vector<char> seen(g.n(), 0);
    for (int r = 0; r < g.n(); ++r) {
        if (seen[r]) continue;
        seen[r] = 1;
        std::queue<int> q;
        q.push(r);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : g.inc(v)) {
                int w = g.other(e, v);
                if (!seen[w]) {
                    seen[w] = 1;
                    x[w] = x[v] ^ lab[e];
                    q.push(w);
                }
            }
        }
    }
    for (int e = 0; e < g.m(); ++e)
        if ((x[g.edge(e).first] ^ x[g.edge(e).second]) != lab[e]) return std::nullopt;
    return x;
}

std::optional<std::vector<std::uint8_t>> bipartition(const Multigraph& g) {
    return compute_potentials(g, F2Labeling(g.m(), 1));
}

const char* class_name(ComponentClass c) {
    switch (c) {
        case ComponentClass::NoSVertexNonBipartite: return "NoSVertexNonBipartite";
        case ComponentClass::NoSVertexBipartite: return "NoSVertexBipartite";
        case ComponentClass::SBipartite: return "SBipartite";
        case ComponentClass::OddCycle: return "OddCycle";
        case ComponentClass::OddSCycleOfBipartiteSubcomponents: return "OddSCycleOfBipartiteSubcomponents";
        case ComponentClass::Violating: return "Violating";
    }
    return "?";
}

namespace {

bool is_single_cycle(const Multigraph& g) {
    if (g.m() != g.n()) return false;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) != 2) return false;
    int cnt = 0;
    connected_components(g, &cnt);
    return cnt == 1;
}

// Last SECT form: S-vertices of degree 2, bipartite pieces of C-S with two
// outgoing edges each, arranged in one cycle, with an odd S-cycle.
bool sect_special_form(const Multigraph& g) {
    const int n = g.n();
    for (int v = 0; v < n; ++v)
        if (g.in_s(v) && g.degree(v) != 2) return false;
    // components of C - S
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (g.in_s(s) || comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = nc;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int e : g.inc(v)) {
                int w = g.other(e, v);
                if (!g.in_s(w) && comp[w] < 0) {
                    comp[w] = nc;
                    st.push_back(w);
                }
            }
        }
        ++nc;
    }
    // 2-colour every piece, count outgoing edges
    std::vector<int> colour(n, -1), outdeg(nc, 0);
    for (int s = 0; s < n; ++s) {
        if (g.in_s(s) || colour[s] >= 0) continue;
        colour[s] = 0;
        std::vector<int> st{s};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int e : g.inc(v)) {
                int w = g.other(e, v);
                if (g.in_s(w)) {
                    outdeg[comp[v]]++;
                    continue;
                }
                if (colour[w] < 0) {
                    colour[w] = colour[v] ^ 1;
                    st.push_back(w);
                } else if (colour[w] == colour[v]) {
                    return false;
                }
            }
        }
    }
    for (int c = 0; c < nc; ++c)
        if (outdeg[c] != 2) return false;
    // Walk the cycle of pieces and S-vertices starting from an S-vertex and
    // accumulate the parity of one S-cycle.
    int start = -1;
    int ns = 0;
    for (int v = 0; v < n; ++v)
        if (g.in_s(v)) {
            ++ns;
            if (start < 0) start = v;
        }
    if (start < 0) return false;
    int steps = 0, parity = 0, visited_s = 0, visited_pieces = 0;
    int cur = start, via = g.inc(start)[0];
    while (true) {
        // cur is an S-vertex, leave along edge `via`
        int w = g.other(via, cur);
        parity ^= 1;
        ++visited_s;
        if (g.in_s(w)) {
            if (w == start) break;
            int nxt = g.inc(w)[0] == via ? g.inc(w)[1] : g.inc(w)[0];
            cur = w;
            via = nxt;
        } else {
            // traverse piece: find its other outgoing edge
            int c = comp[w];
            ++visited_pieces;
            int exit_e = -1, exit_v = -1;
            for (int v = 0; v < n && exit_e < 0; ++v) {
                if (comp[v] != c) continue;
                for (int e : g.inc(v)) {
                    if (e == via) continue;
                    if (g.in_s(g.other(e, v))) {
                        exit_e = e;
                        exit_v = v;
                        break;
                    }
                }
            }
            if (exit_e < 0) return false;
            parity ^= colour[w] ^ colour[exit_v];
            parity ^= 1;
            int s2 = g.other(exit_e, exit_v);
            if (s2 == start) break;
            int nxt = g.inc(s2)[0] == exit_e ? g.inc(s2)[1] : g.inc(s2)[0];
            cur = s2;
            via = nxt;
        }
        if (++steps > n + 2) return false;
    }
    // the walk must cover every S-vertex and every piece exactly once
    if (visited_s + visited_pieces < ns + nc) return false;
    return parity == 1;
}

}  // namespace

ComponentClass classify_component(const Multigraph& g, Problem p) {
    bool has_s = false;
    for (int v = 0; v < g.n(); ++v) has_s |= g.in_s(v) != 0;
    if (p == Problem::OCT) has_s = true;
    const bool bip = bipartition(g).has_value();
    auto no_s = [&] { return bip ? ComponentClass::NoSVertexBipartite : ComponentClass::NoSVertexNonBipartite; };
    switch (p) {
        case Problem::SFVS:
        case Problem::NMWC:
            return has_s ? ComponentClass::Violating : no_s();
        case Problem::ECT:
            return is_single_cycle(g) && g.n() % 2 == 1 ? ComponentClass::OddCycle : ComponentClass::Violating;
        case Problem::SOCT:
        case Problem::OCT:
            if (!has_s) return no_s();
            return bip ? ComponentClass::SBipartite : ComponentClass::Violating;
        case Problem::SECT:
            if (!has_s) return no_s();
            return sect_special_form(g) ? ComponentClass::OddSCycleOfBipartiteSubcomponents : ComponentClass::Violating;
    }
    return ComponentClass::Violating;
}

bool is_square_cycle_free(const Multigraph& g, Problem p) {
    if (p == Problem::OCT) return bipartition(g).has_value();
    auto bd = biconnected_components(g);
    for (const auto& b : bd.blocks) {
        if (!b.nontrivial) continue;
        if (classify_component(g.edge_subgraph(b.edges), p) == ComponentClass::Violating) return false;
    }
    return true;
}

}  // namespace cyc
