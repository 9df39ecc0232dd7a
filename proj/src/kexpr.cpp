#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cyc/io.hpp"

namespace cyc {

int CliqueExpression::vertex_count() const {
    int c = 0;
    for (const auto& nd : nodes) c += nd.op == KNode::Op::Vertex;
    return c;
}

int kx_vertex(CliqueExpression& e, int v, int label) {
    KNode nd;
    nd.op = KNode::Op::Vertex;
    nd.v = v;
    nd.a = label;
    e.nodes.push_back(nd);
    e.k = std::max(e.k, label + 1);
    return e.root();
}

int kx_union(CliqueExpression& e, int l, int r) {
    KNode nd;
    nd.op = KNode::Op::Union;
    nd.c0 = l;
    nd.c1 = r;
    e.nodes.push_back(nd);
    return e.root();
}

int kx_join(CliqueExpression& e, int i, int j, int c) {
    KNode nd;
    nd.op = KNode::Op::Join;
    nd.a = i;
    nd.b = j;
    nd.c0 = c;
    e.nodes.push_back(nd);
    e.k = std::max({e.k, i + 1, j + 1});
    return e.root();
}

int kx_rename(CliqueExpression& e, int i, int j, int c) {
    KNode nd;
    nd.op = KNode::Op::Rename;
    nd.a = i;
    nd.b = j;
    nd.c0 = c;
    e.nodes.push_back(nd);
    e.k = std::max({e.k, i + 1, j + 1});
    return e.root();
}

CliqueExpression parse_kexpr(const std::string& text) {
    // tokenize, tracking line numbers for messages
    struct Tok {
        std::string s;
        int line;
    };
    std::vector<Tok> toks;
    int line = 1;
    for (size_t i = 0; i < text.size();) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ';' || (c == 'c' && (i == 0 || text[i - 1] == '\n') && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]))))) {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '(' || c == ')') {
            toks.push_back({std::string(1, c), line});
            ++i;
        } else {
            size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' && text[j] != ')') ++j;
            toks.push_back({text.substr(i, j - i), line});
            i = j;
        }
    }
    auto fail = [](const std::string& m, int ln) -> void { throw ParseError(m + " at line " + std::to_string(ln)); };
    auto to_int = [&](const Tok& t) {
        long long x = 0;
        size_t pos = 0;
        try {
            x = std::stoll(t.s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != t.s.size() || pos == 0) fail("expected integer, got '" + t.s + "'", t.line);
        return x;
    };

    CliqueExpression e;
    size_t p = 0;
    int declared_k = -1;
    if (p < toks.size() && toks[p].s == "k") {
        if (p + 1 >= toks.size()) fail("missing label count", toks[p].line);
        declared_k = static_cast<int>(to_int(toks[p + 1]));
        if (declared_k < 1) fail("label count must be positive", toks[p].line);
        p += 2;
    }
    struct Frame {
        char op;
        int line;
        std::vector<long long> args;
        std::vector<int> kids;
    };
    std::vector<Frame> st;
    std::unordered_set<long long> seen_ids;
    int root = -1;
    while (p < toks.size()) {
        const Tok& t = toks[p++];
        if (t.s == "(") {
            if (p >= toks.size()) fail("unexpected end", t.line);
            const Tok& o = toks[p++];
            if (o.s.size() != 1 || std::string("vujr").find(o.s[0]) == std::string::npos) fail("unknown operation '" + o.s + "'", o.line);
            if (st.empty() && root >= 0) fail("trailing expression", t.line);
            st.push_back({o.s[0], o.line, {}, {}});
        } else if (t.s == ")") {
            if (st.empty()) fail("unbalanced ')'", t.line);
            Frame f = std::move(st.back());
            st.pop_back();
            int idx = -1;
            auto label = [&](long long x) {
                if (x < 1 || (declared_k > 0 && x > declared_k)) fail("undefined label " + std::to_string(x), f.line);
                return static_cast<int>(x - 1);
            };
            switch (f.op) {
                case 'v':
                    if (f.args.size() != 2 || !f.kids.empty()) fail("vertex creation takes id and label", f.line);
                    if (f.args[0] < 1) fail("vertex id must be positive", f.line);
                    if (!seen_ids.insert(f.args[0]).second) fail("vertex " + std::to_string(f.args[0]) + " created twice", f.line);
                    idx = kx_vertex(e, static_cast<int>(f.args[0] - 1), label(f.args[1]));
                    break;
                case 'u':
                    if (!f.args.empty() || f.kids.size() != 2) fail("union takes two subexpressions", f.line);
                    idx = kx_union(e, f.kids[0], f.kids[1]);
                    break;
                case 'j':
                case 'r': {
                    if (f.args.size() != 2 || f.kids.size() != 1) fail("join/rename take two labels and one subexpression", f.line);
                    int a = label(f.args[0]), b = label(f.args[1]);
                    if (f.op == 'j') {
                        if (a == b) fail("join of a label with itself", f.line);
                        idx = kx_join(e, a, b, f.kids[0]);
                    } else {
                        idx = kx_rename(e, a, b, f.kids[0]);
                    }
                    break;
                }
            }
            if (st.empty())
                root = idx;
            else
                st.back().kids.push_back(idx);
        } else {
            if (st.empty()) fail("unexpected token '" + t.s + "'", t.line);
            if (!st.back().kids.empty()) fail("argument after subexpression", t.line);
            st.back().args.push_back(to_int(t));
        }
    }
    if (!st.empty()) fail("unbalanced '('", line);
    if (root < 0) fail("empty expression", line);
    const int nv = e.vertex_count();
    for (long long id : seen_ids)
        if (id > nv) throw ParseError("vertex ids must be 1.." + std::to_string(nv));
    if (declared_k > 0) e.k = std::max(e.k, declared_k);
    return e;
}

std::string write_kexpr(const CliqueExpression& e) {
    std::string out = "k " + std::to_string(e.k) + "\n";
    if (e.nodes.empty()) return out;
    // explicit stack: (node, phase)
    std::vector<std::pair<int, int>> st{{e.root(), 0}};
    while (!st.empty()) {
        auto [t, ph] = st.back();
        st.pop_back();
        const KNode& nd = e.nodes[t];
        if (ph == 1) {
            out += ')';
            continue;
        }
        switch (nd.op) {
            case KNode::Op::Vertex:
                out += "(v " + std::to_string(nd.v + 1) + ' ' + std::to_string(nd.a + 1) + ')';
                break;
            case KNode::Op::Union:
                out += "(u ";
                st.push_back({t, 1});
                st.push_back({nd.c1, 0});
                st.push_back({nd.c0, 0});
                break;
            case KNode::Op::Join:
            case KNode::Op::Rename:
                out += std::string("(") + (nd.op == KNode::Op::Join ? "j " : "r ") + std::to_string(nd.a + 1) + ' ' +
                       std::to_string(nd.b + 1) + ' ';
                st.push_back({t, 1});
                st.push_back({nd.c0, 0});
                break;
        }
    }
    out += '\n';
    return out;
}

namespace {

// Bottom-up evaluation; `on_join` receives (node, new edge).
template <class OnJoin>
LabeledGraph evaluate(const CliqueExpression& e, OnJoin&& on_join) {
    const int nv = e.vertex_count();
    LabeledGraph lg;
    lg.g = Multigraph(nv);
    lg.label.assign(nv, -1);
    if (e.nodes.empty()) return lg;
    std::unordered_set<std::uint64_t> present;
    auto key = [](int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    };
    std::vector<std::vector<std::vector<int>>> lists(e.nodes.size());
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        auto& L = lists[t];
        switch (nd.op) {
            case KNode::Op::Vertex:
                if (nd.v < 0 || nd.v >= nv) throw StructureError("vertex id out of range");
                L.assign(e.k, {});
                L[nd.a].push_back(nd.v);
                break;
            case KNode::Op::Union: {
                L = std::move(lists[nd.c0]);
                auto& R = lists[nd.c1];
                for (int i = 0; i < e.k; ++i) L[i].insert(L[i].end(), R[i].begin(), R[i].end());
                R.clear();
                R.shrink_to_fit();
                break;
            }
            case KNode::Op::Join:
                L = std::move(lists[nd.c0]);
                for (int x : L[nd.a])
                    for (int y : L[nd.b])
                        if (present.insert(key(x, y)).second) {
                            lg.g.add_edge(x, y);
                            on_join(static_cast<int>(t), Edge{std::min(x, y), std::max(x, y)});
                        }
                break;
            case KNode::Op::Rename:
                L = std::move(lists[nd.c0]);
                if (nd.a != nd.b) {
                    L[nd.b].insert(L[nd.b].end(), L[nd.a].begin(), L[nd.a].end());
                    L[nd.a].clear();
                }
                break;
        }
    }
    const auto& L = lists[e.root()];
    for (int i = 0; i < e.k; ++i)
        for (int v : L[i]) lg.label[v] = i;
    for (int v = 0; v < nv; ++v)
        if (lg.label[v] < 0) throw StructureError("vertex " + std::to_string(v + 1) + " never created");
    return lg;
}

}  // namespace

LabeledGraph eval_kexpr(const CliqueExpression& e) {
    return evaluate(e, [](int, Edge) {});
}

std::vector<std::vector<Edge>> join_contributions(const CliqueExpression& e) {
    std::vector<std::vector<Edge>> out(e.nodes.size());
    evaluate(e, [&](int t, Edge ed) { out[t].push_back(ed); });
    return out;
}

bool is_linear(const CliqueExpression& e) {
    for (const auto& nd : e.nodes)
        if (nd.op == KNode::Op::Union && e.nodes[nd.c0].op != KNode::Op::Vertex && e.nodes[nd.c1].op != KNode::Op::Vertex)
            return false;
    return true;
}

int max_label_used(const CliqueExpression& e) {
    int m = 0;
    for (const auto& nd : e.nodes) {
        if (nd.op == KNode::Op::Union) continue;
        m = std::max(m, nd.a + 1);
        if (nd.op != KNode::Op::Vertex) m = std::max(m, nd.b + 1);
    }
    return m;
}

CliqueExpression extract(const CliqueExpression& e, int root) {
    std::vector<int> mark(e.nodes.size(), 0), st{root};
    while (!st.empty()) {
        int t = st.back();
        st.pop_back();
        mark[t] = 1;
        const auto& nd = e.nodes[t];
        if (nd.c0 >= 0) st.push_back(nd.c0);
        if (nd.c1 >= 0) st.push_back(nd.c1);
    }
    CliqueExpression out;
    out.k = e.k;
    std::vector<int> mp(e.nodes.size(), -1);
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        if (!mark[t]) continue;
        KNode nd = e.nodes[t];
        if (nd.c0 >= 0) nd.c0 = mp[nd.c0];
        if (nd.c1 >= 0) nd.c1 = mp[nd.c1];
        mp[t] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(nd);
    }
    return out;
}

// ---- normalization: FindRepetition followed by splicing out marked joins ----

CliqueExpression normalize_kexpr(const CliqueExpression& e, NormalizeStats* stats) {
    const int k = e.k;
    const size_t N = e.nodes.size();
    // intrusive singly linked lists of join nodes
    std::vector<int> next(N, -1);
    struct List {
        int head = -1, tail = -1;
    };
    auto concat = [&](List a, List b) {
        if (a.head < 0) return b;
        if (b.head < 0) return a;
        next[a.tail] = b.head;
        return List{a.head, b.tail};
    };
    auto pkey = [k](int a, int b) { return a < b ? a * k + b : b * k + a; };
    struct State {
        std::vector<char> B;
        std::unordered_map<int, List> L;  // only pairs with a non-empty list
    };
    std::vector<State> S(N);
    std::vector<char> R(N, 0);
    int redundant = 0, trivial = 0;
    for (size_t t = 0; t < N; ++t) {
        const KNode& nd = e.nodes[t];
        State& s = S[t];
        switch (nd.op) {
            case KNode::Op::Vertex:
                s.B.assign(k, 0);
                s.B[nd.a] = 1;
                break;
            case KNode::Op::Union: {
                s = std::move(S[nd.c0]);
                State& r = S[nd.c1];
                for (int i = 0; i < k; ++i) s.B[i] |= r.B[i];
                for (auto& [key, lst] : r.L) s.L[key] = concat(s.L.count(key) ? s.L[key] : List{}, lst);
                r = State{};
                break;
            }
            case KNode::Op::Join: {
                s = std::move(S[nd.c0]);
                int key = pkey(nd.a, nd.b);
                if (!s.B[nd.a] || !s.B[nd.b]) {
                    R[t] = 1;
                    ++trivial;
                    s.L.erase(key);
                } else {
                    auto it = s.L.find(key);
                    if (it != s.L.end()) {
                        for (int x = it->second.head; x >= 0; x = next[x]) {
                            R[x] = 1;
                            ++redundant;
                        }
                    }
                    next[t] = -1;
                    s.L[key] = List{static_cast<int>(t), static_cast<int>(t)};
                }
                break;
            }
            case KNode::Op::Rename: {
                s = std::move(S[nd.c0]);
                const int i = nd.a, j = nd.b;
                if (i == j) break;
                std::unordered_map<int, List> L2;
                std::vector<std::pair<int, List>> moved;  // lists landing on (a, j)
                for (auto& [key, lst] : s.L) {
                    int a = key / k, b = key % k;
                    bool hi = a == i || b == i, hj = a == j || b == j;
                    if (!hi && !hj) {
                        L2[key] = lst;
                    } else if (hi && hj) {
                        // pair {i,j} collapses inside label j
                    } else {
                        int other = hi ? (a == i ? b : a) : (a == j ? b : a);
                        moved.push_back({pkey(other, j), lst});
                    }
                }
                for (auto& [key, lst] : moved) L2[key] = concat(L2.count(key) ? L2[key] : List{}, lst);
                s.L = std::move(L2);
                s.B[j] = s.B[i] | s.B[j];
                s.B[i] = 0;
                break;
            }
        }
    }
    if (stats) {
        stats->removed_redundant = redundant;
        stats->removed_trivial = trivial;
    }
    // second traversal: replace marked nodes by their child
    CliqueExpression out;
    out.k = e.k;
    std::vector<int> mp(N, -1);
    for (size_t t = 0; t < N; ++t) {
        KNode nd = e.nodes[t];
        if (R[t]) {
            mp[t] = mp[nd.c0];
            continue;
        }
        if (nd.c0 >= 0) nd.c0 = mp[nd.c0];
        if (nd.c1 >= 0) nd.c1 = mp[nd.c1];
        out.nodes.push_back(nd);
        mp[t] = static_cast<int>(out.nodes.size()) - 1;
    }
    // a removed root leaves its child as the last node already
    if (!out.nodes.empty() && mp[N - 1] != out.root()) out = extract(out, mp[N - 1]);
    return out;
}

CliqueExpression double_labels(const CliqueExpression& e) {
    const int k = e.k;
    CliqueExpression out;
    out.k = 2 * k;
    std::vector<int> mp(e.nodes.size(), -1);
    std::vector<std::vector<char>> used(e.nodes.size());
    for (size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        auto& U = used[t];
        switch (nd.op) {
            case KNode::Op::Vertex:
                U.assign(k, 0);
                U[nd.a] = 1;
                mp[t] = kx_vertex(out, nd.v, nd.a);
                break;
            case KNode::Op::Join:
                U = std::move(used[nd.c0]);
                mp[t] = kx_join(out, nd.a, nd.b, mp[nd.c0]);
                break;
            case KNode::Op::Rename:
                U = std::move(used[nd.c0]);
                if (nd.a != nd.b) {
                    U[nd.b] |= U[nd.a];
                    U[nd.a] = 0;
                }
                mp[t] = kx_rename(out, nd.a, nd.b, mp[nd.c0]);
                break;
            case KNode::Op::Union: {
                U = std::move(used[nd.c0]);
                auto& V = used[nd.c1];
                int r = mp[nd.c1];
                std::vector<int> shared;
                for (int i = 0; i < k; ++i)
                    if (U[i] && V[i]) shared.push_back(i);
                for (int i : shared) r = kx_rename(out, i, i + k, r);
                int u = kx_union(out, mp[nd.c0], r);
                for (int i : shared) u = kx_rename(out, i + k, i, u);
                for (int i = 0; i < k; ++i) U[i] |= V[i];
                V.clear();
                mp[t] = u;
                break;
            }
        }
    }
    out.k = 2 * k;
    return out;
}

}  // namespace cyc
