#include "cyc/lowerbound.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace cyc {

int CnfFormula::rho() const {
    int r = 0;
    for (const auto& c : clauses) r += static_cast<int>(c.size());
    return r;
}

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, declared_m = -1;
    bool header = false;
    std::vector<int> cur;
    auto fail = [&](const std::string& msg) { throw ParseError(msg + " at line " + std::to_string(lineno)); };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
        if (tok == "p") {
            std::string kind;
            if (header) fail("duplicate header");
            if (!(ls >> kind >> f.n >> declared_m) || kind != "cnf" || f.n < 0 || declared_m < 0) fail("malformed header");
            header = true;
            continue;
        }
        if (!header) fail("clause before header");
        ls.clear();
        ls.str(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (cur.empty()) fail("empty clause");
                f.clauses.push_back(cur);
                cur.clear();
                continue;
            }
            if (std::llabs(lit) > f.n) fail("literal out of range");
            cur.push_back(static_cast<int>(lit));
        }
        if (!ls.eof()) fail("bad token");
    }
    if (!header) throw ParseError("missing header at line " + std::to_string(lineno));
    if (!cur.empty()) f.clauses.push_back(cur);
    if (static_cast<int>(f.clauses.size()) != declared_m) throw ParseError("clause count does not match header at line " + std::to_string(lineno));
    return f;
}

std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream o;
    o << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int l : c) o << l << ' ';
        o << "0\n";
    }
    return o.str();
}

std::vector<bool> parse_assignment(const std::string& text, int n) {
    std::vector<bool> tau(n, false);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "v" || tok == "s" || tok == "SAT" || tok == "SATISFIABLE") continue;
        long long l;
        try {
            l = std::stoll(tok);
        } catch (...) {
            throw ParseError("bad literal '" + tok + "' in assignment");
        }
        if (l == 0) continue;
        if (std::llabs(l) > n) throw ParseError("assignment literal out of range");
        tau[std::llabs(l) - 1] = l > 0;
    }
    return tau;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& tau) {
    for (const auto& c : f.clauses) {
        bool ok = false;
        for (int l : c) {
            int v = std::abs(l) - 1;
            bool val = v < static_cast<int>(tau.size()) && tau[v];
            if ((l > 0) == val) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

Arrow add_arrow(Multigraph& g, int u, int v) {
    Arrow a;
    a.u = u;
    a.v = v;
    for (int& x : a.a) x = g.add_vertex();
    for (int& x : a.b) x = g.add_vertex();
    const int path[5] = {u, a.a[0], a.a[1], a.a[2], v};
    for (int i = 0; i < 4; ++i) {
        g.add_edge(path[i], path[i + 1]);
        g.add_edge(path[i], a.b[i]);
        g.add_edge(a.b[i], path[i + 1]);
    }
    return a;
}

GadgetInstance build_instance(const CnfFormula& phi0) {
    if (phi0.clauses.empty()) throw StructureError("formula has no clauses");
    for (const auto& c : phi0.clauses)
        if (c.empty()) throw StructureError("formula has an empty clause");
    GadgetInstance I;
    I.phi = phi0;
    if (I.phi.n % 2) ++I.phi.n;  // dummy variable
    if (I.phi.n == 0) I.phi.n = 2;
    const int n = I.phi.n, m = static_cast<int>(I.phi.clauses.size()), rho = I.phi.rho();
    const int copies = n + 1, len = 2 * m;
    I.alpha = static_cast<long long>(n + 1) * (static_cast<long long>(n) * m + 2LL * rho);
    Multigraph& g = I.g;
    for (long long x = 0; x <= I.alpha; ++x) I.A.push_back(g.add_vertex());
    for (long long x = 0; x <= I.alpha; ++x) I.B.push_back(g.add_vertex());

    I.path.assign(copies, std::vector<std::vector<int>>(n, std::vector<int>(len)));
    for (int k = 0; k < copies; ++k)
        for (int j = 0; j < len; ++j)
            for (int i = 0; i < n; ++i) I.path[k][i][j] = g.add_vertex();

    // literal vertices enter the cycle in the order the expression meets them
    I.cycle_order.resize(m);
    for (int c = 0; c < m; ++c) {
        const auto& cl = I.phi.clauses[c];
        std::vector<int> ord(cl.size());
        for (size_t p = 0; p < cl.size(); ++p) ord[p] = static_cast<int>(p);
        auto key = [&](int p) {
            int v = std::abs(cl[p]) - 1;
            return std::make_tuple(v / 2, cl[p] < 0, v % 2, p);
        };
        std::sort(ord.begin(), ord.end(), [&](int x, int y) { return key(x) < key(y); });
        I.cycle_order[c] = ord;
    }

    I.cycle.assign(copies, std::vector<std::vector<int>>(m));
    I.lit_vertex.assign(copies, std::vector<std::vector<int>>(m));
    I.arrows.assign(copies, std::vector<std::vector<Arrow>>(m));
    for (int k = 0; k < copies; ++k)
        for (int c = 0; c < m; ++c) {
            const auto& cl = I.phi.clauses[c];
            const int t = static_cast<int>(cl.size());
            auto& lv = I.lit_vertex[k][c];
            for (int p = 0; p < t; ++p) lv.push_back(g.add_vertex());
            for (int p : I.cycle_order[c]) I.cycle[k][c].push_back(lv[p]);
            int extra = t == 1 ? 2 : (t % 2 == 0 ? 1 : 0);
            for (int x = 0; x < extra; ++x) I.cycle[k][c].push_back(g.add_vertex());
            const auto& cyc = I.cycle[k][c];
            for (size_t x = 0; x < cyc.size(); ++x) g.add_edge(cyc[x], cyc[(x + 1) % cyc.size()]);
            for (int p = 0; p < t; ++p) {
                int v = std::abs(cl[p]) - 1;
                int u = I.path[k][v][cl[p] > 0 ? 2 * c : 2 * c + 1];
                I.arrows[k][c].push_back(add_arrow(g, u, lv[p]));
            }
        }

    // the long paths P*_i, their crossings, and the biclique
    auto at = [&](int i, int J) { return I.path[J / len][i][J % len]; };
    const int total = copies * len;
    for (int i = 0; i < n; ++i)
        for (int J = 0; J + 1 < total; ++J) g.add_edge(at(i, J), at(i, J + 1));
    for (int i = 0; i + 1 < n; i += 2)
        for (int J = 1; J + 1 < total; J += 2) {
            g.add_edge(at(i, J), at(i + 1, J + 1));
            g.add_edge(at(i + 1, J), at(i, J + 1));
        }
    for (int a : I.A)
        for (int b : I.B) g.add_edge(a, b);
    for (int i = 0; i < n; ++i)
        for (int J = 0; J < total; ++J)
            for (int x : (i % 2 == 0 ? I.A : I.B)) g.add_edge(x, at(i, J));
    return I;
}

std::vector<int> construct_oct_from_assignment(const GadgetInstance& I, const std::vector<bool>& tau0) {
    std::vector<bool> tau = tau0;
    tau.resize(I.phi.n, false);
    if (!satisfies(I.phi, tau)) throw StructureError("assignment does not satisfy the formula");
    std::vector<char> in(I.g.n(), 0);
    const int copies = static_cast<int>(I.path.size());
    for (int k = 0; k < copies; ++k)
        for (int i = 0; i < I.phi.n; ++i)
            for (size_t j = 0; j < I.path[k][i].size(); ++j)
                if ((j % 2 == 0) == static_cast<bool>(tau[i])) in[I.path[k][i][j]] = 1;
    for (const auto& per_copy : I.arrows)
        for (const auto& per_clause : per_copy)
            for (const Arrow& a : per_clause) {
                if (in[a.u]) {
                    in[a.a[1]] = 1;
                    in[a.v] = 1;
                } else {
                    in[a.a[0]] = 1;
                    in[a.a[2]] = 1;
                }
            }
    std::vector<int> T;
    for (int v = 0; v < I.g.n(); ++v)
        if (in[v]) T.push_back(v);
    return T;
}

namespace {

class Emitter {
public:
    explicit Emitter(int k) : cnt_(k, 0) { e.k = k; }

    CliqueExpression e;

    void vertex(int v, int label) {
        int x = kx_vertex(e, v, label);
        cur_ = cur_ < 0 ? x : kx_union(e, cur_, x);
        ++cnt_[label];
    }
    void join(int i, int j) {
        if (cnt_[i] && cnt_[j]) cur_ = kx_join(e, i, j, cur_);
    }
    void rename(int i, int j) {
        if (i == j || !cnt_[i]) return;
        cur_ = kx_rename(e, i, j, cur_);
        cnt_[j] += cnt_[i];
        cnt_[i] = 0;
    }
    int count(int l) const { return cnt_[l]; }

    void add_working(int l) { pool_.push_back(l); }
    int take() {
        if (pool_.empty()) throw InternalError("out of working labels");
        int l = pool_.back();
        pool_.pop_back();
        return l;
    }
    void give(int l) {
        if (cnt_[l]) throw InternalError("returning a non-empty working label");
        pool_.push_back(l);
    }

private:
    std::vector<int> cnt_;
    std::vector<int> pool_;
    int cur_ = -1;
};

}  // namespace

CliqueExpression emit_linear_kexpr(const GadgetInstance& I) {
    const int n = I.phi.n, m = static_cast<int>(I.phi.clauses.size());
    const int K = I.label_budget();
    const int FIN = 0, LA_ = n / 2 + 1, LB_ = n / 2 + 2, CA = n / 2 + 3, CB = n / 2 + 4;
    auto ext = [&](int r) { return 1 + r; };
    Emitter E(K);
    for (int w = n / 2 + 5; w < K; ++w) E.add_working(w);

    for (int a : I.A) E.vertex(a, LA_);
    for (int b : I.B) E.vertex(b, LB_);
    E.join(LA_, LB_);

    // hooks a finished cycle vertex sitting alone in label w into the open path
    auto attach = [&](int w) {
        if (!E.count(CB)) {
            E.rename(w, CB);
        } else if (!E.count(CA)) {
            E.join(w, CB);
            E.rename(w, CA);
        } else {
            E.join(w, CA);
            E.rename(CA, FIN);
            E.rename(w, CA);
        }
        E.give(w);
    };
    // arrow from the single vertex in label U to a new clause vertex
    auto arrow = [&](int U, const Arrow& A) {
        int w1 = E.take(), w2 = E.take(), w3 = E.take();
        E.vertex(A.a[0], w1);
        E.join(U, w1);
        E.vertex(A.b[0], w2);
        E.join(U, w2);
        E.join(w1, w2);
        E.rename(w2, FIN);
        E.vertex(A.a[1], w2);
        E.join(w1, w2);
        E.vertex(A.b[1], w3);
        E.join(w3, w1);
        E.join(w3, w2);
        E.rename(w3, FIN);
        E.rename(w1, FIN);
        E.vertex(A.a[2], w1);
        E.join(w2, w1);
        E.vertex(A.b[2], w3);
        E.join(w3, w2);
        E.join(w3, w1);
        E.rename(w3, FIN);
        E.rename(w2, FIN);
        E.vertex(A.v, w2);
        E.join(w1, w2);
        E.vertex(A.b[3], w3);
        E.join(w3, w1);
        E.join(w3, w2);
        E.rename(w3, FIN);
        E.rename(w1, FIN);
        E.give(w1);
        E.give(w3);
        attach(w2);
    };
    auto arrows_from = [&](int k, int c, int row, bool neg, int U) {
        const auto& cl = I.phi.clauses[c];
        for (int p : I.cycle_order[c]) {
            int v = std::abs(cl[p]) - 1;
            if (v == row && (cl[p] < 0) == neg) arrow(U, I.arrows[k][c][p]);
        }
    };

    const int copies = static_cast<int>(I.path.size());
    for (int k = 0; k < copies; ++k)
        for (int c = 0; c < m; ++c) {
            for (int r = 0; r < n / 2; ++r) {
                const int i1 = 2 * r, i2 = 2 * r + 1;
                int y1 = E.take(), y2 = E.take();
                E.vertex(I.path[k][i1][2 * c], y1);
                E.vertex(I.path[k][i2][2 * c], y2);
                arrows_from(k, c, i1, false, y1);
                arrows_from(k, c, i2, false, y2);
                E.join(ext(r), y1);
                E.join(ext(r), y2);
                E.rename(ext(r), FIN);
                E.join(LA_, y1);
                E.join(LB_, y2);

                int z1 = E.take();
                E.vertex(I.path[k][i1][2 * c + 1], z1);
                E.join(y1, z1);
                int z2 = E.take();
                E.vertex(I.path[k][i2][2 * c + 1], z2);
                E.join(y2, z2);
                E.rename(y1, FIN);
                E.rename(y2, FIN);
                E.give(y1);
                E.give(y2);
                E.join(LA_, z1);
                E.join(LB_, z2);
                arrows_from(k, c, i1, true, z1);
                arrows_from(k, c, i2, true, z2);
                E.rename(z1, ext(r));
                E.rename(z2, ext(r));
                E.give(z1);
                E.give(z2);
            }
            // padding vertices, then close the clause cycle
            const auto& cyc = I.cycle[k][c];
            for (size_t x = I.phi.clauses[c].size(); x < cyc.size(); ++x) {
                int w = E.take();
                E.vertex(cyc[x], w);
                attach(w);
            }
            E.join(CA, CB);
            E.rename(CA, FIN);
            E.rename(CB, FIN);
        }
    return std::move(E.e);
}

}  // namespace cyc
