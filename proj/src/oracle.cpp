#include "cyc/oracle.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyc {

namespace {

// Calls bad(len, s_count) on every simple cycle; stops at the first true.
// With s_only, only cycles through an S-vertex are visited.
template <class Bad>
bool find_cycle(const Multigraph& g, bool s_only, Bad&& bad) {
    const int n = g.n();
    std::vector<char> on_path(n, 0), banned(n, 0);
    struct Frame {
        int v;
        size_t it;
    };
    for (int s = 0; s < n; ++s) {
        if (s_only && !g.in_s(s)) continue;
        // cycles whose distinguished start is s: for s_only that is the
        // smallest S-vertex, otherwise the smallest vertex
        std::vector<Frame> st{{s, 0}};
        on_path[s] = 1;
        int len = 0, scount = g.in_s(s) ? 1 : 0, first_edge = -1;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.it == g.inc(f.v).size()) {
                on_path[f.v] = 0;
                if (g.in_s(f.v)) --scount;
                st.pop_back();
                if (!st.empty()) --len;
                if (st.size() == 1) first_edge = -1;
                continue;
            }
            int e = g.inc(f.v)[f.it++];
            int w = g.other(e, f.v);
            if (w == s) {
                if (st.size() >= 2 && e != first_edge && bad(len + 1, scount)) return true;
                continue;
            }
            if (on_path[w] || banned[w]) continue;
            if (!s_only && w < s) continue;
            if (st.size() == 1) first_edge = e;
            on_path[w] = 1;
            if (g.in_s(w)) ++scount;
            ++len;
            st.push_back({w, 0});
        }
        if (s_only) banned[s] = 1;
    }
    return false;
}

Multigraph with_sink(const Multigraph& g) {
    Multigraph h(g.n());
    for (int v = 0; v < g.n(); ++v) h.set_s(v, false);
    int s = h.add_vertex(kInf, true);
    for (auto [u, v] : g.edges()) h.add_edge(u, v);
    for (int t : g.terminals()) h.add_edge(t, s);
    return h;
}

}  // namespace

bool terminals_separated(const Multigraph& g) {
    auto comp = connected_components(g);
    std::vector<char> used(g.n(), 0);
    for (int t : g.terminals()) {
        if (used[comp[t]]) return false;
        used[comp[t]] = 1;
    }
    return true;
}

bool feasible_by_classification(const Multigraph& g, Problem p) {
    if (p == Problem::NMWC) return terminals_separated(g);
    return is_square_cycle_free(g, p);
}

bool feasible_by_cycles(const Multigraph& g, Problem p) {
    switch (p) {
        case Problem::SFVS:
            return !find_cycle(g, true, [](int, int) { return true; });
        case Problem::ECT:
            return !find_cycle(g, false, [](int len, int) { return len % 2 == 0; });
        case Problem::SOCT:
            return !find_cycle(g, true, [](int len, int) { return len % 2 == 1; });
        case Problem::SECT:
            return !find_cycle(g, true, [](int len, int) { return len % 2 == 0; });
        case Problem::OCT:
            return !find_cycle(g, false, [](int len, int) { return len % 2 == 1; });
        case Problem::NMWC:
            return !find_cycle(with_sink(g), true, [](int, int) { return true; });
    }
    return false;
}

bool check_feasible(const Multigraph& g, Problem p) {
    bool a = feasible_by_classification(g, p);
    bool b = feasible_by_cycles(g, p);
    if (a != b) throw InternalError("feasibility strategies disagree");
    return a;
}

Multigraph subdivide(const Multigraph& g) {
    Multigraph h(g.n());
    for (int v = 0; v < g.n(); ++v) {
        h.set_s(v, g.in_s(v));
        h.set_terminal(v, g.terminal(v));
        h.set_weight(v, g.weight(v));
    }
    for (auto [u, v] : g.edges()) {
        int x = h.add_vertex(kInf, false);
        h.add_edge(u, x);
        h.add_edge(x, v);
    }
    return h;
}

namespace {

struct Candidate {
    Weight w;
    std::uint32_t mask;
};

// lexicographic order of the sorted member lists
bool lex_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        std::uint32_t la = a & -a, lb = b & -b;
        if (la != lb) return la < lb;
        a ^= la;
        b ^= lb;
    }
    return a == 0 && b != 0;
}

std::vector<Candidate> candidates(const Multigraph& g, Problem p, int cap) {
    const int n = g.n();
    if (n > cap) throw CapError("instance has " + std::to_string(n) + " vertices, cap is " + std::to_string(cap));
    if (n > 24) throw CapError("vertex cap above 24 is not supported");
    std::vector<Candidate> c;
    c.reserve(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        Weight w = 0;
        for (int v = 0; v < n && w != kInf; ++v)
            if (mask >> v & 1) w = (p == Problem::NMWC && g.terminal(v)) ? kInf : add(w, g.weight(v));
        if (w != kInf) c.push_back({w, mask});
    }
    std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
        if (a.w != b.w) return a.w < b.w;
        return lex_less(a.mask, b.mask);
    });
    return c;
}

std::vector<int> members(std::uint32_t mask) {
    std::vector<int> r;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) r.push_back(v);
    return r;
}

bool ok(const Multigraph& g, Problem p, std::uint32_t mask) {
    return feasible_by_classification(g.remove_vertices(members(mask)), p);
}

}  // namespace

OracleResult brute_force_serial(const Multigraph& g, Problem p, int cap) {
    for (const auto& c : candidates(g, p, cap))
        if (ok(g, p, c.mask)) return {c.w, members(c.mask)};
    return {};
}

OracleResult brute_force(const Multigraph& g, Problem p, int cap) {
    auto cand = candidates(g, p, cap);
    const long long total = static_cast<long long>(cand.size());
    const long long chunk = 512;
    for (long long lo = 0; lo < total; lo += chunk) {
        long long hi = std::min(total, lo + chunk);
        long long best = hi;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
        for (long long i = lo; i < hi; ++i)
            if (i < best && ok(g, p, cand[i].mask)) best = std::min(best, i);
        if (best < hi) return {cand[best].w, members(cand[best].mask)};
    }
    return {};
}

}  // namespace cyc
