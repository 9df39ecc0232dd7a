#include "cyc/tw.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <string>
#include <unordered_map>

namespace cyc {

namespace {

struct Entry {
    Weight val = kInf;
    Forest f;
    int a = -1, b = -1;  // child entries
    bool del = false;    // introduce: v deleted
};

struct Table {
    std::vector<Entry> e;
    std::unordered_map<std::string, int> idx;
    Weight cap = kInf;  // values above a known solution cannot lead to an optimum

    void offer(const std::string& key, Entry&& en) {
        if (en.val == kInf || en.val > cap) return;
        auto [it, fresh] = idx.try_emplace(key, static_cast<int>(e.size()));
        if (fresh)
            e.push_back(std::move(en));
        else if (en.val < e[it->second].val)
            e[it->second] = std::move(en);
    }
};

class TwSolver {
public:
    TwSolver(const Multigraph& g, Problem p, const TwOptions& opt) : g_(g), p_(p == Problem::OCT ? Problem::SOCT : p), oct_(p == Problem::OCT), opt_(opt) {
        if (opt.prune) cap_ = greedy_bound(p);
    }

    Table fresh() const {
        Table t;
        t.cap = cap_;
        return t;
    }

    // weight of a greedy solution: keep vertices heaviest first while the
    // kept part stays feasible
    Weight greedy_bound(Problem p) const {
        std::vector<int> order(g_.n());
        for (int v = 0; v < g_.n(); ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g_.weight(a) > g_.weight(b); });
        std::vector<int> keep;
        Weight total = 0;
        for (int v : order) {
            keep.push_back(v);
            if (is_square_cycle_free(g_.induced(keep), p)) continue;
            keep.pop_back();
            total = add(total, g_.weight(v));
        }
        return total;
    }

    bool s_of(int v) const {
        if (oct_) return true;
        if (p_ == Problem::ECT) return false;
        return g_.in_s(v);
    }

    void check(const Forest& f) {
        const int act = static_cast<int>(f.active_ids().size());
        if (f.size() > size_bound(p_, act)) throw InternalError("reduced forest exceeds its size bound");
        stats.max_forest = std::max(stats.max_forest, f.size());
    }

    Table introduce(const Table& c, int v) {
        Table t = fresh();
        for (int i = 0; i < static_cast<int>(c.e.size()); ++i) {
            const Entry& x = c.e[i];
            Entry d{add(x.val, g_.weight(v)), x.f, i, -1, true};
            t.offer(canonical_encode(d.f), std::move(d));
            Entry k{x.val, add_isolated(x.f, v, s_of(v)), i, -1, false};
            t.offer(canonical_encode(k.f), std::move(k));
        }
        return t;
    }

    Table forget(const Table& c, int v) {
        Table t = fresh();
        for (int i = 0; i < static_cast<int>(c.e.size()); ++i) {
            const Entry& x = c.e[i];
            if (x.f.find_active(v) < 0) {
                t.offer(canonical_encode(x.f), Entry{x.val, x.f, i, -1, false});
                continue;
            }
            auto f = forget_one(x.f, v);
            if (!f) continue;
            check(*f);
            std::string key = canonical_encode(*f);
            t.offer(key, Entry{x.val, std::move(*f), i, -1, false});
        }
        return t;
    }

    // star from v to its remaining active neighbours, merged in
    std::optional<Forest> forget_one(const Forest& f, int v) {
        std::vector<int> ys = f.active_ids();
        Multigraph star(0);
        std::vector<int> local_to_vid;
        std::unordered_map<int, int> loc;
        for (int y : ys) {
            loc[y] = star.add_vertex(1, s_of(y));
            local_to_vid.push_back(y);
        }
        for (int e : g_.inc(v)) {
            int u = g_.other(e, v);
            auto it = loc.find(u);
            if (it != loc.end() && u != v) star.add_edge(loc[v], it->second);
        }
        if (!is_square_cycle_free(star, p_)) return std::nullopt;
        Forest f2 = build_underlying_forest(star, p_);
        for (auto& nd : f2.node)
            if (nd.active()) nd.vid = local_to_vid[nd.vid];
        f2 = reduce(f2, p_);
        auto m = merge(f, f2, p_);
        if (!m) return std::nullopt;
        return reduce(deactivate(*m, v), p_);
    }

    // deleted bag vertices are paid for in both subtrees; charge them once
    Table join(const Table& l, const Table& r, const std::vector<int>& bag) {
        // only states with equal active sets can pair up
        std::map<std::vector<int>, std::vector<int>> by_y;
        for (int j = 0; j < static_cast<int>(r.e.size()); ++j) by_y[r.e[j].f.active_ids()].push_back(j);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < static_cast<int>(l.e.size()); ++i) {
            auto it = by_y.find(l.e[i].f.active_ids());
            if (it == by_y.end()) continue;
            for (int j : it->second) pairs.push_back({i, j});
        }
        const long long np = static_cast<long long>(pairs.size());
        std::vector<std::optional<Forest>> out(pairs.size());
        std::vector<std::string> keys(pairs.size());
        std::vector<std::exception_ptr> err(pairs.size());
        auto body = [&](long long q) {
            try {
                auto [i, j] = pairs[q];
                out[q] = merge(l.e[i].f, r.e[j].f, p_);
                if (out[q]) keys[q] = canonical_encode(*out[q]);
            } catch (...) {
                err[q] = std::current_exception();
            }
        };
        if (opt_.parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (long long q = 0; q < np; ++q) body(q);
        } else {
            for (long long q = 0; q < np; ++q) body(q);
        }
        Table t = fresh();
        for (long long q = 0; q < np; ++q) {
            if (err[q]) std::rethrow_exception(err[q]);
            if (!out[q]) continue;
            check(*out[q]);
            auto [i, j] = pairs[q];
            Weight shared = 0;
            for (int v : bag)
                if (l.e[i].f.find_active(v) < 0) shared += g_.weight(v);
            t.offer(keys[q], Entry{l.e[i].val + r.e[j].val - shared, std::move(*out[q]), i, j, false});
        }
        return t;
    }

    TwStats stats;

private:
    const Multigraph& g_;
    Problem p_;
    bool oct_;
    TwOptions opt_;
    Weight cap_ = kInf;
};

}  // namespace

TwResult solve_tw(const Multigraph& g, const NiceTreeDecomposition& ntd, Problem p, const TwOptions& opt) {
    if (p == Problem::NMWC) throw StructureError("multiway cut is solved on clique-width expressions only");
    check_nice(ntd, g);
    TwSolver S(g, p, opt);
    const auto& nodes = ntd.nodes;
    std::vector<Table> tab(nodes.size());
    for (size_t t = 0; t < nodes.size(); ++t) {
        const NiceNode& nd = nodes[t];
        switch (nd.kind) {
            case NiceNode::Kind::Leaf: {
                Table x = S.fresh();
                x.offer(canonical_encode(Forest{}), Entry{0, Forest{}, -1, -1, false});
                tab[t] = std::move(x);
                break;
            }
            case NiceNode::Kind::Introduce: tab[t] = S.introduce(tab[nd.child[0]], nd.v); break;
            case NiceNode::Kind::Forget: tab[t] = S.forget(tab[nd.child[0]], nd.v); break;
            case NiceNode::Kind::Join: tab[t] = S.join(tab[nd.child[0]], tab[nd.child[1]], nd.bag); break;
        }
        S.stats.total_states += tab[t].e.size();
        S.stats.max_table = std::max(S.stats.max_table, tab[t].e.size());
        if (!opt.witness)
            for (int c : nd.child)
                if (c >= 0) tab[c] = Table();
    }
    TwResult res;
    res.stats = S.stats;
    const Table& root = tab[ntd.root()];
    if (root.e.empty()) return res;
    int best = 0;
    for (int i = 1; i < static_cast<int>(root.e.size()); ++i)
        if (root.e[i].val < root.e[best].val) best = i;
    res.value = root.e[best].val;
    if (!opt.witness) return res;
    std::vector<std::pair<int, int>> st{{ntd.root(), best}};
    while (!st.empty()) {
        auto [t, i] = st.back();
        st.pop_back();
        const NiceNode& nd = nodes[t];
        const Entry& e = tab[t].e[i];
        if (nd.kind == NiceNode::Kind::Introduce && e.del) res.deleted.push_back(nd.v);
        if (nd.child[0] >= 0) st.push_back({nd.child[0], e.a});
        if (nd.child[1] >= 0) st.push_back({nd.child[1], e.b});
    }
    // a bag vertex below a join is introduced on both sides
    std::sort(res.deleted.begin(), res.deleted.end());
    res.deleted.erase(std::unique(res.deleted.begin(), res.deleted.end()), res.deleted.end());
    return res;
}

}  // namespace cyc
