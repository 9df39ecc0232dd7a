#include "cyc/cw_oct.hpp"

#include <algorithm>

namespace cyc {

namespace poset {

std::uint8_t sup(std::uint8_t a, std::uint8_t b) {
    if (a == b) return a;
    if (a == 0) return b;
    if (b == 0) return a;
    return 3;
}

std::uint8_t inf_elem(std::uint8_t a, std::uint8_t b) {
    if (a == b) return a;
    if (a == 3) return b;
    if (b == 3) return a;
    return 0;
}

bool leq(std::uint8_t a, std::uint8_t b) { return sup(a, b) == b; }

}  // namespace poset

CatVec cat_sup(CatVec x, CatVec y, int k) {
    CatVec r = 0;
    for (int i = 0; i < k; ++i) r = cat_set(r, i, poset::sup(cat_get(x, i), cat_get(y, i)));
    return r;
}

bool cat_leq(CatVec x, CatVec y, int k) {
    for (int i = 0; i < k; ++i)
        if (!poset::leq(cat_get(x, i), cat_get(y, i))) return false;
    return true;
}

namespace {

inline Weight mn(Weight a, Weight b) { return a < b ? a : b; }

// One coordinate of the transform over the block [base, base + 4*stride).
inline void relax(Weight* t, std::size_t base, std::size_t stride) {
    for (std::size_t r = 0; r < stride; ++r) {
        Weight* p = t + base + r;
        Weight v0 = p[0];
        Weight v1 = mn(p[stride], v0);
        Weight v2 = mn(p[2 * stride], v0);
        p[stride] = v1;
        p[2 * stride] = v2;
        p[3 * stride] = mn(p[3 * stride], mn(v1, v2));
    }
}

}  // namespace

void zeta_min(OctTable& t, int k) {
    const std::size_t size = std::size_t{1} << (2 * k);
    for (int c = 0; c < k; ++c) {
        const std::size_t stride = std::size_t{1} << (2 * c);
        for (std::size_t base = 0; base < size; base += 4 * stride) relax(t.data(), base, stride);
    }
}

void zeta_min_parallel(OctTable& t, int k) {
    const long long size = 1LL << (2 * k);
    for (int c = 0; c < k; ++c) {
        const long long stride = 1LL << (2 * c);
        const long long blocks = size / (4 * stride);
        if (blocks >= 4) {
#pragma omp parallel for schedule(static)
            for (long long b = 0; b < blocks; ++b) relax(t.data(), static_cast<std::size_t>(b * 4 * stride), static_cast<std::size_t>(stride));
        } else {
            // few wide blocks: split the inner range instead
            for (long long b = 0; b < blocks; ++b) {
                Weight* base = t.data() + b * 4 * stride;
#pragma omp parallel for schedule(static)
                for (long long r = 0; r < stride; ++r) {
                    Weight* p = base + r;
                    Weight v0 = p[0];
                    Weight v1 = mn(p[stride], v0);
                    Weight v2 = mn(p[2 * stride], v0);
                    p[stride] = v1;
                    p[2 * stride] = v2;
                    p[3 * stride] = mn(p[3 * stride], mn(v1, v2));
                }
            }
        }
    }
}

OctTable union_direct(const OctTable& a, const OctTable& b, int k) {
    const CatVec size = CatVec{1} << (2 * k);
    OctTable r(size, kInf);
    for (CatVec x1 = 0; x1 < size; ++x1) {
        if (a[x1] == kInf) continue;
        for (CatVec x2 = 0; x2 < size; ++x2) {
            if (b[x2] == kInf) continue;
            Weight w = add(a[x1], b[x2]);
            CatVec s = cat_sup(x1, x2, k);
            for (CatVec x = 0; x < size; ++x)
                if (cat_leq(s, x, k)) r[x] = mn(r[x], w);
        }
    }
    return r;
}

namespace {

struct Kernels {
    bool par;
    int k;
    std::size_t size;

    void zeta(OctTable& t) const { par ? zeta_min_parallel(t, k) : zeta_min(t, k); }

    OctTable unite(OctTable a, OctTable b) const {
        zeta(a);
        zeta(b);
        const long long n = static_cast<long long>(size);
        if (par) {
#pragma omp parallel for schedule(static)
            for (long long x = 0; x < n; ++x) a[x] = add(a[x], b[x]);
        } else {
            for (long long x = 0; x < n; ++x) a[x] = add(a[x], b[x]);
        }
        return a;
    }

    void join(OctTable& t, int i, int j) const {
        const long long n = static_cast<long long>(size);
        auto body = [&](long long x) {
            if (poset::inf_elem(cat_get(static_cast<CatVec>(x), i), cat_get(static_cast<CatVec>(x), j)) != 0) t[x] = kInf;
        };
        if (par) {
#pragma omp parallel for schedule(static)
            for (long long x = 0; x < n; ++x) body(x);
        } else {
            for (long long x = 0; x < n; ++x) body(x);
        }
    }

    OctTable rename(const OctTable& t, int i, int j) const {
        OctTable r(size, kInf);
        if (i == j) return t;
        // each target x (with x[i] = 0) gathers the 16 sources over (x'[i], x'[j])
        const long long n = static_cast<long long>(size);
        auto body = [&](long long xl) {
            CatVec x = static_cast<CatVec>(xl);
            if (cat_get(x, i) != 0) return;
            std::uint8_t xj = cat_get(x, j);
            Weight best = kInf;
            for (std::uint8_t a = 0; a < 4; ++a)
                for (std::uint8_t b = 0; b < 4; ++b)
                    if (poset::sup(a, b) == xj) best = mn(best, t[cat_set(cat_set(x, i, a), j, b)]);
            r[x] = best;
        };
        if (par) {
#pragma omp parallel for schedule(static)
            for (long long x = 0; x < n; ++x) body(x);
        } else {
            for (long long x = 0; x < n; ++x) body(x);
        }
        return r;
    }
};

}  // namespace

OctResult solve_oct_cw(const CliqueExpression& e, const std::vector<Weight>& weights, const OctOptions& opt) {
    const int k = e.k;
    if (k > 15) throw StructureError("too many labels for the dense table");
    const std::size_t size = std::size_t{1} << (2 * k);
    Kernels K{opt.parallel, k, size};
    OctResult res;
    res.table_size = size;
    res.nodes = e.nodes.size();
    if (e.nodes.empty()) {
        res.value = 0;
        return res;
    }
    std::vector<OctTable> tab(e.nodes.size());
    for (std::size_t t = 0; t < e.nodes.size(); ++t) {
        const KNode& nd = e.nodes[t];
        switch (nd.op) {
            case KNode::Op::Vertex: {
                OctTable d(size, kInf);
                d[0] = weights.at(nd.v);
                d[cat_set(0, nd.a, 1)] = 0;
                d[cat_set(0, nd.a, 2)] = 0;
                tab[t] = std::move(d);
                break;
            }
            case KNode::Op::Union:
                if (opt.witness)
                    tab[t] = K.unite(tab[nd.c0], tab[nd.c1]);
                else
                    tab[t] = K.unite(std::move(tab[nd.c0]), std::move(tab[nd.c1]));
                break;
            case KNode::Op::Join:
                tab[t] = opt.witness ? tab[nd.c0] : std::move(tab[nd.c0]);
                K.join(tab[t], nd.a, nd.b);
                break;
            case KNode::Op::Rename:
                tab[t] = K.rename(tab[nd.c0], nd.a, nd.b);
                break;
        }
        if (tab[t].size() != size) throw InternalError("table size mismatch");
        if (!opt.witness) {
            if (nd.c0 >= 0) OctTable().swap(tab[nd.c0]);
            if (nd.c1 >= 0) OctTable().swap(tab[nd.c1]);
        }
    }
    const OctTable& root = tab[e.root()];
    CatVec best = 0;
    for (CatVec x = 0; x < size; ++x)
        if (root[x] < root[best]) best = x;
    res.value = root[best];
    if (!opt.witness || res.value == kInf) return res;

    // top-down reconstruction from the stored tables
    std::vector<std::pair<int, CatVec>> st{{e.root(), best}};
    while (!st.empty()) {
        auto [t, x] = st.back();
        st.pop_back();
        const KNode& nd = e.nodes[t];
        const Weight want = tab[t][x];
        switch (nd.op) {
            case KNode::Op::Vertex:
                if (x == 0)
                    res.deleted.push_back(nd.v);
                else if (cat_get(x, nd.a) == 1)
                    res.side_a.push_back(nd.v);
                else
                    res.side_b.push_back(nd.v);
                break;
            case KNode::Op::Join:
                st.push_back({nd.c0, x});
                break;
            case KNode::Op::Rename: {
                bool found = false;
                for (std::uint8_t a = 0; a < 4 && !found; ++a)
                    for (std::uint8_t b = 0; b < 4 && !found; ++b) {
                        if (poset::sup(a, b) != cat_get(x, nd.b)) continue;
                        CatVec y = nd.a == nd.b ? x : cat_set(cat_set(x, nd.a, a), nd.b, b);
                        if (tab[nd.c0][y] == want) {
                            st.push_back({nd.c0, y});
                            found = true;
                        }
                    }
                if (!found) throw InternalError("witness reconstruction failed at a rename");
                break;
            }
            case KNode::Op::Union: {
                const OctTable& a = tab[nd.c0];
                const OctTable& b = tab[nd.c1];
                CatVec ba = 0, bb = 0;
                Weight wa = kInf, wb = kInf;
                for (CatVec y = 0; y < size; ++y) {
                    if (!cat_leq(y, x, k)) continue;
                    if (a[y] < wa) wa = a[y], ba = y;
                    if (b[y] < wb) wb = b[y], bb = y;
                }
                if (add(wa, wb) != want) throw InternalError("witness reconstruction failed at a union");
                st.push_back({nd.c0, ba});
                st.push_back({nd.c1, bb});
                break;
            }
        }
    }
    std::sort(res.deleted.begin(), res.deleted.end());
    std::sort(res.side_a.begin(), res.side_a.end());
    std::sort(res.side_b.begin(), res.side_b.end());
    return res;
}

}  // namespace cyc
