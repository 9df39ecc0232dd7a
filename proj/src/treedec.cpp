#include <algorithm>
#include <set>
#include <sstream>

#include "cyc/io.hpp"

namespace cyc {

int TreeDecomposition::width() const {
    size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w == 0 ? 0 : static_cast<int>(w) - 1;
}

int NiceTreeDecomposition::width() const {
    size_t w = 0;
    for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
    return w == 0 ? 0 : static_cast<int>(w) - 1;
}

TreeDecomposition parse_td(const std::string& text, const Multigraph& g) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    long long nb = -1, maxbag = 0, n = 0;
    TreeDecomposition td;
    std::vector<char> seen;
    auto fail = [&](const std::string& m) { throw ParseError(m + " at line " + std::to_string(line)); };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            if (nb >= 0) fail("duplicate header");
            if (!(ls >> kind >> nb >> maxbag >> n) || kind != "td" || nb < 0 || n < 0) fail("malformed header");
            if (n != g.n()) fail("vertex count does not match graph");
            td.bags.assign(nb, {});
            seen.assign(nb, 0);
            continue;
        }
        if (nb < 0) fail("malformed header");
        if (tag == "b") {
            long long id, v;
            if (!(ls >> id) || id < 1 || id > nb) fail("bad bag id");
            if (seen[id - 1]) fail("duplicate bag " + std::to_string(id));
            seen[id - 1] = 1;
            auto& bag = td.bags[id - 1];
            while (ls >> v) {
                if (v < 1 || v > n) fail("vertex out of range");
                bag.push_back(static_cast<int>(v - 1));
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            if (static_cast<long long>(bag.size()) > maxbag) fail("bag larger than declared");
        } else {
            long long a, b;
            std::istringstream es(raw);
            if (!(es >> a >> b) || a < 1 || b < 1 || a > nb || b > nb) fail("malformed tree edge");
            td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    if (nb < 0) fail("malformed header");
    validate_td(td, g);
    return td;
}

std::string write_td(const TreeDecomposition& td, int n) {
    std::ostringstream o;
    size_t mb = 0;
    for (const auto& b : td.bags) mb = std::max(mb, b.size());
    o << "s td " << td.bags.size() << ' ' << mb << ' ' << n << '\n';
    for (size_t i = 0; i < td.bags.size(); ++i) {
        o << "b " << i + 1;
        for (int v : td.bags[i]) o << ' ' << v + 1;
        o << '\n';
    }
    for (auto [a, b] : td.tree_edges) o << a + 1 << ' ' << b + 1 << '\n';
    return o.str();
}

void validate_td(const TreeDecomposition& td, const Multigraph& g) {
    const int nb = static_cast<int>(td.bags.size());
    if (nb == 0) {
        if (g.n() > 0) throw StructureError("vertex 1 uncovered");
        return;
    }
    if (static_cast<int>(td.tree_edges.size()) != nb - 1) throw StructureError("tree edges do not form a tree");
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    {
        std::vector<char> vis(nb, 0);
        std::vector<int> st{0};
        vis[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x])
                if (!vis[y]) {
                    vis[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != nb) throw StructureError("tree edges do not form a tree");
    }
    std::vector<std::vector<int>> occ(g.n());
    for (int i = 0; i < nb; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= g.n()) throw StructureError("bag vertex out of range");
            occ[v].push_back(i);
        }
    for (int v = 0; v < g.n(); ++v) {
        if (occ[v].empty()) throw StructureError("vertex " + std::to_string(v + 1) + " uncovered");
        // occurrence bags must induce a connected subtree
        std::vector<char> in(nb, 0), vis(nb, 0);
        for (int b : occ[v]) in[b] = 1;
        std::vector<int> st{occ[v][0]};
        vis[occ[v][0]] = 1;
        size_t cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x])
                if (in[y] && !vis[y]) {
                    vis[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != occ[v].size())
            throw StructureError("bags containing vertex " + std::to_string(v + 1) + " are not connected");
    }
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        const auto& a = occ[u].size() < occ[v].size() ? occ[u] : occ[v];
        int other = occ[u].size() < occ[v].size() ? v : u;
        for (int b : a)
            if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), other)) {
                ok = true;
                break;
            }
        if (!ok)
            throw StructureError("edge " + std::to_string(std::min(u, v) + 1) + "-" + std::to_string(std::max(u, v) + 1) +
                                 " uncovered");
    }
}

namespace {

struct NiceBuilder {
    NiceTreeDecomposition out;

    int add(NiceNode::Kind k, int v, std::vector<int> bag, int c0 = -1, int c1 = -1) {
        NiceNode nd;
        nd.kind = k;
        nd.v = v;
        nd.bag = std::move(bag);
        nd.child[0] = c0;
        nd.child[1] = c1;
        out.nodes.push_back(std::move(nd));
        return static_cast<int>(out.nodes.size()) - 1;
    }

    // chain from node `cur` (with bag out.nodes[cur].bag) to `target`
    int transition(int cur, const std::vector<int>& target) {
        std::vector<int> bag = out.nodes[cur].bag;
        for (int v : std::vector<int>(bag)) {
            if (std::binary_search(target.begin(), target.end(), v)) continue;
            bag.erase(std::find(bag.begin(), bag.end(), v));
            cur = add(NiceNode::Kind::Forget, v, bag, cur);
        }
        for (int v : target) {
            if (std::binary_search(bag.begin(), bag.end(), v)) continue;
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            cur = add(NiceNode::Kind::Introduce, v, bag, cur);
        }
        return cur;
    }
};

}  // namespace

NiceTreeDecomposition nicify(const TreeDecomposition& td) {
    NiceBuilder nb;
    const int m = static_cast<int>(td.bags.size());
    if (m == 0) {
        nb.add(NiceNode::Kind::Leaf, -1, {});
        return nb.out;
    }
    std::vector<std::vector<int>> adj(m);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> parent(m, -2), order;
    parent[0] = -1;
    std::vector<int> st{0};
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        order.push_back(x);
        for (int y : adj[x])
            if (parent[y] == -2) {
                parent[y] = x;
                st.push_back(y);
            }
    }
    std::vector<int> top(m, -1);  // nice node whose bag equals bag x
    std::vector<std::vector<int>> kids(m);
    for (int x : order)
        if (parent[x] >= 0) kids[parent[x]].push_back(x);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        const auto& bag = td.bags[x];
        int cur = -1;
        for (int c : kids[x]) {
            int r = nb.transition(top[c], bag);
            cur = cur < 0 ? r : nb.add(NiceNode::Kind::Join, -1, bag, cur, r);
        }
        if (cur < 0) cur = nb.transition(nb.add(NiceNode::Kind::Leaf, -1, {}), bag);
        top[x] = cur;
    }
    nb.transition(top[0], {});
    return nb.out;
}

void check_nice(const NiceTreeDecomposition& ntd, const Multigraph& g) {
    const auto& nodes = ntd.nodes;
    if (nodes.empty()) throw StructureError("empty decomposition");
    if (!nodes.back().bag.empty()) throw StructureError("root bag not empty");
    std::vector<int> forgets(g.n(), 0), parents(nodes.size(), 0);
    for (size_t t = 0; t < nodes.size(); ++t) {
        const auto& nd = nodes[t];
        auto child_bag = [&](int i) -> const std::vector<int>& {
            int c = nd.child[i];
            if (c < 0 || c >= static_cast<int>(t)) throw StructureError("bad child index");
            parents[c]++;
            return nodes[c].bag;
        };
        switch (nd.kind) {
            case NiceNode::Kind::Leaf:
                if (!nd.bag.empty()) throw StructureError("leaf bag not empty");
                break;
            case NiceNode::Kind::Introduce: {
                auto b = child_bag(0);
                if (std::binary_search(b.begin(), b.end(), nd.v)) throw StructureError("introduced vertex already present");
                b.insert(std::upper_bound(b.begin(), b.end(), nd.v), nd.v);
                if (b != nd.bag) throw StructureError("introduce bag mismatch");
                break;
            }
            case NiceNode::Kind::Forget: {
                auto b = child_bag(0);
                auto it = std::lower_bound(b.begin(), b.end(), nd.v);
                if (it == b.end() || *it != nd.v) throw StructureError("forgotten vertex absent");
                b.erase(it);
                if (b != nd.bag) throw StructureError("forget bag mismatch");
                forgets[nd.v]++;
                break;
            }
            case NiceNode::Kind::Join:
                if (child_bag(0) != nd.bag || child_bag(1) != nd.bag) throw StructureError("join bag mismatch");
                break;
        }
    }
    for (size_t t = 0; t + 1 < nodes.size(); ++t)
        if (parents[t] != 1) throw StructureError("node is not part of a single rooted tree");
    for (int v = 0; v < g.n(); ++v)
        if (forgets[v] != 1) throw StructureError("vertex " + std::to_string(v + 1) + " not forgotten exactly once");
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (const auto& nd : nodes)
            if (std::binary_search(nd.bag.begin(), nd.bag.end(), u) && std::binary_search(nd.bag.begin(), nd.bag.end(), v)) {
                ok = true;
                break;
            }
        if (!ok) throw StructureError("edge uncovered by nice decomposition");
    }
}

}  // namespace cyc
