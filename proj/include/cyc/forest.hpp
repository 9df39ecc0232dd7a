#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyc/graph.hpp"

namespace cyc {

enum class Sym : std::uint8_t { None, OddCycle, Bipartite, NotBipartite, InternalBipartite };

const char* sym_name(Sym s);

struct FNode {
    int vid = -1;  // original vertex id when active, -1 otherwise
    bool s = false;
    Sym sym = Sym::None;
    bool active() const { return vid >= 0; }
    bool operator==(const FNode&) const = default;
};

// Rooted forest description: parent[i] == i marks a root; up[i] is the F2
// value on the edge (i, parent[i]).
struct Forest {
    std::vector<int> parent;
    std::vector<FNode> node;
    std::vector<std::uint8_t> up;

    int size() const { return static_cast<int>(node.size()); }
    std::vector<int> active_ids() const;  // sorted
    int find_active(int vid) const;       // node index or -1
};

// Editable multigraph over forest nodes, used for merging.
struct FGraph {
    struct E {
        int a, b;
        std::uint8_t val;
        bool alive = true;
    };
    std::vector<FNode> node;
    std::vector<char> node_alive;
    std::vector<E> edges;
    std::vector<std::vector<int>> inc;

    int add_node(const FNode& n);
    int add_edge(int a, int b, std::uint8_t v);
    void kill_edge(int e);
    void kill_node(int v);  // also kills incident edges
    int degree(int v) const;
    int other(int e, int v) const { return edges[e].a == v ? edges[e].b : edges[e].a; }
    std::vector<int> live_inc(int v) const;
};

FGraph to_fgraph(const Forest& f);
// Throws InternalError if the live part is not a forest.
Forest to_forest(const FGraph& g);

// Number of label symbols including S-membership.
int symbol_count(Problem p);
// (K+1)(2|X|-2)+1, or 0 when X is empty.
int size_bound(Problem p, int active);

// Underlying forest of a cycle-free graph; every vertex is active.
// Throws StructureError naming the violating block otherwise.
Forest build_underlying_forest(const Multigraph& g, Problem p);

Forest reduce(const Forest& f, Problem p);
void reduce_in_place(FGraph& g, Problem p);

// Deactivate the node carrying vid (no reduction).
Forest deactivate(const Forest& f, int vid);
// Disjoint union (active ids must be disjoint).
Forest forest_union(const Forest& a, const Forest& b);
// Adds an isolated active vertex.
Forest add_isolated(const Forest& f, int vid, bool s);

std::string canonical_encode(const Forest& f);

// Empty result iff the union of the represented graphs has a cycle the
// problem must hit; otherwise the reduced forest of the union.
std::optional<Forest> merge(const Forest& f1, const Forest& f2, Problem p);

// Path data between two active vertices, for testing the reduced-forest
// guarantees.
struct PathInfo {
    bool connected = false;
    bool has[5] = {false, false, false, false, false};  // by Sym index
    int ib_count = 0;
    bool s = false;  // an S-marked node on the path (endpoints included)
    std::uint8_t parity = 0;
};
PathInfo path_info(const Forest& f, int vid_u, int vid_v);

std::string debug_string(const Forest& f);

}  // namespace cyc
