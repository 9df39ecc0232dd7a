#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyc {

// Vertex weight; kInf is absorbing under add().
using Weight = std::int64_t;
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();

inline Weight add(Weight a, Weight b) {
    if (a == kInf || b == kInf) return kInf;
    return a + b;
}

std::string weight_str(Weight w);

enum class Problem { SFVS, ECT, SOCT, SECT, OCT, NMWC };

const char* problem_name(Problem p);
Problem parse_problem(const std::string& s);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Edge = std::pair<int, int>;

// Vertices are 0..n-1. Parallel edges allowed, loops are not.
class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int n);

    int n() const { return static_cast<int>(in_s_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }

    int add_vertex(Weight w = 1, bool s = false);
    int add_edge(int u, int v);

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    int other(int e, int v) const { return edges_[e].first == v ? edges_[e].second : edges_[e].first; }

    // incident edge ids of v
    const std::vector<int>& inc(int v) const { return inc_[v]; }
    int degree(int v) const { return static_cast<int>(inc_[v].size()); }
    bool adjacent(int u, int v) const;
    int multiplicity(int u, int v) const;

    bool in_s(int v) const { return in_s_[v]; }
    void set_s(int v, bool b = true) { in_s_[v] = b; }
    bool terminal(int v) const { return term_[v]; }
    void set_terminal(int v, bool b = true) { term_[v] = b; }
    Weight weight(int v) const { return w_[v]; }
    void set_weight(int v, Weight w);

    std::vector<int> s_vertices() const;
    std::vector<int> terminals() const;

    // Subgraph without the vertices in `del`; vertex ids are preserved
    // (deleted vertices become isolated).
    Multigraph remove_vertices(const std::vector<int>& del) const;
    // Induced on `keep`, renumbered in the given order. map[old] = new or -1.
    Multigraph induced(const std::vector<int>& keep, std::vector<int>* map = nullptr) const;
    // Only the listed edges, renumbered vertices (in order of first appearance).
    Multigraph edge_subgraph(const std::vector<int>& eids, std::vector<int>* verts = nullptr) const;

    bool operator==(const Multigraph& o) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> inc_;
    std::vector<char> in_s_, term_;
    std::vector<Weight> w_;
};

// Sorted (min,max) edge list with multiplicity, for comparisons.
std::vector<Edge> sorted_edges(const Multigraph& g);

struct Block {
    std::vector<int> verts;
    std::vector<int> edges;
    bool nontrivial = false;  // contains a cycle (two parallel edges count)
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    std::vector<int> cutvertices;
};

BlockDecomposition biconnected_components(const Multigraph& g);

using F2Labeling = std::vector<std::uint8_t>;  // indexed by edge id

// x[v] with x[u]+x[v] = lab(uv) on every edge, roots of a BFS forest fixed to 0.
// Empty optional if some closed walk has label sum 1.
std::optional<std::vector<std::uint8_t>> compute_potentials(const Multigraph& g, const F2Labeling& lab);

// 2-colouring, or nullopt if an odd cycle exists.
std::optional<std::vector<std::uint8_t>> bipartition(const Multigraph& g);
std::vector<int> connected_components(const Multigraph& g, int* count = nullptr);

enum class ComponentClass {
    NoSVertexNonBipartite,
    NoSVertexBipartite,
    SBipartite,
    OddCycle,
    OddSCycleOfBipartiteSubcomponents,
    Violating
};

const char* class_name(ComponentClass c);

// g must be one nontrivial 2-connected block. OCT is treated as SOCT with S = V.
ComponentClass classify_component(const Multigraph& g, Problem p);

bool is_square_cycle_free(const Multigraph& g, Problem p);

}  // namespace cyc
