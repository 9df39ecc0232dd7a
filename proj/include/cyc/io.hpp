#pragma once

#include <string>
#include <vector>

#include "cyc/graph.hpp"

namespace cyc {

// ---- graph files ----------------------------------------------------------

Multigraph parse_graph(const std::string& text);
std::string write_graph(const Multigraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// ---- tree decompositions --------------------------------------------------

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // 0-based vertices, sorted
    std::vector<Edge> tree_edges;        // between bag indices
    int width() const;
};

// Parses and validates against g (throws StructureError on axiom violations).
TreeDecomposition parse_td(const std::string& text, const Multigraph& g);
std::string write_td(const TreeDecomposition& td, int n);
void validate_td(const TreeDecomposition& td, const Multigraph& g);

struct NiceNode {
    enum class Kind { Leaf, Introduce, Forget, Join };
    Kind kind = Kind::Leaf;
    int v = -1;            // introduced/forgotten vertex
    std::vector<int> bag;  // sorted
    int child[2] = {-1, -1};
};

// Nodes are stored children-first; root is the last node.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int width() const;
};

NiceTreeDecomposition nicify(const TreeDecomposition& td);
// Throws StructureError if a nice-decomposition invariant fails for g.
void check_nice(const NiceTreeDecomposition& ntd, const Multigraph& g);

// ---- k-expressions --------------------------------------------------------

struct KNode {
    enum class Op { Vertex, Union, Join, Rename };
    Op op = Op::Vertex;
    int v = -1;           // Vertex: vertex id (0-based)
    int a = -1, b = -1;   // Vertex: label in a; Join: a,b; Rename: a -> b (0-based)
    int c0 = -1, c1 = -1; // children
};

// Nodes stored children-first; root is the last node.
struct CliqueExpression {
    int k = 0;
    std::vector<KNode> nodes;
    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int vertex_count() const;
};

CliqueExpression parse_kexpr(const std::string& text);
std::string write_kexpr(const CliqueExpression& e);

struct LabeledGraph {
    Multigraph g;
    std::vector<int> label;  // final label per vertex
};

LabeledGraph eval_kexpr(const CliqueExpression& e);

// Edges added by each join node when evaluated bottom-up (only edges that were
// absent); indexed by node.
std::vector<std::vector<Edge>> join_contributions(const CliqueExpression& e);

struct NormalizeStats {
    int removed_redundant = 0;
    int removed_trivial = 0;
};

CliqueExpression normalize_kexpr(const CliqueExpression& e, NormalizeStats* stats = nullptr);

// Each union gets children with disjoint label sets, using labels k..2k-1 for
// the right side where both sides share a label.
CliqueExpression double_labels(const CliqueExpression& e);

bool is_linear(const CliqueExpression& e);
int max_label_used(const CliqueExpression& e);

// Builder helpers (return node index).
int kx_vertex(CliqueExpression& e, int v, int label);
int kx_union(CliqueExpression& e, int l, int r);
int kx_join(CliqueExpression& e, int i, int j, int c);
int kx_rename(CliqueExpression& e, int i, int j, int c);

// Copy of the subtree at `root` so that it becomes the whole expression.
CliqueExpression extract(const CliqueExpression& e, int root);

}  // namespace cyc
