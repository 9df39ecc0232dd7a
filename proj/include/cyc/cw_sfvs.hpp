#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyc/forest.hpp"
#include "cyc/graph.hpp"
#include "cyc/io.hpp"

namespace cyc {

// Per-label guesses. Q1s / Qws are the starred (S) variants.
enum class LState : std::uint8_t { Empty, Q1, Q1s, Q2, Qw, Qws, Qf };

const char* lstate_name(LState s);

// Forest nodes use FNode::vid as the label of the representative (-1 when
// unlabeled); sym is unused and all edge values are 0.
struct CwState {
    Forest f;
    std::vector<LState> P;
    Weight value = kInf;
    std::vector<int> deleted;  // filled when witnesses are requested
};

struct CwOptions {
    bool witness = false;
    bool parallel = false;     // OpenMP over state pairs at union nodes
    bool keep_root = false;    // return every root state
};

struct CwResult {
    Weight value = kInf;
    std::vector<int> deleted;
    std::vector<CwState> root_states;
    std::size_t total_states = 0;
    std::size_t max_table = 0;
    int max_forest = 0;
};

// Central-vertex rule for nontrivial blocks, then path contraction.
Forest reduce_cw(const FGraph& g);

// Requires every join to add at least one new edge and union children to use
// disjoint labels; throws StructureError otherwise.
CliqueExpression prepare_sfvs_expression(const CliqueExpression& e);
void check_sfvs_expression(const CliqueExpression& e);

// weights and s indexed by vertex id of the expression.
CwResult solve_sfvs_cw(const CliqueExpression& e, const std::vector<Weight>& weights, const std::vector<char>& s, const CwOptions& opt = {});

struct NmwcInstance {
    CliqueExpression e;
    std::vector<Weight> weights;
    std::vector<char> s;
    int sink = -1;  // id of the added vertex
};

// g supplies weights and terminals; e must evaluate to g's vertex set.
NmwcInstance transform_nmwc(const Multigraph& g, const CliqueExpression& e);

// H(G~, P) from the auxiliary-graph definition (tests only). labels[v] is the
// label of v in G~; the result marks added representatives in `label` and
// unlabeled vertices with -1.
LabeledGraph auxiliary_graph(const LabeledGraph& gt, const std::vector<LState>& P);
// Whether P is compatible with the labeled graph.
bool compatible(const LabeledGraph& gt, const std::vector<LState>& P);

}  // namespace cyc
