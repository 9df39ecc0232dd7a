#pragma once

#include <cstdint>
#include <random>

#include "cyc/graph.hpp"
#include "cyc/io.hpp"
#include "cyc/lowerbound.hpp"

namespace cyc {

using Rng = std::mt19937_64;

struct TwInstance {
    Multigraph g;
    TreeDecomposition td;
};

struct RandomGraphOptions {
    double edge_prob = 0.6;      // kept fraction of k-tree edges / pair density
    double parallel_prob = 0.1;  // chance an edge gets a parallel copy
    double s_prob = 0.3;
    int max_weight = 3;
    double inf_prob = 0.0;  // vertices with infinite weight (feasibility kept)
};

// Subgraph of a random k-tree on n vertices, with the k-tree's decomposition.
TwInstance random_ktree_instance(Rng& rng, int n, int k, Problem p, const RandomGraphOptions& o = {});

Multigraph random_multigraph(Rng& rng, int n, const RandomGraphOptions& o = {});

// Random expression over labels 0..k-1 that builds exactly n vertices
// (ids 0..n-1). May contain redundant or empty joins.
CliqueExpression random_kexpr(Rng& rng, int n, int k, double join_prob = 0.5, double rename_prob = 0.2);

// Linear variant: every union adds a single new vertex.
CliqueExpression random_linear_kexpr(Rng& rng, int n, int k, double join_prob = 0.5, double rename_prob = 0.2);

CnfFormula random_cnf(Rng& rng, int n, int m, int max_len);
// A random formula together with an assignment satisfying it.
std::pair<CnfFormula, std::vector<bool>> random_satisfiable_cnf(Rng& rng, int n, int m, int max_len);

// Random weights in 1..max_weight; with inf_prob some become kInf as long as
// deleting every finite vertex still solves g for p.
void randomize_weights(Rng& rng, Multigraph& g, Problem p, int max_weight, double inf_prob);

}  // namespace cyc
