#pragma once

#include <vector>

#include "cyc/graph.hpp"

namespace cyc {

struct OracleResult {
    Weight value = kInf;
    std::vector<int> witness;  // sorted; empty when value is kInf
};

// Block classification (fast path).
bool feasible_by_classification(const Multigraph& g, Problem p);
// Direct simple-cycle enumeration (exponential; small graphs only).
bool feasible_by_cycles(const Multigraph& g, Problem p);
// Runs both and throws InternalError if they disagree.
bool check_feasible(const Multigraph& g, Problem p);

// Terminals pairwise disconnected.
bool terminals_separated(const Multigraph& g);

// Minimum-weight deletion set; among optima the lexicographically least
// sorted vertex list. Terminals are never deleted for NMWC.
OracleResult brute_force(const Multigraph& g, Problem p, int cap = 16);
OracleResult brute_force_serial(const Multigraph& g, Problem p, int cap = 16);

// Every edge subdivided once; new vertices get weight kInf and are not in S.
Multigraph subdivide(const Multigraph& g);

}  // namespace cyc
