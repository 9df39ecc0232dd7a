#pragma once

#include <cstddef>
#include <vector>

#include "cyc/forest.hpp"
#include "cyc/graph.hpp"
#include "cyc/io.hpp"

namespace cyc {

struct TwOptions {
    bool witness = false;
    bool parallel = false;  // OpenMP over the state pairs of join nodes
    bool prune = true;      // drop states costlier than a greedy solution
};

struct TwStats {
    std::size_t total_states = 0;
    std::size_t max_table = 0;
    int max_forest = 0;       // largest stored forest
};

struct TwResult {
    Weight value = kInf;
    std::vector<int> deleted;  // with witness, sorted
    TwStats stats;
};

// Weighted SFVS / ECT / SOCT / SECT (OCT runs as SOCT with S = V).
// Throws StructureError if ntd is not a nice decomposition of g.
TwResult solve_tw(const Multigraph& g, const NiceTreeDecomposition& ntd, Problem p, const TwOptions& opt = {});

}  // namespace cyc
