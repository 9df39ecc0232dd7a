#pragma once

#include <string>
#include <vector>

#include "cyc/graph.hpp"
#include "cyc/io.hpp"

namespace cyc {

// Literals are +v / -v with 1-based variables.
struct CnfFormula {
    int n = 0;
    std::vector<std::vector<int>> clauses;
    int rho() const;  // total literal occurrences
};

CnfFormula parse_dimacs(const std::string& text);
std::string write_dimacs(const CnfFormula& f);
// One line of signed literals (0 terminated or not); unlisted variables are false.
std::vector<bool> parse_assignment(const std::string& text, int n);
bool satisfies(const CnfFormula& f, const std::vector<bool>& tau);

struct Arrow {
    int u = -1, v = -1;
    int a[3] = {-1, -1, -1};
    int b[4] = {-1, -1, -1, -1};
};

// Adds the 7 inner vertices and 12 edges of the arrow from u to v.
Arrow add_arrow(Multigraph& g, int u, int v);

struct GadgetInstance {
    CnfFormula phi;  // padded to an even variable count
    Multigraph g;
    long long alpha = 0;
    std::vector<int> A, B;
    // path[k][i][j]: copy k, row i, position j (all 0-based)
    std::vector<std::vector<std::vector<int>>> path;
    // cycle[k][c]: clause cycle vertices in cycle order
    std::vector<std::vector<std::vector<int>>> cycle;
    // literal vertex and arrow per (copy, clause, literal position)
    std::vector<std::vector<std::vector<int>>> lit_vertex;
    std::vector<std::vector<std::vector<Arrow>>> arrows;
    // order in which the literal vertices of clause c enter its cycle
    std::vector<std::vector<int>> cycle_order;
    int label_budget() const { return phi.n / 2 + 10; }
};

// Throws StructureError on an empty formula or an empty clause.
GadgetInstance build_instance(const CnfFormula& phi);

// Throws StructureError unless tau satisfies the formula.
std::vector<int> construct_oct_from_assignment(const GadgetInstance& inst, const std::vector<bool>& tau);

// Linear expression with at most n/2 + 10 labels evaluating to inst.g.
CliqueExpression emit_linear_kexpr(const GadgetInstance& inst);

}  // namespace cyc
