#pragma once

#include <cstdint>
#include <vector>

#include "cyc/graph.hpp"
#include "cyc/io.hpp"

namespace cyc {

// Four-element poset 0 < 1, 0 < 2, 1 < 3, 2 < 3 (per label: 0 all deleted,
// 1 survivors on side A, 2 survivors on side B, 3 unconstrained).
namespace poset {
std::uint8_t sup(std::uint8_t a, std::uint8_t b);
std::uint8_t inf_elem(std::uint8_t a, std::uint8_t b);
bool leq(std::uint8_t a, std::uint8_t b);
}  // namespace poset

// Category vectors packed two bits per label (label i in bits 2i, 2i+1).
using CatVec = std::uint32_t;
inline std::uint8_t cat_get(CatVec x, int i) { return (x >> (2 * i)) & 3u; }
inline CatVec cat_set(CatVec x, int i, std::uint8_t v) { return (x & ~(CatVec{3} << (2 * i))) | (CatVec{v} << (2 * i)); }
CatVec cat_sup(CatVec x, CatVec y, int k);
bool cat_leq(CatVec x, CatVec y, int k);

using OctTable = std::vector<Weight>;

// In place: t[x] := min over x' <= x of t[x'].
void zeta_min(OctTable& t, int k);
void zeta_min_parallel(OctTable& t, int k);
// Direct min over x1 v x2 <= x of a[x1] + b[x2]; O(16^k), for testing.
OctTable union_direct(const OctTable& a, const OctTable& b, int k);

struct OctOptions {
    bool parallel = false;
    bool witness = false;
};

struct OctResult {
    Weight value = kInf;
    std::vector<int> deleted;  // with witness
    std::vector<int> side_a, side_b;
    std::size_t table_size = 0;  // entries per node (always 4^k)
    std::size_t nodes = 0;
};

// weights indexed by vertex id of the expression.
OctResult solve_oct_cw(const CliqueExpression& e, const std::vector<Weight>& weights, const OctOptions& opt = {});

}  // namespace cyc
