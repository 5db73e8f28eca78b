#pragma once

#include "cutsel/milp.hpp"

#include <array>
#include <string>
#include <vector>

namespace cutsel {

// Constraint-variable bipartite feature graph.
//
// Variable features (7): [c_i / max|c|, lower-bound feature, upper-bound
// feature, one-hot binary/integer/implicit-integer/continuous]. Bound
// features: finite bounds are divided by max(1, largest finite |bound| in the
// instance) and clipped to [-1,1]; infinite bounds encode as -2 / +2.
//
// Constraint features (7): [|cos(row, c)|, b_i / max(|b_i|, row inf-norm),
// one-hot linear/logicor/knapsack/setppc/varbound].
//
// Edge values: a_ij / (inf-norm of row i), sorted by (row, col).
struct BipartiteGraph {
    struct Edge {
        std::size_t cons = 0;
        std::size_t var = 0;
        double coeff = 0.0;
    };

    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::array<double, 7>> V;
    std::vector<std::array<double, 7>> C;
    std::vector<Edge> E;
};

// A zero objective is not fatal: the parallelism features degrade to 0 and a
// note is written to stderr.
BipartiteGraph encode(const MilpInstance& inst);

// Debug dump: {"V": [[...]], "C": [[...]], "E": [[i, j, v]]}.
std::string graph_to_json_text(const BipartiteGraph& g);

} // namespace cutsel
