#pragma once

#include "cutsel/scoring.hpp"

#include <cstddef>
#include <limits>

namespace cutsel {

struct SelectorConfig {
    std::size_t max_cuts = std::numeric_limits<std::size_t>::max(); // greedy picks
    double parallel_threshold = 0.9; // in (0,1]; drop at parallelism >= threshold
    bool readd_filtered = false;     // post-pass: refill from filtered cuts up to
                                     // max_cuts, highest score first (off by default)
};

struct SelectionResult {
    std::vector<Cut> selected;   // forced first, then greedy picks in pick order
    std::size_t n_selected = 0;  // greedy picks only
    std::vector<std::size_t> picked_indices; // pool indices of the greedy picks
};

// Greedy parallelism-filtered selection. Forced cuts are taken unconditionally
// and the pool is filtered against them first; then repeatedly the highest
// scoring pool cut is taken and the remainder filtered against it. Scores are
// computed once against the given context and never refreshed. Ties break to
// the lowest input index.
SelectionResult select_cuts(const std::vector<Cut>& pool, const std::vector<Cut>& forced,
                            const ScoringWeights& weights, const SelectionContext& ctx,
                            const std::vector<VarType>& vtype, const SelectorConfig& cfg);

} // namespace cutsel
