#include "cutsel/selector.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutsel {

SelectionResult select_cuts(const std::vector<Cut>& pool, const std::vector<Cut>& forced,
                            const ScoringWeights& weights, const SelectionContext& ctx,
                            const std::vector<VarType>& vtype, const SelectorConfig& cfg) {
    if (!(cfg.parallel_threshold > 0.0 && cfg.parallel_threshold <= 1.0))
        throw std::invalid_argument("parallelism threshold must lie in (0, 1]");
    weights.validate();

    SelectionResult res;
    res.selected = forced;

    const std::size_t P = pool.size();
    std::vector<double> score(P);
    for (std::size_t i = 0; i < P; ++i) score[i] = score_cut(weights, pool[i], ctx, vtype);

    enum class State { Alive, Filtered, Picked };
    std::vector<State> state(P, State::Alive);

    for (const Cut& f : forced)
        for (std::size_t i = 0; i < P; ++i)
            if (state[i] == State::Alive && parallelism(pool[i], f) >= cfg.parallel_threshold)
                state[i] = State::Filtered;

    while (res.n_selected < cfg.max_cuts) {
        std::size_t best = P;
        for (std::size_t i = 0; i < P; ++i) {
            if (state[i] != State::Alive) continue;
            if (best == P || score[i] > score[best]) best = i;
        }
        if (best == P) break;
        state[best] = State::Picked;
        res.selected.push_back(pool[best]);
        res.picked_indices.push_back(best);
        ++res.n_selected;
        for (std::size_t i = 0; i < P; ++i)
            if (state[i] == State::Alive &&
                parallelism(pool[i], pool[best]) >= cfg.parallel_threshold)
                state[i] = State::Filtered;
    }

    if (cfg.readd_filtered) {
        std::vector<std::size_t> filtered;
        for (std::size_t i = 0; i < P; ++i)
            if (state[i] == State::Filtered) filtered.push_back(i);
        std::sort(filtered.begin(), filtered.end(), [&](std::size_t a, std::size_t b) {
            if (score[a] != score[b]) return score[a] > score[b];
            return a < b;
        });
        for (std::size_t i : filtered) {
            if (res.n_selected >= cfg.max_cuts) break;
            res.selected.push_back(pool[i]);
            res.picked_indices.push_back(i);
            ++res.n_selected;
        }
    }
    return res;
}

} // namespace cutsel
