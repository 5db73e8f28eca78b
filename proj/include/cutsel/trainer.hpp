#pragma once

#include "cutsel/policy.hpp"
#include "cutsel/selector.hpp"
#include "cutsel/simplex.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace cutsel {

struct RolloutConfig {
    int n_rounds = 5;
    int cuts_per_round = 5;
    double parallel_threshold = 0.9;
    ScoringWeights baseline_weights = ScoringWeights::weighted({0.25, 0.25, 0.25, 0.25});
    std::optional<Point> incumbent;          // reproduces the preloaded-primal setup
    std::optional<double> reference_objective; // memoized brute-force optimum
};

// Exact integer optimum by enumeration over the integer box (continuous
// variables must be absent). Instances must be small enough to enumerate;
// errors otherwise.
double brute_force_reference(const MilpInstance& inst);

// Cutting loop: solve the LP, generate Gomory cuts, select with `weights`,
// append, repeat n_rounds times (early exit when no cut is generated).
// Returns the final gap (reference - bound)/max(|reference|, 1e-8) against
// the incumbent objective when one is given, else against the brute-force
// optimum. An infeasible LP after appending cuts is a correctness tripwire
// and throws "invalid cut applied".
double rollout(const MilpInstance& inst, const ScoringWeights& weights,
               const RolloutConfig& cfg);

// (b - g)/(|b| + 1e-8): baseline-weights gap b vs action gap g, the action
// being a raw 4-weight vector.
double reward(const MilpInstance& inst, const std::array<double, 4>& action,
              const RolloutConfig& cfg);

// (baseline_gap - gap)/(|baseline_gap| + 1e-8)
double relative_improvement(double baseline_gap, double gap);

// Adam over the flattened parameter vector; lr 5e-4, beta1 0.9, beta2 0.999,
// eps 1e-8, bias-corrected.
struct AdamState {
    std::vector<double> m, v;
    long t = 0;

    explicit AdamState(std::size_t count) : m(count, 0.0), v(count, 0.0) {}
};

void adam_step(std::vector<double>& theta, const std::vector<double>& grad,
               AdamState& state, double lr = 5e-4);

struct EpochStats {
    double mean_reward = 0.0;
    double mean_logprob = 0.0;
    double gamma = 0.0;
};

// Reward hook for tasks whose payoff is not the Gomory rollout (e.g. the
// adversarial-family training task). Defaults to reward() above.
using RewardFn = std::function<double(const MilpInstance&, const std::array<double, 4>&)>;

// One REINFORCE epoch: for each instance, forward once, draw n_samples
// actions, weight each residual by -reward, and run a single backward pass
// per instance with the accumulated output adjoint (algebraically identical
// to summing per-sample gradients). Loss is the mean of -r log pi over all
// (instance, sample) pairs; one Adam step.
EpochStats reinforce_batch(PolicyParams& theta, AdamState& adam,
                           const std::vector<MilpInstance>& batch, int n_samples,
                           double gamma, const RolloutConfig& cfg, SplitMix64& rng,
                           const RewardFn& reward_fn = {});

struct GridRow {
    std::array<double, 4> w{};
    double gap = 0.0;
    double improvement = 0.0; // vs cfg.baseline_weights
};

struct GridResult {
    std::array<double, 4> best_weights{};
    double best_gap = 0.0;
    double baseline_gap = 0.0;
    std::vector<GridRow> table;
};

// All integer compositions (b1,b2,b3,b4) of `resolution`, scaled to weights,
// rolled out in lexicographic order; argmin gap with lowest-lexicographic tie
// break. The baseline gap is computed once for the improvement column.
GridResult grid_search(const MilpInstance& inst, int resolution, const RolloutConfig& cfg);

// Seeded generators for small pure-integer instances (binary packing and
// covering, integer-box lot-sizing style); references stay brute-forceable.
MilpInstance gen_packing(std::uint64_t seed);
MilpInstance gen_covering(std::uint64_t seed);
MilpInstance gen_lot_sizing(std::uint64_t seed);

// Mixed corpus cycling the three generators.
std::vector<MilpInstance> synthetic_corpus(std::uint64_t seed, int count);

} // namespace cutsel
