#include "cutsel/trainer.hpp"

#include "cutsel/encode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutsel {

double brute_force_reference(const MilpInstance& inst) {
    inst.validate();
    const std::size_t n = inst.n;
    std::vector<long> lo(n), width(n);
    double total = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_integer_type(inst.vtype[j]))
            throw std::invalid_argument("continuous variable in brute-force reference");
        if (!std::isfinite(inst.lower[j]) || !std::isfinite(inst.upper[j]))
            throw std::invalid_argument("unbounded variable in brute-force reference");
        lo[j] = static_cast<long>(std::ceil(inst.lower[j] - 1e-9));
        long hi = static_cast<long>(std::floor(inst.upper[j] + 1e-9));
        if (hi < lo[j]) throw std::invalid_argument("empty integer box");
        width[j] = hi - lo[j] + 1;
        total *= static_cast<double>(width[j]);
        if (total > 2e7)
            throw std::invalid_argument("integer box too large to enumerate");
    }
    std::vector<std::vector<double>> rows = inst.dense_rows();
    std::vector<long> v(lo);
    double best = kInf;
    bool found = false;
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < inst.m && ok; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * static_cast<double>(v[j]);
            if (lhs > inst.b[i] + 1e-9) ok = false;
        }
        if (ok) {
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += inst.c[j] * static_cast<double>(v[j]);
            if (!found || obj < best) best = obj;
            found = true;
        }
        std::size_t j = 0;
        while (j < n) {
            if (++v[j] < lo[j] + width[j]) break;
            v[j] = lo[j];
            ++j;
        }
        if (j == n) break;
    }
    if (!found) throw std::runtime_error("no integer-feasible point in the box");
    return best;
}

namespace {

double reference_of(const MilpInstance& inst, const RolloutConfig& cfg) {
    if (cfg.incumbent) return objective_value(inst, *cfg.incumbent);
    if (cfg.reference_objective) return *cfg.reference_objective;
    return brute_force_reference(inst);
}

} // namespace

double rollout(const MilpInstance& inst, const ScoringWeights& weights,
               const RolloutConfig& cfg) {
    if (cfg.n_rounds < 0) throw std::invalid_argument("round count must be >= 0");
    if (cfg.cuts_per_round < 1) throw std::invalid_argument("cuts per round must be >= 1");
    inst.validate();
    double ref = reference_of(inst, cfg);

    RelaxedModel model{inst, {}};
    SelectionContext ctx;
    ctx.c = inst.c;
    ctx.incumbent = cfg.incumbent;
    SelectorConfig sel_cfg;
    sel_cfg.max_cuts = static_cast<std::size_t>(cfg.cuts_per_round);
    sel_cfg.parallel_threshold = cfg.parallel_threshold;

    for (int round = 0; round < cfg.n_rounds; ++round) {
        LpSolution sol = solve_lp(model);
        if (sol.status != LpStatus::Optimal) {
            if (round == 0) throw std::runtime_error("root relaxation did not solve");
            throw std::runtime_error("invalid cut applied");
        }
        std::vector<Cut> pool = gomory_cuts(model, sol);
        if (pool.empty()) break;
        ctx.xlp = sol.x;
        SelectionResult res = select_cuts(pool, {}, weights, ctx, inst.vtype, sel_cfg);
        if (res.selected.empty()) break;
        for (Cut& cut : res.selected) model.cuts.push_back(std::move(cut));
    }
    LpSolution final_sol = solve_lp(model);
    if (final_sol.status != LpStatus::Optimal)
        throw std::runtime_error("invalid cut applied");
    return (ref - final_sol.objective) / std::max(std::fabs(ref), 1e-8);
}

double reward(const MilpInstance& inst, const std::array<double, 4>& action,
              const RolloutConfig& cfg) {
    double b = rollout(inst, cfg.baseline_weights, cfg);
    double g = rollout(inst, ScoringWeights::weighted(action, false), cfg);
    return (b - g) / (std::fabs(b) + 1e-8);
}

double relative_improvement(double baseline_gap, double gap) {
    return (baseline_gap - gap) / (std::fabs(baseline_gap) + 1e-8);
}

void adam_step(std::vector<double>& theta, const std::vector<double>& grad,
               AdamState& state, double lr) {
    if (theta.size() != grad.size() || theta.size() != state.m.size() ||
        theta.size() != state.v.size())
        throw std::invalid_argument("optimizer state size mismatch");
    ++state.t;
    double b1c = 1.0 - std::pow(0.9, static_cast<double>(state.t));
    double b2c = 1.0 - std::pow(0.999, static_cast<double>(state.t));
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = 0.9 * state.m[i] + 0.1 * grad[i];
        state.v[i] = 0.999 * state.v[i] + 0.001 * grad[i] * grad[i];
        double mhat = state.m[i] / b1c;
        double vhat = state.v[i] / b2c;
        theta[i] -= lr * mhat / (std::sqrt(vhat) + 1e-8);
    }
}

EpochStats reinforce_batch(PolicyParams& theta, AdamState& adam,
                           const std::vector<MilpInstance>& batch, int n_samples,
                           double gamma, const RolloutConfig& cfg, SplitMix64& rng,
                           const RewardFn& reward_fn) {
    if (batch.empty()) throw std::invalid_argument("empty training batch");
    if (n_samples < 1) throw std::invalid_argument("sample count must be >= 1");

    const double denom = static_cast<double>(batch.size()) * n_samples;
    std::vector<double> grad_flat(theta.count(), 0.0);
    double sum_reward = 0.0, sum_logprob = 0.0;

    for (const MilpInstance& inst : batch) {
        BipartiteGraph g = encode(inst);
        ForwardCache cache;
        std::array<double, 4> mu = forward(g, theta, cache);
        std::array<double, 4> dmu_acc{};
        for (int s = 0; s < n_samples; ++s) {
            GaussianAction act = sample_action(mu, gamma, rng);
            double r = reward_fn ? reward_fn(inst, act.sample) : reward(inst, act.sample, cfg);
            // d(-r log pi)/dmu = (-r) (a - mu)/gamma; summed here and pushed
            // through a single backward pass (backward is linear in the adjoint)
            for (std::size_t k = 0; k < 4; ++k)
                dmu_acc[k] += (-r) * (act.sample[k] - mu[k]) / gamma / denom;
            sum_reward += r;
            sum_logprob += act.logprob;
        }
        PolicyParams g_inst = backward(g, theta, cache, dmu_acc);
        std::vector<double> gf = g_inst.to_flat();
        for (std::size_t i = 0; i < grad_flat.size(); ++i) grad_flat[i] += gf[i];
    }

    std::vector<double> flat = theta.to_flat();
    adam_step(flat, grad_flat, adam);
    theta = PolicyParams::from_flat(flat, theta.width);

    EpochStats stats;
    stats.mean_reward = sum_reward / denom;
    stats.mean_logprob = sum_logprob / denom;
    stats.gamma = gamma;
    return stats;
}

GridResult grid_search(const MilpInstance& inst, int resolution, const RolloutConfig& cfg) {
    if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
    RolloutConfig local = cfg;
    if (!local.incumbent && !local.reference_objective)
        local.reference_objective = brute_force_reference(inst);

    GridResult res;
    res.baseline_gap = rollout(inst, local.baseline_weights, local);

    const double r = static_cast<double>(resolution);
    bool have_best = false;
    for (int b1 = 0; b1 <= resolution; ++b1)
        for (int b2 = 0; b2 + b1 <= resolution; ++b2)
            for (int b3 = 0; b1 + b2 + b3 <= resolution; ++b3) {
                int b4 = resolution - b1 - b2 - b3;
                std::array<double, 4> w{b1 / r, b2 / r, b3 / r, b4 / r};
                GridRow row;
                row.w = w;
                row.gap = rollout(inst, ScoringWeights::weighted(w), local);
                row.improvement = relative_improvement(res.baseline_gap, row.gap);
                res.table.push_back(row);
                if (!have_best || row.gap < res.best_gap) {
                    have_best = true;
                    res.best_gap = row.gap;
                    res.best_weights = w;
                }
            }
    return res;
}

namespace {

std::uint64_t draw(SplitMix64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng.next_u64() % (hi - lo + 1);
}

} // namespace

MilpInstance gen_packing(std::uint64_t seed) {
    SplitMix64 rng(seed * 2 + 1);
    MilpInstance inst;
    inst.name = "packing-" + std::to_string(seed);
    inst.n = draw(rng, 6, 10);
    inst.m = draw(rng, 4, 8);
    for (std::size_t j = 0; j < inst.n; ++j) {
        inst.c.push_back(-static_cast<double>(draw(rng, 1, 10)));
        inst.lower.push_back(0.0);
        inst.upper.push_back(1.0);
        inst.vtype.push_back(VarType::Binary);
    }
    for (std::size_t i = 0; i < inst.m; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) {
            double a = static_cast<double>(draw(rng, 0, 8));
            if (a != 0.0) {
                inst.coeffs.push_back({i, j, a});
                total += a;
            }
        }
        inst.b.push_back(std::max(2.0, std::floor(0.45 * total)));
        inst.ctype.push_back(ConsType::Knapsack);
    }
    inst.validate();
    return inst;
}

MilpInstance gen_covering(std::uint64_t seed) {
    SplitMix64 rng(seed * 2 + 1);
    MilpInstance inst;
    inst.name = "covering-" + std::to_string(seed);
    inst.n = draw(rng, 6, 9);
    inst.m = draw(rng, 3, 6);
    for (std::size_t j = 0; j < inst.n; ++j) {
        inst.c.push_back(static_cast<double>(draw(rng, 1, 10)));
        inst.lower.push_back(0.0);
        inst.upper.push_back(1.0);
        inst.vtype.push_back(VarType::Binary);
    }
    for (std::size_t i = 0; i < inst.m; ++i) {
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < inst.n; ++j)
            if (draw(rng, 0, 1) == 1) members.push_back(j);
        for (std::size_t k = 0; members.size() < 2; ++k) {
            std::size_t j = (i + k) % inst.n;
            if (std::find(members.begin(), members.end(), j) == members.end())
                members.push_back(j);
        }
        std::sort(members.begin(), members.end());
        for (std::size_t j : members) inst.coeffs.push_back({i, j, -1.0});
        inst.b.push_back(-1.0);  // at least one member set
        inst.ctype.push_back(ConsType::SetPPC);
    }
    inst.validate();
    return inst;
}

MilpInstance gen_lot_sizing(std::uint64_t seed) {
    SplitMix64 rng(seed * 2 + 1);
    MilpInstance inst;
    inst.name = "lot-sizing-" + std::to_string(seed);
    std::size_t T = draw(rng, 3, 4);
    inst.n = 2 * T;  // production x_t, then setup y_t
    std::vector<double> demand(T);
    double total_demand = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        demand[t] = static_cast<double>(draw(rng, 0, 3));
        total_demand += demand[t];
    }
    if (total_demand == 0.0) demand[0] = 1.0;
    for (std::size_t t = 0; t < T; ++t) {
        inst.c.push_back(static_cast<double>(draw(rng, 1, 5)));  // production cost
        inst.lower.push_back(0.0);
        inst.upper.push_back(5.0);
        inst.vtype.push_back(VarType::Integer);
    }
    for (std::size_t t = 0; t < T; ++t) {
        inst.c.push_back(static_cast<double>(draw(rng, 2, 7)));  // setup cost
        inst.lower.push_back(0.0);
        inst.upper.push_back(1.0);
        inst.vtype.push_back(VarType::Binary);
    }
    std::size_t row = 0;
    double cumulative = 0.0;
    for (std::size_t t = 0; t < T; ++t) {  // cumulative demand coverage
        cumulative += demand[t];
        for (std::size_t s = 0; s <= t; ++s) inst.coeffs.push_back({row, s, -1.0});
        inst.b.push_back(-cumulative);
        inst.ctype.push_back(ConsType::Linear);
        ++row;
    }
    for (std::size_t t = 0; t < T; ++t) {  // x_t <= 5 y_t
        inst.coeffs.push_back({row, t, 1.0});
        inst.coeffs.push_back({row, T + t, -5.0});
        inst.b.push_back(0.0);
        inst.ctype.push_back(ConsType::VarBound);
        ++row;
    }
    inst.m = row;
    inst.validate();
    return inst;
}

std::vector<MilpInstance> synthetic_corpus(std::uint64_t seed, int count) {
    if (count < 0) throw std::invalid_argument("corpus size must be >= 0");
    std::vector<MilpInstance> out;
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        switch (i % 3) {
            case 0: out.push_back(gen_packing(s)); break;
            case 1: out.push_back(gen_covering(s)); break;
            default: out.push_back(gen_lot_sizing(s)); break;
        }
    }
    return out;
}

} // namespace cutsel
