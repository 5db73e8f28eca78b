#pragma once

#include "cutsel/milp.hpp"

#include <array>
#include <optional>

namespace cutsel {

// Everything a scoring rule may look at besides the cut itself: the objective,
// the current LP optimum, and (optionally) the best known integer solution.
struct SelectionContext {
    std::vector<double> c;
    Point xlp;
    std::optional<Point> incumbent;
};

// Fraction of the cut's nonzero coefficients that sit on integer-typed
// variables; in [0,1]. Errors on an all-zero cut.
double integer_support(const Cut& cut, const std::vector<VarType>& vtype);

// |cosine| between the cut coefficients and the objective; in [0,1]. Errors on
// a zero objective or zero cut.
double objective_parallelism(const Cut& cut, const std::vector<double>& c);

// Signed Euclidean distance from xlp to the cut hyperplane:
// (alpha.xlp - alpha0)/||alpha||; positive iff the cut separates xlp.
double efficacy(const Cut& cut, const Point& xlp);

// Distance from xlp to the cut along the direction toward the incumbent:
// (alpha.xlp - alpha0)/|alpha.y| with y = (xhat - xlp)/||xhat - xlp||.
// The denominator is used exactly as printed (no ||alpha|| normalization);
// |alpha.y| below 1e-12 is an error ("cut parallel to incumbent direction").
double directed_cutoff(const Cut& cut, const Point& xlp, const Point& xhat);

// |cosine| between two cuts' coefficient vectors; in [0,1].
double parallelism(const Cut& a, const Cut& b);

// lambda * isp + (1 - lambda) * obp, lambda in [0,1]
double simple_score(double lambda, const Cut& cut, const std::vector<double>& c,
                    const std::vector<VarType>& vtype);

// w1 * dcd + w2 * eff + w3 * isp + w4 * obp. Without an incumbent the dcd term
// falls back to efficacy. Raw (possibly negative) weights are accepted.
double weighted_score(const std::array<double, 4>& w, const Cut& cut,
                      const SelectionContext& ctx, const std::vector<VarType>& vtype);

// Either scoring rule plus its parameters, as carried around by the selector
// and trainer.
struct ScoringWeights {
    enum class Rule { Simple, Weighted };
    Rule rule = Rule::Weighted;
    double lambda = 0.5;                          // Simple
    std::array<double, 4> w{0.25, 0.25, 0.25, 0.25}; // Weighted: dcd, eff, isp, obp
    bool normalized = true; // normalized weights are >= 0 and sum to 1;
                            // raw policy actions set this false

    static ScoringWeights simple(double lambda);
    static ScoringWeights weighted(const std::array<double, 4>& w, bool normalized = true);

    // throws std::invalid_argument when the declared constraints are violated
    void validate() const;
};

double score_cut(const ScoringWeights& sw, const Cut& cut, const SelectionContext& ctx,
                 const std::vector<VarType>& vtype);

} // namespace cutsel
