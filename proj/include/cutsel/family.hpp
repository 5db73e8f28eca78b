#pragma once

#include "cutsel/milp.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cutsel {

// The adversarial 3-variable family
//     min  x1 - (10+d) x2 - a x3
//     s.t. -1/2 x2 + 3 x3        <= 0
//          -x3                   <= 0
//          -1/2 x1 + 1/2 x2 - 7/2 x3 <= 0
//           1/2 x1 + 3/2 x3      <= 1/2
//          x1 integer (free), x2 continuous (free), x3 binary,
// with a >= 0, d in [0,1]. Its LP relaxation is a tetrahedron whose only
// fractional vertex is the LP optimum; a fixed scalar lambda in the simple
// scoring rule either solves it in one round or never.
struct FamilyParams {
    double a = 0.0;
    double d = 0.0;
};

// The three candidate cut types offered each round. GC solves the instance in
// one round; ISC carries maximal integer support; OPC carries maximal
// objective parallelism. ISC/OPC trajectories never terminate.
enum class CutType { GC, ISC, OPC };

const char* to_string(CutType t);

MilpInstance make_instance(const FamilyParams& p);

// The four vertices of the LP relaxation (independent of a and d).
const std::vector<Point>& feasible_vertices();

// The three integer vertices {(0,0,0), (1,0,0), (1,1,0)}.
const std::vector<Point>& integer_points();

// Cut-depth schedule: epsilon_n = 0.1 (1 - 2^-n), strictly increasing with
// supremum 0.1; n >= 1.
double epsilon(int n);

// The round-n cut of the given type:
//   GC:  -10 x1 + 10 x2 + x3 <= 0                        (n ignored)
//   ISC: -x1 + x3 <= 1 - eps_n
//   OPC: -x1 + 10 x2 <= 61/2 - eps_n, or the widened variant
//        -x1 + 10 x2 <= 61/2 - 31 eps_{n-1} offered right after an ISC round
//        (it removes the facet the ISC created for any depth schedule).
Cut family_cut(CutType t, int n, bool widened_opc = false);

// Candidate pool for round n given the previously applied type, GC first so
// that index order realizes its tie-break privilege.
std::vector<std::pair<CutType, Cut>> candidate_cuts(int n, std::optional<CutType> last_applied);

// Closed-form objective parallelism of each cut type against the family
// objective (integer support is 2/3, 1, 1/2 for GC, ISC, OPC).
double cut_obp(CutType t, const FamilyParams& p);

// Closed-form lambda window [lb, ub] inside which GC scores at least as high
// as both alternatives under the simple rule. Defined for 0 <= a <= max_a(d);
// errors beyond that ("outside the GC-optimal region").
std::pair<double, double> region_bounds(double a, double d);

// Largest a for which the lambda window is nonempty, as a closed form in d.
double max_a(double d);

// A certified-nonempty lambda window obtained by backing a off its maximum:
// a = max_a(d) - eps_hat, 0 < eps_hat <= max_a(d).
struct GoodCutInterval {
    double lb = 0.0;
    double ub = 0.0;
    double a = 0.0;
    double d = 0.0;
};

GoodCutInterval good_cut_interval(double d, double eps_hat);

// Achievable range of lambda_ub(max_a(d), d) over d in [0,1], ordered low-high.
std::pair<double, double> achievable_lambda_range();

// Bisection for a d whose pinched window sits at lambda_target; the target
// must lie in achievable_lambda_range(). Residual <= 1e-9.
double find_d_for_lambda(double lambda_target);

// Given a finite sorted grid of lambda values, produce family parameters whose
// certified window avoids every grid member: pick the widest gap of the grid
// (including the half-open boundary gaps) that intersects the achievable
// range, aim at the midpoint of the intersection, and halve eps_hat starting
// from max_a(d')/2 until the window fits strictly inside the gap.
struct AdversarialResult {
    FamilyParams params;
    GoodCutInterval interval;
    double eps_hat = 0.0;
    double gap_lo = 0.0;
    double gap_hi = 0.0;
};

AdversarialResult construct_adversarial(const std::vector<double>& lambdas);

// Parameters just outside the GC-optimal region (a = max_a(d) + eps_tilde,
// 0 < eps_tilde <= 0.1): no lambda solves the instance.
FamilyParams construct_unsolvable(double d, double eps_tilde);

enum class SimStatus { SolvedByGC, NotSolved };

const char* to_string(SimStatus s);

struct SimOutcome {
    SimStatus status = SimStatus::NotSolved;
    int solved_round = 0;              // round whose cut produced the integral LP
    int rounds_run = 0;
    std::vector<CutType> chosen_types; // per round, in order
    std::vector<double> lp_objectives; // LP optimum after each solve (root first)
    Point final_x;
};

// Pure cutting-plane loop under the simple rule: solve the LP, stop when
// integral, otherwise score the three candidates with simple_score and apply
// the argmax (GC wins ties by index order). Each applied cut is asserted to
// separate the current LP optimum and to be valid for the integer points. A
// deeper cut of the type already applied replaces its predecessor row (the
// old row is dominated, so the feasible region is unchanged).
SimOutcome simulate_pure_cutting(const FamilyParams& p, double lambda, int max_rounds);

// The closed-form vertex sets of the relaxation after applying one cut of
// each type at depth eps_n, for cross-checking against vertex enumeration.
struct FamilyVertexSets {
    std::vector<Point> gc;
    std::vector<Point> isc;
    std::vector<Point> opc;
};

FamilyVertexSets known_vertex_sets(int n);

} // namespace cutsel
