#pragma once

#include "cutsel/milp.hpp"

#include <cstdint>
#include <vector>

namespace cutsel {

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

// Position of a column relative to the current basis.
enum class ColStatus : std::uint8_t { Basic, AtLower, AtUpper, FreeNonbasic };

// The LP relaxation of an instance with zero or more cuts appended as rows,
// in application order.
struct RelaxedModel {
    MilpInstance base;
    std::vector<Cut> cuts;

    std::size_t n() const { return base.n; }
    std::size_t rows() const { return base.m + cuts.size(); }
    std::vector<double> row_coeffs(std::size_t i) const;
    double row_rhs(std::size_t i) const;
};

// Optimal basis snapshot: enough simplex state to derive Gomory cuts.
// Columns 0..n-1 are structural, n..n+m-1 the row slacks.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Point x;                 // structural values (status == Optimal)
    double objective = 0.0;
    std::vector<int> basis;             // basic column of each tableau row
    std::vector<ColStatus> col_status;  // per column, structural + slack
    std::vector<std::vector<double>> tableau; // B^-1 [A | I], rows() x (n + rows())
    std::vector<double> basic_values;   // current value of each basic variable
};

// Bounded-variable primal simplex with Bland's rule (deterministic; never
// cycles). Free variables are supported; infeasible/unbounded are reported in
// the status, never thrown.
LpSolution solve_lp(const RelaxedModel& model);

// All vertices of the feasible region by active-set enumeration, deduplicated
// within 1e-8 and verified feasible within 1e-7. Independent oracle for
// solve_lp; n must be <= 12.
std::vector<Point> vertex_enumerate(const RelaxedModel& model);

// One Gomory fractional (mixed-integer) cut per basic integer-typed variable
// with fractional value (> 1e-6). Every returned cut separates sol.x and is
// valid for the integer-feasible points of the model.
std::vector<Cut> gomory_cuts(const RelaxedModel& model, const LpSolution& sol);

} // namespace cutsel
