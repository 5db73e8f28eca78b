#include "doctest.h"

#include "cutsel/family.hpp"
#include "cutsel/milp.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

using namespace cutsel;

namespace {

bool point_close(const Point& p, const Point& q, double tol) {
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::abs(p[i] - q[i]) > tol) return false;
    }
    return true;
}

bool set_contains(const std::vector<Point>& set, const Point& p, double tol) {
    return std::any_of(set.begin(), set.end(),
                       [&](const Point& q) { return point_close(p, q, tol); });
}

bool sets_equal(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Point& p : a) {
        if (!set_contains(b, p, tol)) return false;
    }
    for (const Point& p : b) {
        if (!set_contains(a, p, tol)) return false;
    }
    return true;
}

MilpInstance box_lp(std::size_t n, std::vector<double> c, std::vector<double> lo,
                    std::vector<double> hi) {
    MilpInstance inst;
    inst.name = "box";
    inst.n = n;
    inst.m = 0;
    inst.c = std::move(c);
    inst.lower = std::move(lo);
    inst.upper = std::move(hi);
    inst.vtype.assign(n, VarType::Continuous);
    return inst;
}

// Random bounded LP with a guaranteed-feasible interior point: draw a point in
// the box, then set each right-hand side at or above the row value there.
RelaxedModel random_feasible_lp(SplitMix64& rng) {
    const std::size_t n = 2 + rng.next_u64() % 5; // 2..6
    const std::size_t m = 1 + rng.next_u64() % 8; // 1..8
    MilpInstance inst;
    inst.name = "random-lp";
    inst.n = n;
    inst.m = m;
    inst.vtype.assign(n, VarType::Continuous);
    inst.ctype.assign(m, ConsType::Linear);
    for (std::size_t j = 0; j < n; ++j) {
        inst.c.push_back(rng.next_uniform(-3.0, 3.0));
        const double lo = rng.next_uniform(-3.0, 0.0);
        inst.lower.push_back(lo);
        inst.upper.push_back(lo + rng.next_uniform(0.5, 4.0));
    }
    Point x0(n);
    for (std::size_t j = 0; j < n; ++j) {
        x0[j] = inst.lower[j] + rng.next_uniform(0.0, 1.0) * (inst.upper[j] - inst.lower[j]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        double row_at_x0 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.next_uniform() < 0.4) continue;
            const double a = rng.next_uniform(-4.0, 4.0);
            inst.coeffs.push_back({i, j, a});
            row_at_x0 += a * x0[j];
        }
        inst.b.push_back(row_at_x0 + rng.next_uniform(0.0, 2.0));
    }
    return RelaxedModel{std::move(inst), {}};
}

} // namespace

TEST_CASE("family relaxation optima before and after the one-round cut") {
    const RelaxedModel root{make_instance({1.0, 0.0}), {}};
    const LpSolution sol = solve_lp(root);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(point_close(sol.x, {-0.5, 3.0, 0.5}, 1e-9));
    CHECK(sol.objective == doctest::Approx(-31.0).epsilon(1e-12));

    const RelaxedModel after{make_instance({1.0, 0.0}), {family_cut(CutType::GC, 1)}};
    const LpSolution sol2 = solve_lp(after);
    REQUIRE(sol2.status == LpStatus::Optimal);
    CHECK(point_close(sol2.x, {1.0, 1.0, 0.0}, 1e-9));
    CHECK(sol2.objective == doctest::Approx(-9.0).epsilon(1e-12));
}

TEST_CASE("bound-attained optimum on a plain box") {
    const RelaxedModel model{box_lp(1, {1.0}, {0.0}, {1.0}), {}};
    const LpSolution sol = solve_lp(model);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(0.0));
    CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("unbounded and infeasible models are reported in the status") {
    const RelaxedModel unbounded{box_lp(1, {-1.0}, {0.0}, {kInf}), {}};
    CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

    MilpInstance inst = box_lp(1, {1.0}, {0.0}, {1.0});
    inst.m = 1;
    inst.coeffs = {{0, 0, 1.0}};
    inst.b = {-1.0}; // x <= -1 contradicts x >= 0
    inst.ctype = {ConsType::Linear};
    CHECK(solve_lp(RelaxedModel{inst, {}}).status == LpStatus::Infeasible);
}

TEST_CASE("solve_lp is deterministic") {
    const RelaxedModel model{make_instance({2.5, 0.7}), {}};
    const LpSolution a = solve_lp(model);
    const LpSolution b = solve_lp(model);
    CHECK(a.x == b.x);
    CHECK(a.objective == b.objective);
    CHECK(a.basis == b.basis);
}

TEST_CASE("vertex enumeration of the family polytope") {
    const RelaxedModel root{make_instance({1.5, 0.25}), {}};
    const std::vector<Point> verts = vertex_enumerate(root);
    CHECK(sets_equal(verts, feasible_vertices(), 1e-7));

    const RelaxedModel cut{make_instance({1.5, 0.25}), {family_cut(CutType::GC, 1)}};
    std::vector<Point> expected = integer_points();
    expected.push_back({61.0 / 91.0, 60.0 / 91.0, 10.0 / 91.0});
    CHECK(sets_equal(vertex_enumerate(cut), expected, 1e-7));
}

TEST_CASE("vertex enumeration of the unit square") {
    const RelaxedModel model{box_lp(2, {1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}), {}};
    const std::vector<Point> verts = vertex_enumerate(model);
    const std::vector<Point> corners{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(sets_equal(verts, corners, 1e-9));
}

TEST_CASE("simplex agrees with the vertex-enumeration oracle on random LPs") {
    SplitMix64 rng(2024);
    for (int rep = 0; rep < 60; ++rep) {
        const RelaxedModel model = random_feasible_lp(rng);
        const LpSolution sol = solve_lp(model);
        REQUIRE(sol.status == LpStatus::Optimal);
        const std::vector<Point> verts = vertex_enumerate(model);
        REQUIRE(!verts.empty());
        double best = kInf;
        for (const Point& v : verts) {
            best = std::min(best, objective_value(model.base, v));
        }
        CHECK(std::abs(sol.objective - best) <= 1e-7);
    }
}

TEST_CASE("appending a valid cut never decreases the LP minimum") {
    const FamilyParams p{2.0, 0.5};
    RelaxedModel model{make_instance(p), {}};
    double previous = solve_lp(model).objective;
    for (int n = 1; n <= 5; ++n) {
        model.cuts.push_back(family_cut(CutType::ISC, n));
        const LpSolution sol = solve_lp(model);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective >= previous - 1e-9);
        previous = sol.objective;
    }
}

TEST_CASE("fractional-basic rounding cut on the one-variable knapsack") {
    MilpInstance inst;
    inst.name = "knapsack-1";
    inst.n = 1;
    inst.m = 1;
    inst.c = {-1.0};
    inst.coeffs = {{0, 0, 2.0}};
    inst.b = {3.0};
    inst.lower = {0.0};
    inst.upper = {3.0};
    inst.vtype = {VarType::Integer};
    inst.ctype = {ConsType::Knapsack};
    const RelaxedModel model{inst, {}};
    const LpSolution sol = solve_lp(model);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[0] == doctest::Approx(1.5));
    const std::vector<Cut> cuts = gomory_cuts(model, sol);
    REQUIRE(cuts.size() == 1);
    REQUIRE(cuts[0].coeffs.size() == 1);
    CHECK(cuts[0].coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cuts[0].rhs == doctest::Approx(1.0).epsilon(1e-12));
    // The cut separates x = 1.5 and keeps both integer points {0, 1}.
    CHECK(cut_is_valid_for(cuts[0], {{0.0}, {1.0}}));
    CHECK(cuts[0].coeffs[0] * 1.5 > cuts[0].rhs + 1e-9);
}

TEST_CASE("integral LP optimum produces no cuts") {
    // row-free box: there is no tableau row to derive from
    MilpInstance inst = box_lp(2, {1.0, 1.0}, {0.0, 0.0}, {4.0, 4.0});
    inst.vtype = {VarType::Integer, VarType::Integer};
    const RelaxedModel model{inst, {}};
    const LpSolution sol = solve_lp(model);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(gomory_cuts(model, sol).empty());

    // with a row present the optimum is still integral, so still no cuts
    MilpInstance rowed = inst;
    rowed.m = 1;
    rowed.ctype = {ConsType::Linear};
    rowed.coeffs = {{0, 0, 1.0}, {0, 1, 1.0}};
    rowed.b = {3.0};
    rowed.validate();
    const RelaxedModel rowed_model{rowed, {}};
    const LpSolution rowed_sol = solve_lp(rowed_model);
    REQUIRE(rowed_sol.status == LpStatus::Optimal);
    CHECK(gomory_cuts(rowed_model, rowed_sol).empty());
}

TEST_CASE("generated cuts are valid for enumerated integer points") {
    SplitMix64 rng(99);
    int instances_with_cuts = 0;
    for (int rep = 0; rep < 15; ++rep) {
        // random integer-box instance, n in 2..4, m in 2..4, bound width <= 4
        const std::size_t n = 2 + rng.next_u64() % 3;
        const std::size_t m = 2 + rng.next_u64() % 3;
        MilpInstance inst;
        inst.name = "random-int";
        inst.n = n;
        inst.m = m;
        inst.vtype.assign(n, VarType::Integer);
        inst.ctype.assign(m, ConsType::Linear);
        for (std::size_t j = 0; j < n; ++j) {
            inst.c.push_back(rng.next_uniform(-5.0, 5.0));
            inst.lower.push_back(0.0);
            inst.upper.push_back(static_cast<double>(1 + rng.next_u64() % 4));
        }
        for (std::size_t i = 0; i < m; ++i) {
            double pos_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (rng.next_uniform() < 0.35) continue;
                const double a = rng.next_uniform(-3.0, 4.0);
                inst.coeffs.push_back({i, j, a});
                if (a > 0.0) pos_sum += a * inst.upper[j];
            }
            inst.b.push_back(rng.next_uniform(0.5, std::max(1.0, 0.6 * pos_sum)));
        }
        const RelaxedModel model{inst, {}};
        const LpSolution sol = solve_lp(model);
        if (sol.status != LpStatus::Optimal) continue;
        const std::vector<Cut> cuts = gomory_cuts(model, sol);
        if (!cuts.empty()) ++instances_with_cuts;

        // enumerate all integer points of the box that satisfy the rows
        std::vector<Point> ipts;
        std::vector<int> counter(n, 0);
        while (true) {
            Point p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = inst.lower[j] + counter[j];
            if (is_integer_feasible(inst, p, 1e-9)) ipts.push_back(p);
            std::size_t j = 0;
            while (j < n) {
                if (inst.lower[j] + ++counter[j] <= inst.upper[j]) break;
                counter[j] = 0;
                ++j;
            }
            if (j == n) break;
        }
        for (const Cut& cut : cuts) {
            CHECK(cut_is_valid_for(cut, ipts, 1e-7));
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += cut.coeffs[j] * sol.x[j];
            CHECK(lhs > cut.rhs + 1e-9); // separates the fractional optimum
        }
    }
    CHECK(instances_with_cuts >= 5);
}

TEST_CASE("status names") {
    CHECK(std::string(to_string(LpStatus::Optimal)) == "optimal");
    CHECK(std::string(to_string(LpStatus::Infeasible)) == "infeasible");
    CHECK(std::string(to_string(LpStatus::Unbounded)) == "unbounded");
}
