#include "cutsel/family.hpp"

#include "cutsel/scoring.hpp"
#include "cutsel/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cutsel {

namespace {

const double S2 = std::sqrt(2.0);
const double S101 = std::sqrt(101.0);
const double S201 = std::sqrt(201.0);
const double S402 = std::sqrt(402.0);
const double S20301 = std::sqrt(20301.0);

double lambda_lb_closed(double a, double d) {
    double L1 = S20301 * std::sqrt(a * a + d * (d + 20.0) + 101.0);
    double L2 = 101.0 * a * a + a * (-20.0 * (S20301 - 101.0) * d - 202.0 * (S20301 - 110.0));
    double L3 = 20.0 * d * (-10.0 * (S20301 - 151.0) * d - 211.0 * S20301 + 31411.0) -
                22220.0 * S20301 + 3272501.0;
    double L4 = -606.0 * a * a + 12.0 * a * (10.0 * (S20301 - 101.0) * d + 101.0 * (S20301 - 110.0));
    double L5 = 120.0 * d * (10.0 * (S20301 - 151.0) * d + 211.0 * S20301 - 31411.0) +
                606.0 * (220.0 * S20301 - 32401.0);
    double L6 = 5555.0 * a * a + 24.0 * a * (10.0 * (S20301 - 101.0) * d + 101.0 * (S20301 - 110.0));
    double L7 = d * ((2400.0 * S20301 - 355633.0) * d + 50640.0 * S20301 - 7403300.0) +
                505.0 * (528.0 * S20301 - 76409.0);
    return 2.0 * (L1 * std::sqrt(L2 + L3) + L4 + L5) / (L6 + L7);
}

double lambda_ub_closed(double a, double d) {
    double U1 = -(a * a + d * (d + 20.0) + 101.0);
    double U2 = (2.0 * S402 - 203.0) * a * a + a * (20.0 * (S402 - 2.0) * d + 222.0 * S402 - 842.0) +
                20.0 * d * (-10.0 * d + S402 - 220.0) + 220.0 * S402 - 24401.0;
    double U3 = (6.0 * S402 - 609.0) * a * a + 6.0 * a * (10.0 * (S402 - 2.0) * d + 111.0 * S402 - 421.0) +
                60.0 * d * (-10.0 * d + S402 - 220.0) + 660.0 * S402 - 73203.0;
    double U4 = (6.0 * S402 - 475.0) * a * a + 6.0 * a * (10.0 * (S402 - 2.0) * d + 111.0 * S402 - 421.0) +
                2.0 * d * (-233.0 * d + 30.0 * S402 - 5260.0) + 660.0 * S402 - 59669.0;
    return (S402 * std::sqrt(U1 * U2) + U3) / U4;
}

void check_d(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("d must lie in [0, 1]");
}

} // namespace

const char* to_string(CutType t) {
    switch (t) {
        case CutType::GC: return "GC";
        case CutType::ISC: return "ISC";
        case CutType::OPC: return "OPC";
    }
    throw std::invalid_argument("unknown cut type");
}

const char* to_string(SimStatus s) {
    switch (s) {
        case SimStatus::SolvedByGC: return "SolvedByGC";
        case SimStatus::NotSolved: return "NotSolved";
    }
    throw std::invalid_argument("unknown simulation status");
}

MilpInstance make_instance(const FamilyParams& p) {
    if (p.a < 0.0) throw std::invalid_argument("a must be nonnegative");
    check_d(p.d);
    MilpInstance inst;
    inst.name = "adversarial(a=" + std::to_string(p.a) + ",d=" + std::to_string(p.d) + ")";
    inst.n = 3;
    inst.m = 4;
    inst.c = {1.0, -(10.0 + p.d), -p.a};
    inst.coeffs = {
        {0, 1, -0.5}, {0, 2, 3.0},
        {1, 2, -1.0},
        {2, 0, -0.5}, {2, 1, 0.5}, {2, 2, -3.5},
        {3, 0, 0.5}, {3, 2, 1.5},
    };
    inst.b = {0.0, 0.0, 0.0, 0.5};
    inst.lower = {-kInf, -kInf, 0.0};
    inst.upper = {kInf, kInf, 1.0};
    inst.vtype = {VarType::Integer, VarType::Continuous, VarType::Binary};
    inst.ctype = {ConsType::Linear, ConsType::Linear, ConsType::Linear, ConsType::Linear};
    return inst;
}

const std::vector<Point>& feasible_vertices() {
    static const std::vector<Point> v = {
        {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {-0.5, 3.0, 0.5}};
    return v;
}

const std::vector<Point>& integer_points() {
    static const std::vector<Point> v = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}};
    return v;
}

double epsilon(int n) {
    if (n < 1) throw std::invalid_argument("cut round must be >= 1");
    return 0.1 * (1.0 - std::ldexp(1.0, -n));
}

Cut family_cut(CutType t, int n, bool widened_opc) {
    Cut cut;
    switch (t) {
        case CutType::GC:
            cut.coeffs = {-10.0, 10.0, 1.0};
            cut.rhs = 0.0;
            cut.origin = "GC";
            return cut;
        case CutType::ISC:
            cut.coeffs = {-1.0, 0.0, 1.0};
            cut.rhs = 1.0 - epsilon(n);
            cut.origin = "ISC n=" + std::to_string(n);
            return cut;
        case CutType::OPC:
            cut.coeffs = {-1.0, 10.0, 0.0};
            if (widened_opc) {
                if (n < 2)
                    throw std::invalid_argument("widened variant needs a preceding round");
                cut.rhs = 30.5 - 31.0 * epsilon(n - 1);
                cut.origin = "OPC widened n=" + std::to_string(n);
            } else {
                cut.rhs = 30.5 - epsilon(n);
                cut.origin = "OPC n=" + std::to_string(n);
            }
            return cut;
    }
    throw std::invalid_argument("unknown cut type");
}

std::vector<std::pair<CutType, Cut>> candidate_cuts(int n, std::optional<CutType> last_applied) {
    std::vector<std::pair<CutType, Cut>> out;
    out.emplace_back(CutType::GC, family_cut(CutType::GC, n));
    out.emplace_back(CutType::ISC, family_cut(CutType::ISC, n));
    bool widened = last_applied && *last_applied == CutType::ISC;
    out.emplace_back(CutType::OPC, family_cut(CutType::OPC, n, widened));
    return out;
}

double cut_obp(CutType t, const FamilyParams& p) {
    if (p.a < 0.0) throw std::invalid_argument("a must be nonnegative");
    check_d(p.d);
    double D = std::sqrt(1.0 + p.a * p.a + (10.0 + p.d) * (10.0 + p.d));
    switch (t) {
        case CutType::GC: return (110.0 + p.a + 10.0 * p.d) / (S201 * D);
        case CutType::ISC: return (1.0 + p.a) / (S2 * D);
        case CutType::OPC: return (101.0 + 10.0 * p.d) / (S101 * D);
    }
    throw std::invalid_argument("unknown cut type");
}

double max_a(double d) {
    check_d(d);
    double num = -2680.0 * S101 * d + 2020.0 * S201 * d - 6767.0 * S2 - 27068.0 * S101 +
                 22220.0 * S201;
    double den = 6767.0 * S2 - 202.0 * S201;
    return num / den;
}

std::pair<double, double> region_bounds(double a, double d) {
    check_d(d);
    if (a < 0.0) throw std::invalid_argument("a must be nonnegative");
    if (a > max_a(d) + 1e-9)
        throw std::invalid_argument("outside the GC-optimal region");
    return {lambda_lb_closed(a, d), lambda_ub_closed(a, d)};
}

GoodCutInterval good_cut_interval(double d, double eps_hat) {
    check_d(d);
    double ma = max_a(d);
    if (!(eps_hat > 0.0 && eps_hat <= ma))
        throw std::invalid_argument("eps_hat must lie in (0, max_a(d)]");
    GoodCutInterval gi;
    gi.a = ma - eps_hat;
    gi.d = d;
    auto [lb, ub] = region_bounds(gi.a, d);
    gi.lb = lb;
    gi.ub = ub;
    return gi;
}

std::pair<double, double> achievable_lambda_range() {
    double lu0 = lambda_ub_closed(max_a(0.0), 0.0);
    double lu1 = lambda_ub_closed(max_a(1.0), 1.0);
    return {std::min(lu0, lu1), std::max(lu0, lu1)};
}

double find_d_for_lambda(double lambda_target) {
    auto [lo_r, hi_r] = achievable_lambda_range();
    if (!(lambda_target >= lo_r && lambda_target <= hi_r))
        throw std::invalid_argument("target lambda outside the achievable range [" +
                                    std::to_string(lo_r) + ", " + std::to_string(hi_r) + "]");
    auto f = [](double d, double target) {
        return lambda_ub_closed(max_a(d), d) - target;
    };
    double lo = 0.0, hi = 1.0;
    double flo = f(lo, lambda_target), fhi = f(hi, lambda_target);
    if (flo * fhi > 0.0)
        throw std::runtime_error("no sign change for the target lambda");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(lo, lambda_target) * f(mid, lambda_target) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

AdversarialResult construct_adversarial(const std::vector<double>& lambdas) {
    std::vector<double> pts = lambdas;
    for (double v : pts)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("grid values must lie in [0, 1]");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto [lo_r, hi_r] = achievable_lambda_range();

    std::vector<std::pair<double, double>> gaps;
    if (pts.empty()) {
        gaps.emplace_back(0.0, 1.0);
    } else {
        if (pts.front() > 0.0) gaps.emplace_back(0.0, pts.front());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            gaps.emplace_back(pts[i], pts[i + 1]);
        if (pts.back() < 1.0) gaps.emplace_back(pts.back(), 1.0);
    }
    std::vector<std::pair<double, double>> usable;
    for (const auto& g : gaps)
        if (std::min(g.second, hi_r) - std::max(g.first, lo_r) > 0.0) usable.push_back(g);
    if (usable.empty())
        throw std::invalid_argument("grid covers the entire achievable lambda range");
    const auto& gap = *std::max_element(
        usable.begin(), usable.end(), [](const auto& x, const auto& y) {
            return x.second - x.first < y.second - y.first;
        });
    double lo_i = std::max(gap.first, lo_r);
    double hi_i = std::min(gap.second, hi_r);
    double target = 0.5 * (lo_i + hi_i);
    double dP = find_d_for_lambda(target);
    double ma = max_a(dP);
    double eps_hat = ma / 2.0;
    for (int it = 0; it < 60; ++it) {
        GoodCutInterval gi = good_cut_interval(dP, eps_hat);
        if (gap.first < gi.lb && gi.ub < gap.second) {
            AdversarialResult res;
            res.params = {gi.a, dP};
            res.interval = gi;
            res.eps_hat = eps_hat;
            res.gap_lo = gap.first;
            res.gap_hi = gap.second;
            return res;
        }
        eps_hat *= 0.5;
    }
    throw std::runtime_error("window halving did not fit inside the grid gap");
}

FamilyParams construct_unsolvable(double d, double eps_tilde) {
    check_d(d);
    if (!(eps_tilde > 0.0 && eps_tilde <= 0.1))
        throw std::invalid_argument("eps_tilde must lie in (0, 0.1]");
    return {max_a(d) + eps_tilde, d};
}

SimOutcome simulate_pure_cutting(const FamilyParams& p, double lambda, int max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");

    RelaxedModel model{make_instance(p), {}};
    const std::vector<VarType>& vt = model.base.vtype;
    const std::vector<Point>& ipts = integer_points();

    // row index of the currently applied cut of each type; a deeper cut of the
    // same type replaces its row only when it dominates the old one
    std::array<std::optional<std::size_t>, 3> slot;
    std::optional<CutType> last;

    SimOutcome out;
    int rounds = 0;
    LpSolution sol = solve_lp(model);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("relaxation did not solve to optimality");
    out.lp_objectives.push_back(sol.objective);

    while (true) {
        if (is_integer_feasible(model.base, sol.x, 1e-6)) {
            if (rounds == 0) throw std::runtime_error("root relaxation already integral");
            out.status = SimStatus::SolvedByGC;
            out.solved_round = rounds;
            out.final_x = sol.x;
            break;
        }
        if (rounds == max_rounds) {
            out.status = SimStatus::NotSolved;
            out.final_x = sol.x;
            break;
        }
        auto cands = candidate_cuts(rounds + 1, last);
        std::size_t best = 0;
        double best_score = -kInf;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            double s = simple_score(lambda, cands[i].second, model.base.c, vt);
            if (s > best_score) {
                best_score = s;
                best = i;
            }
        }
        CutType t = cands[best].first;
        const Cut& cut = cands[best].second;

        double lhs = 0.0;
        for (std::size_t j = 0; j < 3; ++j) lhs += cut.coeffs[j] * sol.x[j];
        // the depth schedule stalls at the f64 resolution of 0.1 after ~54
        // rounds, so the separation margin is allowed to reach zero within
        // rounding; genuinely non-separating cuts still trip this
        if (lhs < cut.rhs - 1e-9)
            throw std::runtime_error("selected cut does not separate the LP optimum");
        if (!cut_is_valid_for(cut, ipts, 1e-9))
            throw std::runtime_error("selected cut is invalid for the integer points");

        std::size_t ti = static_cast<std::size_t>(t);
        if (slot[ti] && model.cuts[*slot[ti]].rhs >= cut.rhs) {
            model.cuts[*slot[ti]] = cut;
        } else {
            slot[ti] = model.cuts.size();
            model.cuts.push_back(cut);
        }
        last = t;
        out.chosen_types.push_back(t);
        ++rounds;

        sol = solve_lp(model);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("relaxation did not solve to optimality after a cut");
        out.lp_objectives.push_back(sol.objective);
    }
    out.rounds_run = rounds;
    return out;
}

FamilyVertexSets known_vertex_sets(int n) {
    double e = epsilon(n);
    FamilyVertexSets out;
    out.gc = integer_points();
    out.gc.push_back({61.0 / 91.0, 60.0 / 91.0, 10.0 / 91.0});
    out.isc = integer_points();
    out.isc.push_back({-0.5 + 0.75 * e, 3.0 - 1.5 * e, 0.5 - 0.25 * e});
    out.isc.push_back({-0.5 + 0.75 * e, 3.0 - e, 0.5 - 0.25 * e});
    out.isc.push_back({-0.5 + 0.5 * e, 3.0 - 3.0 * e, 0.5 - 0.5 * e});
    out.opc = integer_points();
    out.opc.push_back({-0.5 + e / 21.0, 3.0 - 2.0 * e / 21.0, 0.5 - e / 63.0});
    out.opc.push_back({-0.5 + 3.0 * e / 43.0, 3.0 - 4.0 * e / 43.0, 0.5 - e / 43.0});
    out.opc.push_back({-0.5 + e / 61.0, 3.0 - 6.0 * e / 61.0, 0.5 - e / 61.0});
    return out;
}

} // namespace cutsel
