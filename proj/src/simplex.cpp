#include "cutsel/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cutsel {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    throw std::invalid_argument("unknown LP status");
}

std::vector<double> RelaxedModel::row_coeffs(std::size_t i) const {
    if (i < base.m) return base.row(i);
    std::size_t k = i - base.m;
    if (k >= cuts.size()) throw std::invalid_argument("row index out of range");
    if (cuts[k].coeffs.size() != base.n)
        throw std::invalid_argument("cut dimension mismatch");
    return cuts[k].coeffs;
}

double RelaxedModel::row_rhs(std::size_t i) const {
    if (i < base.m) return base.b[i];
    std::size_t k = i - base.m;
    if (k >= cuts.size()) throw std::invalid_argument("row index out of range");
    return cuts[k].rhs;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr std::size_t kMaxIters = 200000;

// Bounded-variable primal simplex over the system  A x + s = b  with
// lower <= x <= upper, s >= 0. Columns: structural (0..n-1), slack
// (n..n+R-1), then phase-1 artificials. W holds B^-1 applied to the full
// column block and is updated by Gauss-Jordan pivots.
struct Engine {
    std::size_t n = 0;      // structural columns
    std::size_t R = 0;      // rows
    std::size_t ncols = 0;  // structural + slack + artificial
    std::vector<std::vector<double>> W;
    std::vector<double> lo, hi;
    std::vector<ColStatus> stat;
    std::vector<int> basis;  // basic column of each row
    std::vector<double> xB;  // value of each basic column
    std::vector<double> b;   // original right-hand sides

    double nb_value(std::size_t j) const {
        switch (stat[j]) {
            case ColStatus::AtLower: return lo[j];
            case ColStatus::AtUpper: return hi[j];
            default: return 0.0;
        }
    }

    // Recompute basic values from scratch: xB = B^-1 b - sum_nonbasic W_j xbar_j.
    // The slack block of W is B^-1 itself, so B^-1 b is a combination of it.
    void refresh_basics() {
        for (std::size_t r = 0; r < R; ++r) {
            double v = 0.0;
            for (std::size_t i = 0; i < R; ++i) v += b[i] * W[r][n + i];
            xB[r] = v;
        }
        for (std::size_t j = 0; j < ncols; ++j) {
            if (stat[j] == ColStatus::Basic) continue;
            double xv = nb_value(j);
            if (xv == 0.0) continue;
            for (std::size_t r = 0; r < R; ++r) xB[r] -= W[r][j] * xv;
        }
    }

    void pivot(std::size_t r, std::size_t col, double sigma, double t, ColStatus leave_stat) {
        double vj = nb_value(col) + sigma * t;
        for (std::size_t i = 0; i < R; ++i) xB[i] -= sigma * t * W[i][col];
        int leaving = basis[r];
        stat[leaving] = leave_stat;
        double piv = W[r][col];
        std::vector<double>& row = W[r];
        for (std::size_t j = 0; j < ncols; ++j) row[j] /= piv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            double f = W[i][col];
            if (f == 0.0) continue;
            std::vector<double>& wi = W[i];
            for (std::size_t j = 0; j < ncols; ++j) wi[j] -= f * row[j];
        }
        basis[r] = static_cast<int>(col);
        stat[col] = ColStatus::Basic;
        xB[r] = vj;
    }

    // Runs simplex iterations for the given cost vector. Returns true when an
    // optimum is reached, false when the objective is unbounded below.
    bool run(const std::vector<double>& cost) {
        std::vector<double> d(ncols);
        for (std::size_t iter = 0; iter < kMaxIters; ++iter) {
            // reduced costs d = c - c_B B^-1 [A|I|Z]
            d = cost;
            for (std::size_t r = 0; r < R; ++r) {
                double cb = cost[basis[r]];
                if (cb == 0.0) continue;
                const std::vector<double>& wr = W[r];
                for (std::size_t j = 0; j < ncols; ++j) d[j] -= cb * wr[j];
            }
            // entering column: lowest eligible index (Bland)
            std::size_t col = ncols;
            double sigma = 0.0;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (stat[j] == ColStatus::Basic) continue;
                if (lo[j] >= hi[j]) continue;  // fixed column can never move
                if (stat[j] == ColStatus::AtLower && d[j] < -kOptTol) {
                    col = j; sigma = 1.0; break;
                }
                if (stat[j] == ColStatus::AtUpper && d[j] > kOptTol) {
                    col = j; sigma = -1.0; break;
                }
                if (stat[j] == ColStatus::FreeNonbasic && std::fabs(d[j]) > kOptTol) {
                    col = j; sigma = d[j] < 0.0 ? 1.0 : -1.0; break;
                }
            }
            if (col == ncols) return true;  // optimal

            // ratio test over basic variables
            double t_best = kInf;
            int r_best = -1;
            ColStatus leave_stat = ColStatus::AtLower;
            for (std::size_t r = 0; r < R; ++r) {
                double delta = sigma * W[r][col];
                double lim;
                ColStatus ls;
                if (delta > kPivotTol) {  // basic variable decreases
                    double bound = lo[basis[r]];
                    if (!std::isfinite(bound)) continue;
                    lim = (xB[r] - bound) / delta;
                    ls = ColStatus::AtLower;
                } else if (delta < -kPivotTol) {  // basic variable increases
                    double bound = hi[basis[r]];
                    if (!std::isfinite(bound)) continue;
                    lim = (bound - xB[r]) / (-delta);
                    ls = ColStatus::AtUpper;
                } else {
                    continue;
                }
                if (lim < 0.0) lim = 0.0;
                if (lim < t_best ||
                    (lim == t_best && r_best >= 0 && basis[r] < basis[r_best])) {
                    t_best = lim;
                    r_best = static_cast<int>(r);
                    leave_stat = ls;
                }
            }
            // the entering column may hit its own opposite bound first
            double span = (std::isfinite(lo[col]) && std::isfinite(hi[col]))
                              ? hi[col] - lo[col]
                              : kInf;
            if (span <= t_best) {
                if (!std::isfinite(span)) return false;  // unbounded direction
                for (std::size_t r = 0; r < R; ++r) xB[r] -= sigma * span * W[r][col];
                stat[col] = stat[col] == ColStatus::AtLower ? ColStatus::AtUpper
                                                            : ColStatus::AtLower;
                continue;
            }
            if (r_best < 0) return false;  // unbounded
            pivot(static_cast<std::size_t>(r_best), col, sigma, t_best, leave_stat);
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }
};

} // namespace

LpSolution solve_lp(const RelaxedModel& model) {
    const MilpInstance& base = model.base;
    base.validate();
    for (const Cut& cut : model.cuts)
        if (cut.coeffs.size() != base.n)
            throw std::invalid_argument("cut dimension mismatch");

    const std::size_t n = model.n();
    const std::size_t R = model.rows();

    Engine e;
    e.n = n;
    e.R = R;
    e.ncols = n + R;
    e.lo.resize(e.ncols);
    e.hi.resize(e.ncols);
    e.stat.assign(e.ncols, ColStatus::AtLower);
    e.b.resize(R);
    e.W.assign(R, std::vector<double>(e.ncols, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        e.lo[j] = base.lower[j];
        e.hi[j] = base.upper[j];
        if (std::isfinite(e.lo[j]))
            e.stat[j] = ColStatus::AtLower;
        else if (std::isfinite(e.hi[j]))
            e.stat[j] = ColStatus::AtUpper;
        else
            e.stat[j] = ColStatus::FreeNonbasic;
    }
    for (std::size_t i = 0; i < R; ++i) {
        e.lo[n + i] = 0.0;
        e.hi[n + i] = kInf;
        std::vector<double> rc = model.row_coeffs(i);
        for (std::size_t j = 0; j < n; ++j) e.W[i][j] = rc[j];
        e.W[i][n + i] = 1.0;
        e.b[i] = model.row_rhs(i);
    }

    // initial residuals with structural variables at their starting values
    std::vector<double> residual(R);
    for (std::size_t i = 0; i < R; ++i) {
        double v = e.b[i];
        for (std::size_t j = 0; j < n; ++j) {
            double xv = e.nb_value(j);
            if (xv != 0.0) v -= e.W[i][j] * xv;
        }
        residual[i] = v;
    }

    e.basis.resize(R);
    e.xB.resize(R);
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < R; ++i)
        if (residual[i] < -1e-11) art_rows.push_back(i);

    if (!art_rows.empty()) {
        std::size_t nart = art_rows.size();
        e.ncols = n + R + nart;
        e.lo.resize(e.ncols, 0.0);
        e.hi.resize(e.ncols, kInf);
        e.stat.resize(e.ncols, ColStatus::AtLower);
        for (std::size_t i = 0; i < R; ++i) e.W[i].resize(e.ncols, 0.0);
        for (std::size_t k = 0; k < nart; ++k) {
            std::size_t i = art_rows[k];
            std::size_t acol = n + R + k;
            // row equation gains "- a_i"; scale the row so the artificial
            // enters the basis with coefficient +1 and value -residual > 0
            e.W[i][acol] = -1.0;
            for (std::size_t j = 0; j < e.ncols; ++j) e.W[i][j] = -e.W[i][j];
            e.basis[i] = static_cast<int>(acol);
            e.stat[acol] = ColStatus::Basic;
            e.xB[i] = -residual[i];
        }
    }
    for (std::size_t i = 0; i < R; ++i) {
        if (!art_rows.empty() &&
            std::find(art_rows.begin(), art_rows.end(), i) != art_rows.end())
            continue;
        e.basis[i] = static_cast<int>(n + i);
        e.stat[n + i] = ColStatus::Basic;
        e.xB[i] = residual[i];
    }

    LpSolution sol;

    if (!art_rows.empty()) {
        std::vector<double> cost1(e.ncols, 0.0);
        for (std::size_t k = 0; k < art_rows.size(); ++k) cost1[n + R + k] = 1.0;
        if (!e.run(cost1))
            throw std::runtime_error("feasibility phase reported an unbounded objective");
        double infeas = 0.0;
        for (std::size_t j = n + R; j < e.ncols; ++j) {
            if (e.stat[j] == ColStatus::Basic) {
                for (std::size_t r = 0; r < R; ++r)
                    if (e.basis[r] == static_cast<int>(j)) infeas += std::fabs(e.xB[r]);
            } else {
                infeas += e.nb_value(j);
            }
        }
        if (infeas > kPhase1Tol) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // lock artificials at zero and try to pivot basic ones out
        for (std::size_t j = n + R; j < e.ncols; ++j) {
            e.lo[j] = 0.0;
            e.hi[j] = 0.0;
        }
        for (std::size_t r = 0; r < R; ++r) {
            std::size_t bc = static_cast<std::size_t>(e.basis[r]);
            if (bc < n + R) continue;
            for (std::size_t j = 0; j < n + R; ++j) {
                if (e.stat[j] == ColStatus::Basic) continue;
                if (std::fabs(e.W[r][j]) > kPivotTol) {
                    e.pivot(r, j, 1.0, 0.0, ColStatus::AtLower);
                    break;
                }
            }
        }
        e.refresh_basics();
    }

    std::vector<double> cost2(e.ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost2[j] = base.c[j];
    if (!e.run(cost2)) {
        sol.status = LpStatus::Unbounded;
        sol.objective = -kInf;
        return sol;
    }
    e.refresh_basics();

    // column -> row map for basic columns
    std::vector<int> rowof(e.ncols, -1);
    for (std::size_t r = 0; r < R; ++r) rowof[e.basis[r]] = static_cast<int>(r);

    sol.status = LpStatus::Optimal;
    sol.x.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        sol.x[j] = rowof[j] >= 0 ? e.xB[rowof[j]] : e.nb_value(j);
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += base.c[j] * sol.x[j];
    sol.basis = e.basis;
    sol.col_status.assign(e.stat.begin(), e.stat.begin() + n + R);
    sol.tableau.resize(R);
    for (std::size_t r = 0; r < R; ++r)
        sol.tableau[r].assign(e.W[r].begin(), e.W[r].begin() + n + R);
    sol.basic_values = e.xB;
    return sol;
}

std::vector<Point> vertex_enumerate(const RelaxedModel& model) {
    const MilpInstance& base = model.base;
    base.validate();
    const std::size_t n = model.n();
    if (n > 12)
        throw std::invalid_argument("vertex enumeration is limited to 12 variables");

    // inequalities a.x <= b: model rows, then finite bounds per variable
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < model.rows(); ++i) {
        A.push_back(model.row_coeffs(i));
        rhs.push_back(model.row_rhs(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isfinite(base.lower[j])) {
            std::vector<double> r(n, 0.0);
            r[j] = -1.0;
            A.push_back(r);
            rhs.push_back(-base.lower[j]);
        }
        if (std::isfinite(base.upper[j])) {
            std::vector<double> r(n, 0.0);
            r[j] = 1.0;
            A.push_back(r);
            rhs.push_back(base.upper[j]);
        }
    }
    const std::size_t K = A.size();
    std::vector<Point> out;
    if (K < n) return out;

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;

    std::vector<std::vector<double>> M(n, std::vector<double>(n));
    std::vector<double> v(n);
    Point x(n);

    auto try_subset = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            M[i] = A[idx[i]];
            v[i] = rhs[idx[i]];
        }
        // Gaussian elimination with partial pivoting
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::fabs(M[i][k]) > std::fabs(M[p][k])) p = i;
            if (std::fabs(M[p][k]) < 1e-9) return;  // singular subset
            std::swap(M[p], M[k]);
            std::swap(v[p], v[k]);
            for (std::size_t i = k + 1; i < n; ++i) {
                double f = M[i][k] / M[k][k];
                if (f == 0.0) continue;
                for (std::size_t j = k; j < n; ++j) M[i][j] -= f * M[k][j];
                v[i] -= f * v[k];
            }
        }
        for (std::size_t k = n; k-- > 0;) {
            double s = v[k];
            for (std::size_t j = k + 1; j < n; ++j) s -= M[k][j] * x[j];
            x[k] = s / M[k][k];
        }
        for (std::size_t i = 0; i < K; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * x[j];
            if (lhs > rhs[i] + 1e-7) return;  // infeasible intersection
        }
        for (const Point& q : out) {
            double diff = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                diff = std::max(diff, std::fabs(q[j] - x[j]));
            if (diff <= 1e-8) return;  // duplicate
        }
        out.push_back(x);
    };

    // lexicographic n-subsets of {0..K-1}
    while (true) {
        try_subset();
        std::size_t i = n;
        while (i-- > 0) {
            if (idx[i] != i + K - n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

std::vector<Cut> gomory_cuts(const RelaxedModel& model, const LpSolution& sol) {
    if (sol.status != LpStatus::Optimal)
        throw std::invalid_argument("cut derivation requires an optimal basis");
    const MilpInstance& base = model.base;
    const std::size_t n = model.n();
    const std::size_t R = model.rows();
    if (sol.tableau.size() != R || sol.col_status.size() != n + R)
        throw std::invalid_argument("solution shape does not match the model");

    std::vector<std::vector<double>> rows(R);
    std::vector<double> rhs(R);
    for (std::size_t i = 0; i < R; ++i) {
        rows[i] = model.row_coeffs(i);
        rhs[i] = model.row_rhs(i);
    }

    std::vector<Cut> cuts;
    for (std::size_t r = 0; r < R; ++r) {
        int bcol = sol.basis[r];
        if (bcol < 0 || bcol >= static_cast<int>(n)) continue;  // not structural
        if (!is_integer_type(base.vtype[bcol])) continue;
        double val = sol.basic_values[r];
        double f0 = val - std::floor(val);
        if (f0 <= 1e-6 || f0 >= 1.0 - 1e-6) continue;

        const std::vector<double>& Wr = sol.tableau[r];
        bool usable = true;
        for (std::size_t j = 0; j < n + R && usable; ++j)
            if (sol.col_status[j] == ColStatus::FreeNonbasic && std::fabs(Wr[j]) > 1e-9)
                usable = false;  // free nonbasic cannot be shifted to >= 0
        if (!usable) continue;

        std::vector<double> beta(n, 0.0);
        double beta0 = 0.0;
        for (std::size_t j = 0; j < n + R && usable; ++j) {
            ColStatus st = sol.col_status[j];
            if (st == ColStatus::Basic || st == ColStatus::FreeNonbasic) continue;
            if (j >= n && st == ColStatus::AtUpper) { usable = false; break; }
            bool at_lower = st == ColStatus::AtLower;
            double wbar = at_lower ? Wr[j] : -Wr[j];
            if (std::fabs(wbar) < 1e-12) continue;

            bool integer_shift = false;
            double bound = 0.0;
            if (j < n) {
                bound = at_lower ? base.lower[j] : base.upper[j];
                integer_shift = is_integer_type(base.vtype[j]) && std::isfinite(bound) &&
                                std::fabs(bound - std::round(bound)) < 1e-9;
            }
            double g;
            if (integer_shift) {
                double fj = wbar - std::floor(wbar);
                g = fj <= f0 ? fj : f0 * (1.0 - fj) / (1.0 - f0);
            } else {
                g = wbar >= 0.0 ? wbar : f0 * (-wbar) / (1.0 - f0);
            }
            if (g == 0.0) continue;

            if (j < n) {
                if (at_lower) {  // t_j = x_j - lower_j
                    beta[j] += g;
                    beta0 -= g * bound;
                } else {  // t_j = upper_j - x_j
                    beta[j] -= g;
                    beta0 += g * bound;
                }
            } else {  // slack of row i: t = b_i - A_i.x
                std::size_t i = j - n;
                for (std::size_t k = 0; k < n; ++k)
                    if (rows[i][k] != 0.0) beta[k] -= g * rows[i][k];
                beta0 += g * rhs[i];
            }
        }
        if (!usable) continue;

        // sum beta.x + beta0 >= f0  rewritten as  (-beta).x <= beta0 - f0
        Cut cut;
        cut.coeffs.resize(n);
        bool nonzero = false;
        for (std::size_t k = 0; k < n; ++k) {
            double a = -beta[k];
            if (std::fabs(a) < 1e-12) a = 0.0;
            cut.coeffs[k] = a;
            if (a != 0.0) nonzero = true;
        }
        if (!nonzero) continue;
        cut.rhs = beta0 - f0;
        double lhs = 0.0;
        for (std::size_t k = 0; k < n; ++k) lhs += cut.coeffs[k] * sol.x[k];
        if (lhs - cut.rhs <= 1e-9) continue;  // does not separate the LP point
        cut.origin = "gomory r" + std::to_string(r);
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

} // namespace cutsel
