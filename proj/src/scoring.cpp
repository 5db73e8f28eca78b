#include "cutsel/scoring.hpp"

#include <cmath>
#include <stdexcept>

namespace cutsel {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

constexpr double kZeroTol = 1e-12;

} // namespace

double integer_support(const Cut& cut, const std::vector<VarType>& vtype) {
    if (cut.coeffs.size() != vtype.size())
        throw std::invalid_argument("cut dimension does not match variable types");
    std::size_t nonzero = 0, on_integer = 0;
    for (std::size_t j = 0; j < cut.coeffs.size(); ++j) {
        if (cut.coeffs[j] == 0.0) continue;
        ++nonzero;
        if (is_integer_type(vtype[j])) ++on_integer;
    }
    if (nonzero == 0) throw std::invalid_argument("all-zero cut has no integer support");
    return static_cast<double>(on_integer) / static_cast<double>(nonzero);
}

double objective_parallelism(const Cut& cut, const std::vector<double>& c) {
    double na = norm2(cut.coeffs);
    double nc = norm2(c);
    if (na < kZeroTol) throw std::invalid_argument("zero cut in objective parallelism");
    if (nc < kZeroTol) throw std::invalid_argument("zero objective in objective parallelism");
    return std::fabs(dot(cut.coeffs, c)) / (na * nc);
}

double efficacy(const Cut& cut, const Point& xlp) {
    double na = norm2(cut.coeffs);
    if (na < kZeroTol) throw std::invalid_argument("zero cut in efficacy");
    return (dot(cut.coeffs, xlp) - cut.rhs) / na;
}

double directed_cutoff(const Cut& cut, const Point& xlp, const Point& xhat) {
    if (xlp.size() != xhat.size()) throw std::invalid_argument("dimension mismatch");
    std::vector<double> y(xlp.size());
    double nd = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] = xhat[j] - xlp[j];
        nd += y[j] * y[j];
    }
    nd = std::sqrt(nd);
    if (nd < kZeroTol)
        throw std::invalid_argument("incumbent coincides with the LP optimum");
    for (double& v : y) v /= nd;
    double denom = std::fabs(dot(cut.coeffs, y));
    if (denom < kZeroTol)
        throw std::invalid_argument("cut parallel to incumbent direction");
    return (dot(cut.coeffs, xlp) - cut.rhs) / denom;
}

double parallelism(const Cut& a, const Cut& b) {
    double na = norm2(a.coeffs);
    double nb = norm2(b.coeffs);
    if (na < kZeroTol || nb < kZeroTol)
        throw std::invalid_argument("zero cut in parallelism");
    return std::fabs(dot(a.coeffs, b.coeffs)) / (na * nb);
}

double simple_score(double lambda, const Cut& cut, const std::vector<double>& c,
                    const std::vector<VarType>& vtype) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
    return lambda * integer_support(cut, vtype) +
           (1.0 - lambda) * objective_parallelism(cut, c);
}

double weighted_score(const std::array<double, 4>& w, const Cut& cut,
                      const SelectionContext& ctx, const std::vector<VarType>& vtype) {
    double dcd = ctx.incumbent ? directed_cutoff(cut, ctx.xlp, *ctx.incumbent)
                               : efficacy(cut, ctx.xlp);
    return w[0] * dcd + w[1] * efficacy(cut, ctx.xlp) +
           w[2] * integer_support(cut, vtype) +
           w[3] * objective_parallelism(cut, ctx.c);
}

ScoringWeights ScoringWeights::simple(double lambda) {
    ScoringWeights sw;
    sw.rule = Rule::Simple;
    sw.lambda = lambda;
    sw.validate();
    return sw;
}

ScoringWeights ScoringWeights::weighted(const std::array<double, 4>& w, bool normalized) {
    ScoringWeights sw;
    sw.rule = Rule::Weighted;
    sw.w = w;
    sw.normalized = normalized;
    sw.validate();
    return sw;
}

void ScoringWeights::validate() const {
    if (rule == Rule::Simple) {
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::invalid_argument("lambda must lie in [0, 1]");
        return;
    }
    if (!normalized) return;
    double sum = 0.0;
    for (double v : w) {
        if (v < -1e-9) throw std::invalid_argument("normalized weights must be nonnegative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("normalized weights must sum to one");
}

double score_cut(const ScoringWeights& sw, const Cut& cut, const SelectionContext& ctx,
                 const std::vector<VarType>& vtype) {
    if (sw.rule == ScoringWeights::Rule::Simple)
        return simple_score(sw.lambda, cut, ctx.c, vtype);
    return weighted_score(sw.w, cut, ctx, vtype);
}

} // namespace cutsel
