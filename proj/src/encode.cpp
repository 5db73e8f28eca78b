#include "cutsel/encode.hpp"
#include "cutsel/format.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace cutsel {

BipartiteGraph encode(const MilpInstance& inst) {
    inst.validate();
    BipartiteGraph g;
    g.n = inst.n;
    g.m = inst.m;

    double cmax = 0.0;
    for (double v : inst.c) cmax = std::max(cmax, std::fabs(v));
    double cnorm = 0.0;
    for (double v : inst.c) cnorm += v * v;
    cnorm = std::sqrt(cnorm);
    bool zero_objective = cmax < 1e-12;
    if (zero_objective)
        std::cerr << "encode: zero objective; parallelism features set to 0\n";

    double bound_scale = 1.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
        if (std::isfinite(inst.lower[j]))
            bound_scale = std::max(bound_scale, std::fabs(inst.lower[j]));
        if (std::isfinite(inst.upper[j]))
            bound_scale = std::max(bound_scale, std::fabs(inst.upper[j]));
    }

    auto bound_feature = [&](double v, double inf_code) {
        if (!std::isfinite(v)) return inf_code;
        return std::clamp(v / bound_scale, -1.0, 1.0);
    };

    g.V.assign(inst.n, {});
    for (std::size_t j = 0; j < inst.n; ++j) {
        auto& f = g.V[j];
        f[0] = zero_objective ? 0.0 : inst.c[j] / cmax;
        f[1] = bound_feature(inst.lower[j], -2.0);
        f[2] = bound_feature(inst.upper[j], 2.0);
        f[3 + static_cast<std::size_t>(inst.vtype[j])] = 1.0;
    }

    std::vector<std::vector<double>> rows = inst.dense_rows();
    g.C.assign(inst.m, {});
    for (std::size_t i = 0; i < inst.m; ++i) {
        auto& f = g.C[i];
        double rnorm = 0.0, rinf = 0.0, dotc = 0.0;
        for (std::size_t j = 0; j < inst.n; ++j) {
            rnorm += rows[i][j] * rows[i][j];
            rinf = std::max(rinf, std::fabs(rows[i][j]));
            dotc += rows[i][j] * inst.c[j];
        }
        rnorm = std::sqrt(rnorm);
        f[0] = (!zero_objective && rnorm > 1e-12) ? std::fabs(dotc) / (rnorm * cnorm) : 0.0;
        double denom = std::max(std::fabs(inst.b[i]), rinf);
        f[1] = denom > 1e-12 ? inst.b[i] / denom : 0.0;
        f[2 + static_cast<std::size_t>(inst.ctype[i])] = 1.0;
        if (rinf > 0.0) {
            for (std::size_t j = 0; j < inst.n; ++j)
                if (rows[i][j] != 0.0)
                    g.E.push_back({i, j, rows[i][j] / rinf});
        }
    }
    // dense_rows iteration is already (row, col) sorted
    return g;
}

std::string graph_to_json_text(const BipartiteGraph& g) {
    std::ostringstream os;
    auto matrix = [&](const std::vector<std::array<double, 7>>& rows) {
        os << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) os << ", ";
            os << "[";
            for (std::size_t k = 0; k < 7; ++k) {
                if (k) os << ", ";
                os << fmt17(rows[i][k]);
            }
            os << "]";
        }
        os << "]";
    };
    os << "{\n  \"V\": ";
    matrix(g.V);
    os << ",\n  \"C\": ";
    matrix(g.C);
    os << ",\n  \"E\": [";
    for (std::size_t k = 0; k < g.E.size(); ++k) {
        if (k) os << ", ";
        os << "[" << g.E[k].cons << ", " << g.E[k].var << ", " << fmt17(g.E[k].coeff) << "]";
    }
    os << "]\n}\n";
    return os.str();
}

} // namespace cutsel
