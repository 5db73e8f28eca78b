#include "cutsel/milp.hpp"
#include "cutsel/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cutsel {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

const char* to_string(VarType t) {
    switch (t) {
        case VarType::Binary: return "binary";
        case VarType::Integer: return "integer";
        case VarType::ImplicitInteger: return "implicit-integer";
        case VarType::Continuous: return "continuous";
    }
    throw std::invalid_argument("unknown variable type");
}

const char* to_string(ConsType t) {
    switch (t) {
        case ConsType::Linear: return "linear";
        case ConsType::LogicOr: return "logicor";
        case ConsType::Knapsack: return "knapsack";
        case ConsType::SetPPC: return "setppc";
        case ConsType::VarBound: return "varbound";
    }
    throw std::invalid_argument("unknown constraint type");
}

VarType var_type_from_string(const std::string& s) {
    if (s == "binary") return VarType::Binary;
    if (s == "integer") return VarType::Integer;
    if (s == "implicit-integer") return VarType::ImplicitInteger;
    if (s == "continuous") return VarType::Continuous;
    throw std::invalid_argument("unknown variable type: " + s);
}

ConsType cons_type_from_string(const std::string& s) {
    if (s == "linear") return ConsType::Linear;
    if (s == "logicor") return ConsType::LogicOr;
    if (s == "knapsack") return ConsType::Knapsack;
    if (s == "setppc") return ConsType::SetPPC;
    if (s == "varbound") return ConsType::VarBound;
    throw std::invalid_argument("unknown constraint type: " + s);
}

bool is_integer_type(VarType t) {
    return t == VarType::Binary || t == VarType::Integer || t == VarType::ImplicitInteger;
}

void MilpInstance::validate() const {
    if (n == 0) throw std::invalid_argument("instance has no variables");
    auto check_size = [&](std::size_t got, std::size_t want, const char* what) {
        if (got != want) {
            throw std::invalid_argument(std::string("size mismatch for ") + what + ": have " +
                                        std::to_string(got) + ", expected " + std::to_string(want));
        }
    };
    check_size(c.size(), n, "objective");
    check_size(lower.size(), n, "lower bounds");
    check_size(upper.size(), n, "upper bounds");
    check_size(vtype.size(), n, "variable types");
    check_size(b.size(), m, "right-hand sides");
    check_size(ctype.size(), m, "constraint types");

    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(c[j])) throw std::invalid_argument("objective coefficient is NaN");
        if (std::isnan(lower[j]) || std::isnan(upper[j]))
            throw std::invalid_argument("bound is NaN");
        if (lower[j] > upper[j])
            throw std::invalid_argument("lower bound exceeds upper bound for variable " +
                                        std::to_string(j));
        if (vtype[j] == VarType::Binary && (lower[j] < -1e-9 || upper[j] > 1.0 + 1e-9))
            throw std::invalid_argument("binary variable " + std::to_string(j) +
                                        " has bounds outside [0, 1]");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(b[i]))
            throw std::invalid_argument("right-hand side " + std::to_string(i) + " is not finite");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Triplet& t : coeffs) {
        if (t.row >= m) throw std::invalid_argument("coefficient row index out of range");
        if (t.col >= n) throw std::invalid_argument("coefficient column index out of range");
        if (!std::isfinite(t.value)) throw std::invalid_argument("coefficient is not finite");
        if (!seen.insert({t.row, t.col}).second)
            throw std::invalid_argument("duplicate coefficient entry at row " +
                                        std::to_string(t.row) + ", column " + std::to_string(t.col));
    }
}

std::vector<double> MilpInstance::row(std::size_t i) const {
    if (i >= m) throw std::invalid_argument("row index out of range");
    std::vector<double> r(n, 0.0);
    for (const Triplet& t : coeffs)
        if (t.row == i) r[t.col] = t.value;
    return r;
}

std::vector<std::vector<double>> MilpInstance::dense_rows() const {
    std::vector<std::vector<double>> rows(m, std::vector<double>(n, 0.0));
    for (const Triplet& t : coeffs) rows[t.row][t.col] = t.value;
    return rows;
}

double objective_value(const MilpInstance& inst, const Point& p) {
    if (p.size() != inst.n) throw std::invalid_argument("point dimension mismatch");
    double v = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) v += inst.c[j] * p[j];
    return v;
}

bool is_integer_feasible(const MilpInstance& inst, const Point& p, double tol) {
    if (p.size() != inst.n) throw std::invalid_argument("point dimension mismatch");
    for (std::size_t j = 0; j < inst.n; ++j) {
        if (p[j] < inst.lower[j] - tol || p[j] > inst.upper[j] + tol) return false;
        if (is_integer_type(inst.vtype[j]) &&
            std::fabs(p[j] - std::round(p[j])) > tol)
            return false;
    }
    std::vector<double> lhs(inst.m, 0.0);
    for (const Triplet& t : inst.coeffs) lhs[t.row] += t.value * p[t.col];
    for (std::size_t i = 0; i < inst.m; ++i)
        if (lhs[i] > inst.b[i] + tol) return false;
    return true;
}

bool cut_is_valid_for(const Cut& cut, const std::vector<Point>& points, double tol) {
    for (const Point& p : points) {
        if (p.size() != cut.coeffs.size())
            throw std::invalid_argument("point dimension mismatch against cut");
        double lhs = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) lhs += cut.coeffs[j] * p[j];
        if (lhs > cut.rhs + tol) return false;
    }
    return true;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

// emit a bound value, using null for an infinite side
std::string bound_to_json(double v) {
    if (std::isinf(v)) return "null";
    return fmt17(v);
}

} // namespace

std::string instance_to_json_text(const MilpInstance& inst) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"name\": \"" << json_escape(inst.name) << "\",\n";
    os << "  \"n\": " << inst.n << ",\n";
    os << "  \"m\": " << inst.m << ",\n";
    auto list = [&](const char* key, auto&& emit_one, std::size_t count) {
        os << "  \"" << key << "\": [";
        for (std::size_t i = 0; i < count; ++i) {
            if (i) os << ", ";
            emit_one(i);
        }
        os << "]";
    };
    list("c", [&](std::size_t j) { os << fmt17(inst.c[j]); }, inst.n);
    os << ",\n";
    list("A",
         [&](std::size_t k) {
             const Triplet& t = inst.coeffs[k];
             os << "[" << t.row << ", " << t.col << ", " << fmt17(t.value) << "]";
         },
         inst.coeffs.size());
    os << ",\n";
    list("b", [&](std::size_t i) { os << fmt17(inst.b[i]); }, inst.m);
    os << ",\n";
    list("lower", [&](std::size_t j) { os << bound_to_json(inst.lower[j]); }, inst.n);
    os << ",\n";
    list("upper", [&](std::size_t j) { os << bound_to_json(inst.upper[j]); }, inst.n);
    os << ",\n";
    list("vtype", [&](std::size_t j) { os << '"' << to_string(inst.vtype[j]) << '"'; }, inst.n);
    os << ",\n";
    list("ctype", [&](std::size_t i) { os << '"' << to_string(inst.ctype[i]) << '"'; }, inst.m);
    os << "\n}\n";
    return os.str();
}

MilpInstance instance_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
    }
    MilpInstance inst;
    try {
        inst.name = j.at("name").get<std::string>();
        inst.n = j.at("n").get<std::size_t>();
        inst.m = j.at("m").get<std::size_t>();
        inst.c = j.at("c").get<std::vector<double>>();
        for (const auto& entry : j.at("A")) {
            if (!entry.is_array() || entry.size() != 3)
                throw std::invalid_argument("coefficient entry is not a [row, col, value] triple");
            Triplet t;
            t.row = entry[0].get<std::size_t>();
            t.col = entry[1].get<std::size_t>();
            t.value = entry[2].get<double>();
            inst.coeffs.push_back(t);
        }
        inst.b = j.at("b").get<std::vector<double>>();
        auto parse_bounds = [&](const char* key, double inf_value) {
            std::vector<double> out;
            for (const auto& entry : j.at(key)) {
                if (entry.is_null())
                    out.push_back(inf_value);
                else
                    out.push_back(entry.get<double>());
            }
            return out;
        };
        inst.lower = parse_bounds("lower", -kInf);
        inst.upper = parse_bounds("upper", kInf);
        for (const auto& entry : j.at("vtype"))
            inst.vtype.push_back(var_type_from_string(entry.get<std::string>()));
        for (const auto& entry : j.at("ctype"))
            inst.ctype.push_back(cons_type_from_string(entry.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
    }
    inst.validate();
    return inst;
}

void save_instance(const MilpInstance& inst, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path);
    f << instance_to_json_text(inst);
    if (!f) throw std::runtime_error("write failed: " + path);
}

MilpInstance load_instance(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return instance_from_json_text(buf.str());
}

} // namespace cutsel
