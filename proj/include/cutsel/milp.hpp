#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace cutsel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default tolerance for feasibility and integrality checks.
inline constexpr double kFeasTol = 1e-6;

// A point in variable space.
using Point = std::vector<double>;

enum class VarType { Binary, Integer, ImplicitInteger, Continuous };
enum class ConsType { Linear, LogicOr, Knapsack, SetPPC, VarBound };

const char* to_string(VarType t);
const char* to_string(ConsType t);
VarType var_type_from_string(const std::string& s);
ConsType cons_type_from_string(const std::string& s);

// integer-typed for integrality purposes (binary / integer / implicit integer)
bool is_integer_type(VarType t);

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

// A mixed-integer linear program
//     min c.x  s.t.  A x <= b,  lower <= x <= upper,  x_j integral for j in J,
// where J is the set of integer-typed variables. All rows are "<=": callers
// negate rows for ">=" and split for "=". Bounds use +-kInf for absent sides.
struct MilpInstance {
    std::string name;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> c;
    std::vector<Triplet> coeffs;
    std::vector<double> b;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<VarType> vtype;
    std::vector<ConsType> ctype;

    // throws std::invalid_argument on any structural inconsistency
    void validate() const;

    // dense coefficient vector of row i
    std::vector<double> row(std::size_t i) const;

    // all rows densified
    std::vector<std::vector<double>> dense_rows() const;
};

// A cutting plane  alpha . x <= rhs  intended to be valid for every
// integer-feasible point of some instance.
struct Cut {
    std::vector<double> coeffs;
    double rhs = 0.0;
    std::string origin; // human-readable provenance tag, e.g. "gomory r2"
};

// c.x as a floating sum in index order
double objective_value(const MilpInstance& inst, const Point& p);

// rows, bounds, and integrality of every integer-typed variable, all within tol
bool is_integer_feasible(const MilpInstance& inst, const Point& p, double tol = kFeasTol);

// true iff no listed point violates the cut by more than tol
bool cut_is_valid_for(const Cut& cut, const std::vector<Point>& points, double tol = 1e-9);

// JSON serialization. Numbers round-trip at full f64 precision; infinite
// bounds are encoded as null.
std::string instance_to_json_text(const MilpInstance& inst);
MilpInstance instance_from_json_text(const std::string& text);
void save_instance(const MilpInstance& inst, const std::string& path);
MilpInstance load_instance(const std::string& path);

} // namespace cutsel
