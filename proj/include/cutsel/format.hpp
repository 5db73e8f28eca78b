#pragma once

#include <string>

namespace cutsel {

// Shortest decimal form that still round-trips f64 exactly (17 significant
// digits, trailing zeros trimmed by %g). Used for every CSV/JSON number the
// tools emit.
std::string fmt17(double v);

} // namespace cutsel
