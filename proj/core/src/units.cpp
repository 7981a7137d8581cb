#include "majam/units.hpp"

#include <cmath>

namespace majam {

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace majam
