#pragma once

namespace majam {

// Everything past the config boundary is linear (watts, ratios, meters).

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_w);
double db_to_linear(double x_db);
double linear_to_db(double x);

} // namespace majam
