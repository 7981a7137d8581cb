#pragma once

#include <iosfwd>
#include <string>

#include "majam/simulator.hpp"

namespace majam {

// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

// One row per mode x sweep point x realization:
// mode,axis_name,axis_value,realization,sum_rate,users_in_outage,r_1..r_K
void write_raw_csv(std::ostream& out, const SweepResult& result);

// One row per mode x sweep point:
// mode,axis_value,mean_sum_rate,se_sum_rate,p_system_indep,p_system_empirical,user_outage_frac
void write_aggregate_csv(std::ostream& out, const SweepResult& result);

} // namespace majam
