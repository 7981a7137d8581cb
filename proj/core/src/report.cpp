#include "majam/report.hpp"

#include <charconv>
#include <ostream>

namespace majam {

std::string format_real(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_raw_csv(std::ostream& out, const SweepResult& result)
{
    out << "mode,axis_name,axis_value,realization,sum_rate,users_in_outage";
    for (int k = 1; k <= result.n_users; ++k) out << ",r_" << k;
    out << '\n';
    for (std::size_t m = 0; m < result.modes.size(); ++m) {
        for (std::size_t p = 0; p < result.axis.size(); ++p) {
            for (int r = 0; r < result.runs; ++r) {
                const auto& rep = result.report(p, m, static_cast<std::size_t>(r));
                out << to_string(result.modes[m]) << ',' << result.axis_name << ',' << format_real(result.axis[p])
                    << ',' << r << ',' << format_real(rep.sum_rate) << ',' << rep.users_in_outage();
                for (double rate : rep.rates) out << ',' << format_real(rate);
                out << '\n';
            }
        }
    }
}

void write_aggregate_csv(std::ostream& out, const SweepResult& result)
{
    out << "mode,axis_value,mean_sum_rate,se_sum_rate,p_system_indep,p_system_empirical,user_outage_frac\n";
    for (std::size_t m = 0; m < result.modes.size(); ++m) {
        for (std::size_t p = 0; p < result.axis.size(); ++p) {
            const auto& a = result.aggregate_for(p, m);
            out << to_string(a.mode) << ',' << format_real(a.axis_value) << ',' << format_real(a.mean_sum_rate) << ','
                << format_real(a.se_sum_rate) << ',' << format_real(a.p_system_indep) << ','
                << format_real(a.p_system_empirical) << ',' << format_real(a.user_outage_frac) << '\n';
        }
    }
}

} // namespace majam
