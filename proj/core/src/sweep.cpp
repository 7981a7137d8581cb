#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "majam/simulator.hpp"

namespace majam {

namespace {

double standard_error(double sum, double sum_sq, std::size_t n)
{
    if (n < 2) return 0.0;
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
}

// Runs every (point, realization) task; each task evaluates all modes on one
// scenario. Results land in fixed slots, so the output does not depend on the
// number of workers or their scheduling.
SweepResult run_sweep(std::string axis_name, std::span<const double> axis, std::span<const JamMode> modes,
                      const SystemConfig& base, const SweepOptions& options,
                      const std::function<SystemConfig(double)>& config_at)
{
    if (modes.empty()) throw std::invalid_argument("sweep needs at least one mode");

    SweepResult result;
    result.axis_name = std::move(axis_name);
    result.axis.assign(axis.begin(), axis.end());
    result.modes.assign(modes.begin(), modes.end());
    result.runs = base.algorithm.monte_carlo_runs;
    result.n_users = base.n_users;

    const std::size_t n_points = axis.size();
    const std::size_t n_modes = modes.size();
    const auto runs = static_cast<std::size_t>(result.runs);
    result.reports.resize(n_points * n_modes * runs);

    std::vector<SystemConfig> configs;
    configs.reserve(n_points);
    for (double value : axis) {
        configs.push_back(config_at(value));
        validate(configs.back());
    }

    const std::size_t total = n_points * runs;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::mutex progress_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            {
                std::lock_guard lock(error_mutex);
                if (error) return;
            }
            const std::size_t point = task / runs;
            const std::size_t r = task % runs;
            try {
                auto reports = run_realization_modes(configs[point], r, modes);
                for (std::size_t m = 0; m < n_modes; ++m)
                    result.reports[(point * n_modes + m) * runs + r] = std::move(reports[m]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(finished, total);
            }
        }
    };

    int jobs = options.jobs > 0 ? options.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t p = 0; p < n_points; ++p)
        for (std::size_t m = 0; m < n_modes; ++m)
            result.aggregates.push_back(aggregate(result.reports_for(p, m), result.modes[m], result.axis[p]));
    return result;
}

} // namespace

Aggregate aggregate(std::span<const RateReport> reports, JamMode mode, double axis_value)
{
    Aggregate a;
    a.mode = mode;
    a.axis_value = axis_value;
    if (reports.empty()) return a;

    double sum = 0.0, sum_sq = 0.0, frac = 0.0, frac_sq = 0.0, any = 0.0, objective = 0.0;
    for (const auto& r : reports) {
        sum += r.sum_rate;
        sum_sq += r.sum_rate * r.sum_rate;
        const double f = r.outage.empty() ? 0.0 : static_cast<double>(r.users_in_outage()) / r.outage.size();
        frac += f;
        frac_sq += f * f;
        any += r.users_in_outage() > 0 ? 1.0 : 0.0;
        objective += r.jamming_objective;
    }
    const auto n = reports.size();
    const auto outage = system_outage(reports);
    a.mean_sum_rate = sum / static_cast<double>(n);
    a.se_sum_rate = standard_error(sum, sum_sq, n);
    a.p_system_indep = outage.p_system_indep;
    a.p_system_empirical = outage.p_system_empirical;
    a.user_outage_frac = outage.user_outage_fraction;
    a.se_user_outage_frac = standard_error(frac, frac_sq, n);
    a.se_p_system_empirical = standard_error(any, any, n);
    a.per_user_outage = outage.per_user;
    a.mean_jamming_objective = objective / static_cast<double>(n);
    return a;
}

const RateReport& SweepResult::report(std::size_t point, std::size_t mode, std::size_t realization) const
{
    return reports.at((point * modes.size() + mode) * static_cast<std::size_t>(runs) + realization);
}

std::span<const RateReport> SweepResult::reports_for(std::size_t point, std::size_t mode) const
{
    const auto runs_sz = static_cast<std::size_t>(runs);
    const auto offset = (point * modes.size() + mode) * runs_sz;
    if (offset + runs_sz > reports.size()) throw std::out_of_range("sweep report index");
    return std::span<const RateReport>(reports).subspan(offset, runs_sz);
}

const Aggregate& SweepResult::aggregate_for(std::size_t point, std::size_t mode) const
{
    return aggregates.at(point * modes.size() + mode);
}

std::size_t SweepResult::mode_index(JamMode mode) const
{
    const auto it = std::find(modes.begin(), modes.end(), mode);
    if (it == modes.end()) throw std::out_of_range("mode not part of this sweep: " + std::string(to_string(mode)));
    return static_cast<std::size_t>(it - modes.begin());
}

SweepResult sweep_power(const SystemConfig& config, std::span<const double> powers_w, std::span<const JamMode> modes,
                        const SweepOptions& options)
{
    for (double p : powers_w)
        if (!(p >= 0.0)) throw std::invalid_argument("jammer powers must be >= 0");
    return run_sweep("jammer_power_w", powers_w, modes, config, options, [&](double p) {
        SystemConfig c = config;
        c.jammer_power_w = p;
        return c;
    });
}

SweepResult sweep_jammer_location(const SystemConfig& config, std::span<const double> x_coords_m,
                                  std::span<const JamMode> modes, const SweepOptions& options)
{
    return run_sweep("jammer_x_m", x_coords_m, modes, config, options, [&](double x) {
        SystemConfig c = config;
        c.geometry.jammer = Point2(x, 0.0);
        return c;
    });
}

} // namespace majam
