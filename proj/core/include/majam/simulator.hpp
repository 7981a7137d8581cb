#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "majam/channel.hpp"
#include "majam/config.hpp"
#include "majam/optimizer.hpp"
#include "majam/precoder.hpp"
#include "majam/rng.hpp"

namespace majam {

struct RateReport
{
    std::vector<double> rates;  // bps/Hz per user
    double sum_rate = 0.0;
    std::vector<bool> outage;   // rates[k] < R_th

    // Received power decomposition per user.
    std::vector<double> signal;
    std::vector<double> intra_cell;
    std::vector<double> jammer;
    std::vector<double> noise;

    // sum_k |h_J,k^H v_k|^2 of the jammer design that produced this report.
    double jamming_objective = 0.0;

    int users_in_outage() const;
};

// log2(1 + |h_k^H w_k|^2 / (sum_{j!=k} |h_k^H w_j|^2 + sum_j |g_k^H v_j|^2 + noise)),
// with h_k = direct.col(k) and g_k = jammer_channels.col(k).
double user_rate(int k, const ComplexMatrix& direct_channels, const BsPrecoder& precoder,
                 const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, double noise);

RateReport evaluate_rates(const ComplexMatrix& direct_channels, const BsPrecoder& precoder,
                          const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, const SystemConfig& config);

struct OutageSummary
{
    std::vector<double> per_user;       // empirical P(R_k < R_th)
    double p_system_indep = 0.0;        // 1 - prod_k (1 - P_out,k)
    double p_system_empirical = 0.0;    // frequency of "any user in outage"
    double user_outage_fraction = 0.0;  // mean over realizations of (#out)/K
};

OutageSummary system_outage(std::span<const RateReport> reports);

// Everything a realization produced, for callers that need more than rates.
struct RealizationOutcome
{
    std::vector<UserEnvironment> envs;
    BsPrecoder precoder;
    JammerBeamforming beams;
    AntennaPositions positions;
    RateReport report;
};

// Samples a scenario (resampling on a rank-deficient ZF draw), builds the BS
// precoder, designs the jammer for `mode` and evaluates all rates.
RealizationOutcome simulate_realization(const SystemConfig& config, Rng& rng, JamMode mode);
RateReport run_realization(const SystemConfig& config, Rng& rng, JamMode mode);

// Same scenario for every mode (common random numbers): realization `index`
// always draws from make_stream(master_seed, index).
std::vector<RateReport> run_realization_modes(const SystemConfig& config, std::uint64_t index,
                                              std::span<const JamMode> modes);

struct Aggregate
{
    JamMode mode = JamMode::None;
    double axis_value = 0.0;
    double mean_sum_rate = 0.0;
    double se_sum_rate = 0.0;
    double p_system_indep = 0.0;
    double p_system_empirical = 0.0;
    double user_outage_frac = 0.0;
    double se_user_outage_frac = 0.0;
    double se_p_system_empirical = 0.0;
    std::vector<double> per_user_outage;
    double mean_jamming_objective = 0.0;
};

Aggregate aggregate(std::span<const RateReport> reports, JamMode mode, double axis_value);

struct SweepResult
{
    std::string axis_name;  // "jammer_power_w" or "jammer_x_m"
    std::vector<double> axis;
    std::vector<JamMode> modes;
    int runs = 0;
    int n_users = 0;
    std::vector<RateReport> reports;  // [point][mode][realization], flattened
    std::vector<Aggregate> aggregates;  // [point][mode], flattened

    const RateReport& report(std::size_t point, std::size_t mode, std::size_t realization) const;
    std::span<const RateReport> reports_for(std::size_t point, std::size_t mode) const;
    const Aggregate& aggregate_for(std::size_t point, std::size_t mode) const;
    // Index of `mode` in `modes`; throws when absent.
    std::size_t mode_index(JamMode mode) const;
};

struct SweepOptions
{
    int jobs = 0;  // 0 = hardware concurrency
    std::function<void(std::size_t done, std::size_t total)> progress;
};

SweepResult sweep_power(const SystemConfig& config, std::span<const double> powers_w, std::span<const JamMode> modes,
                        const SweepOptions& options = {});
SweepResult sweep_jammer_location(const SystemConfig& config, std::span<const double> x_coords_m,
                                  std::span<const JamMode> modes, const SweepOptions& options = {});

} // namespace majam
