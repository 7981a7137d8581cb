#include "majam/simulator.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace majam {

namespace {

constexpr int kMaxResamples = 100;

// Jammer designs shared between modes of one realization.
struct DesignCache
{
    std::optional<BeamformingResult> fpa_partial;
    std::optional<BcdResult> ma_partial;
};

struct Design
{
    JammerBeamforming beams;
    AntennaPositions positions;
};

Design design_jammer(const std::vector<UserEnvironment>& envs, const BsPrecoder& precoder,
                     const SystemConfig& config, JamMode mode, DesignCache& cache)
{
    const auto fpa = fpa_layout(config);
    const bool sca = config.algorithm.partial_strategy == PartialStrategy::PaperSca;
    const auto fpa_partial = [&]() -> const BeamformingResult& {
        if (!cache.fpa_partial) {
            const auto channels = jammer_channels(fpa, envs, config.wavelength_m);
            const auto mrt = mrt_equal_power(channels, config.jammer_power_w);
            cache.fpa_partial = sca ? optimize_beamforming(envs, fpa, mrt, config)
                                    : BeamformingResult{mrt, jamming_objective(channels, mrt.v), 0};
        }
        return *cache.fpa_partial;
    };
    const auto ma_partial = [&]() -> const BcdResult& {
        if (!cache.ma_partial)
            cache.ma_partial = sca ? run_bcd(envs, config, JammingStrategy::PaperSca) : run_movable_mrt(envs, config);
        return *cache.ma_partial;
    };

    switch (mode) {
    case JamMode::None:
        return {JammerBeamforming{ComplexMatrix::Zero(config.n_jammer_antennas, config.n_users)}, fpa};
    case JamMode::FpaPartial:
        return {fpa_partial().beams, fpa};
    case JamMode::FpaFull: {
        const auto& warm = fpa_partial().beams;
        return {full_csi_beamforming(envs, precoder.w, fpa, config, &warm), fpa};
    }
    case JamMode::MaPartial: {
        const auto& bcd = ma_partial();
        return {bcd.beams, bcd.positions};
    }
    case JamMode::MaFull: {
        const auto& bcd = ma_partial();
        return {full_csi_beamforming(envs, precoder.w, bcd.positions, config, &bcd.beams), bcd.positions};
    }
    }
    throw std::invalid_argument("unknown jamming mode");
}

std::pair<std::vector<UserEnvironment>, BsPrecoder> draw_scenario(const SystemConfig& config, Rng& rng)
{
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        auto envs = sample_scenario(config, rng);
        try {
            auto precoder = bs_precoder(stack_direct_channels(envs), config.bs_power_w, config.precoder);
            return {std::move(envs), std::move(precoder)};
        } catch (const RankDeficientError&) {
        }
    }
    throw std::runtime_error("could not draw a full-rank scenario");
}

RateReport evaluate(const std::vector<UserEnvironment>& envs, const BsPrecoder& precoder, const Design& design,
                    const SystemConfig& config)
{
    const auto channels = jammer_channels(design.positions, envs, config.wavelength_m);
    auto report = evaluate_rates(stack_direct_channels(envs), precoder, channels, design.beams.v, config);
    report.jamming_objective = jamming_objective(channels, design.beams.v);
    return report;
}

} // namespace

int RateReport::users_in_outage() const
{
    int n = 0;
    for (bool o : outage) n += o ? 1 : 0;
    return n;
}

double user_rate(int k, const ComplexMatrix& direct_channels, const BsPrecoder& precoder,
                 const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, double noise)
{
    require_dims(precoder.w.rows() == direct_channels.rows(), "precoder rows vs BS antennas");
    require_dims(jammer_channels.rows() == beams.rows(), "jammer channels vs beams");
    require_dims(k >= 0 && k < direct_channels.cols() && k < jammer_channels.cols(), "user index");
    const auto h = direct_channels.col(k);
    const auto g = jammer_channels.col(k);
    double signal = 0.0;
    double interference = noise;
    for (Eigen::Index j = 0; j < precoder.w.cols(); ++j) {
        const double p = std::norm(h.dot(precoder.w.col(j)));
        if (j == k)
            signal = p;
        else
            interference += p;
    }
    for (Eigen::Index j = 0; j < beams.cols(); ++j) interference += std::norm(g.dot(beams.col(j)));
    return std::log2(1.0 + signal / interference);
}

RateReport evaluate_rates(const ComplexMatrix& direct_channels, const BsPrecoder& precoder,
                          const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, const SystemConfig& config)
{
    const auto n_users = direct_channels.cols();
    require_dims(jammer_channels.cols() == n_users, "jammer channels vs users");
    RateReport r;
    for (Eigen::Index k = 0; k < n_users; ++k) {
        const auto h = direct_channels.col(k);
        const auto g = jammer_channels.col(k);
        double signal = 0.0, intra = 0.0, jam = 0.0;
        for (Eigen::Index j = 0; j < precoder.w.cols(); ++j) {
            const double p = std::norm(h.dot(precoder.w.col(j)));
            if (j == k)
                signal = p;
            else
                intra += p;
        }
        for (Eigen::Index j = 0; j < beams.cols(); ++j) jam += std::norm(g.dot(beams.col(j)));
        const double noise = config.noise_for(static_cast<int>(k));
        const double rate = user_rate(static_cast<int>(k), direct_channels, precoder, jammer_channels, beams, noise);
        r.rates.push_back(rate);
        r.sum_rate += rate;
        r.outage.push_back(rate < config.rate_threshold_bps_hz);
        r.signal.push_back(signal);
        r.intra_cell.push_back(intra);
        r.jammer.push_back(jam);
        r.noise.push_back(noise);
    }
    return r;
}

OutageSummary system_outage(std::span<const RateReport> reports)
{
    if (reports.empty()) throw std::invalid_argument("system_outage needs at least one realization");
    const std::size_t n_users = reports.front().outage.size();
    OutageSummary s;
    s.per_user.assign(n_users, 0.0);
    std::size_t any = 0;
    for (const auto& r : reports) {
        require_dims(r.outage.size() == n_users, "user count across realizations");
        int out = 0;
        for (std::size_t k = 0; k < n_users; ++k) {
            if (r.outage[k]) {
                s.per_user[k] += 1.0;
                ++out;
            }
        }
        if (out > 0) ++any;
        if (n_users > 0) s.user_outage_fraction += static_cast<double>(out) / static_cast<double>(n_users);
    }
    const double n = static_cast<double>(reports.size());
    double no_outage = 1.0;
    for (auto& p : s.per_user) {
        p /= n;
        no_outage *= 1.0 - p;
    }
    s.p_system_indep = 1.0 - no_outage;
    s.p_system_empirical = static_cast<double>(any) / n;
    s.user_outage_fraction /= n;
    return s;
}

RealizationOutcome simulate_realization(const SystemConfig& config, Rng& rng, JamMode mode)
{
    auto [envs, precoder] = draw_scenario(config, rng);
    DesignCache cache;
    auto design = design_jammer(envs, precoder, config, mode, cache);
    auto report = evaluate(envs, precoder, design, config);
    return {std::move(envs), std::move(precoder), std::move(design.beams), std::move(design.positions),
            std::move(report)};
}

RateReport run_realization(const SystemConfig& config, Rng& rng, JamMode mode)
{
    return simulate_realization(config, rng, mode).report;
}

std::vector<RateReport> run_realization_modes(const SystemConfig& config, std::uint64_t index,
                                              std::span<const JamMode> modes)
{
    Rng rng = make_stream(config.algorithm.master_seed, index);
    const auto [envs, precoder] = draw_scenario(config, rng);
    DesignCache cache;
    std::vector<RateReport> out;
    out.reserve(modes.size());
    for (JamMode mode : modes) out.push_back(evaluate(envs, precoder, design_jammer(envs, precoder, config, mode, cache), config));
    return out;
}

} // namespace majam
