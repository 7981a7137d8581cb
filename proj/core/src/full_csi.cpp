#include <cmath>
#include <numbers>

#include "majam/optimizer.hpp"

namespace majam {

namespace {

struct UserTerms
{
    double signal = 0.0;
    double interference = 0.0;  // intra-cell + jammer + noise
};

UserTerms user_terms(const UserEnvironment& env, Eigen::Index k, const ComplexMatrix& bs_precoder,
                     const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, double noise)
{
    UserTerms t;
    t.interference = noise;
    for (Eigen::Index j = 0; j < bs_precoder.cols(); ++j) {
        const double p = std::norm(env.direct_channel.dot(bs_precoder.col(j)));
        if (j == k)
            t.signal = p;
        else
            t.interference += p;
    }
    for (Eigen::Index j = 0; j < beams.cols(); ++j) t.interference += std::norm(jammer_channels.col(k).dot(beams.col(j)));
    return t;
}

void project_to_ball(ComplexMatrix& v, double p_j)
{
    const double norm = v.norm();
    const double radius = std::sqrt(p_j);
    if (norm > radius) v *= radius / norm;
}

} // namespace

double sum_rate(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, const SystemConfig& config)
{
    require_dims(jammer_channels.cols() == static_cast<Eigen::Index>(envs.size()), "jammer channels vs users");
    require_dims(beams.rows() == jammer_channels.rows(), "beams vs jammer channels");
    double total = 0.0;
    for (std::size_t k = 0; k < envs.size(); ++k) {
        const auto t = user_terms(envs[k], static_cast<Eigen::Index>(k), bs_precoder, jammer_channels, beams,
                                  config.noise_for(static_cast<int>(k)));
        total += std::log2(1.0 + t.signal / t.interference);
    }
    return total;
}

ComplexMatrix sum_rate_gradient(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                const ComplexMatrix& jammer_channels, const ComplexMatrix& beams,
                                const SystemConfig& config)
{
    ComplexMatrix grad = ComplexMatrix::Zero(beams.rows(), beams.cols());
    for (std::size_t k = 0; k < envs.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        const auto t = user_terms(envs[k], idx, bs_precoder, jammer_channels, beams, config.noise_for(static_cast<int>(k)));
        // dR_k / dJ_k, J_k = jammer power at user k
        const double weight = (1.0 / (t.signal + t.interference) - 1.0 / t.interference) / std::numbers::ln2;
        const auto h = jammer_channels.col(idx);
        for (Eigen::Index j = 0; j < beams.cols(); ++j) grad.col(j) += 2.0 * weight * h.dot(beams.col(j)) * h;
    }
    return grad;
}

JammerBeamforming full_csi_beamforming(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                       const AntennaPositions& positions, const SystemConfig& config,
                                       const JammerBeamforming* warm_start)
{
    const double p_j = config.jammer_power_w;
    const ComplexMatrix channels = jammer_channels(positions, envs, config.wavelength_m);
    const Eigen::Index m = channels.rows();
    const Eigen::Index k = channels.cols();
    if (!(p_j > 0.0)) return {ComplexMatrix::Zero(m, k)};

    std::vector<JammerBeamforming> starts;
    if (warm_start) starts.push_back(*warm_start);
    starts.push_back(mrt_equal_power(channels, p_j));
    starts.push_back(closed_form_single_user(channels, p_j));

    constexpr int kMaxIterations = 300;
    constexpr double kMinStep = 1e-9;
    const double radius = std::sqrt(p_j);

    JammerBeamforming best = starts.front();
    double best_rate = sum_rate(envs, bs_precoder, channels, best.v, config);

    for (auto start : starts) {
        ComplexMatrix v = start.v;
        project_to_ball(v, p_j);
        double rate = sum_rate(envs, bs_precoder, channels, v, config);
        double step = 0.25;
        for (int it = 0; it < kMaxIterations && step >= kMinStep; ++it) {
            const ComplexMatrix grad = sum_rate_gradient(envs, bs_precoder, channels, v, config);
            const double norm = grad.norm();
            if (!(norm > 0.0)) break;
            const ComplexMatrix direction = (radius / norm) * grad;
            bool improved = false;
            while (step >= kMinStep) {
                ComplexMatrix candidate = v - step * direction;
                project_to_ball(candidate, p_j);
                const double candidate_rate = sum_rate(envs, bs_precoder, channels, candidate, config);
                if (candidate_rate < rate) {
                    v = std::move(candidate);
                    rate = candidate_rate;
                    step = std::min(1.0, step * 1.5);
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (rate < best_rate) {
            best_rate = rate;
            best.v = v;
        }
    }
    return best;
}

} // namespace majam
