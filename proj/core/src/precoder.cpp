#include "majam/precoder.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace majam {

ComplexMatrix stack_direct_channels(std::span<const UserEnvironment> envs)
{
    if (envs.empty()) return {};
    ComplexMatrix h(envs.front().direct_channel.size(), static_cast<Eigen::Index>(envs.size()));
    for (std::size_t k = 0; k < envs.size(); ++k) {
        require_dims(envs[k].direct_channel.size() == h.rows(), "direct channel length");
        h.col(static_cast<Eigen::Index>(k)) = envs[k].direct_channel;
    }
    return h;
}

BsPrecoder bs_precoder(const ComplexMatrix& direct_channels, double bs_power_w, PrecoderScheme scheme)
{
    const auto n = direct_channels.rows();
    const auto k = direct_channels.cols();
    require_dims(k <= n, "more users than BS antennas");

    BsPrecoder out;
    out.scheme = scheme;
    out.power.assign(static_cast<std::size_t>(k), k > 0 ? bs_power_w / static_cast<double>(k) : 0.0);
    if (k == 0) {
        out.w = ComplexMatrix(n, 0);
        return out;
    }

    ComplexMatrix directions;
    if (scheme == PrecoderScheme::ZeroForcing) {
        // H (H^H H)^{-1} = U S^{-1} V^H for the thin SVD H = U S V^H
        Eigen::JacobiSVD<ComplexMatrix> svd(direct_channels, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        if (!(sv(k - 1) > 1e-10 * sv(0))) throw RankDeficientError("direct channels are rank deficient");
        directions = svd.matrixU() * sv.cwiseInverse().asDiagonal() * svd.matrixV().adjoint();
    } else {
        directions = direct_channels;
    }

    out.w.resize(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double norm = directions.col(j).norm();
        if (!(norm > 0.0)) throw RankDeficientError("zero direct channel");
        out.w.col(j) = std::sqrt(out.power[static_cast<std::size_t>(j)]) / norm * directions.col(j);
    }
    return out;
}

} // namespace majam
