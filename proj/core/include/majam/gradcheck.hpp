#pragma once

#include <cstdint>
#include <span>

#include "majam/channel.hpp"
#include "majam/config.hpp"
#include "majam/optimizer.hpp"

namespace majam {

// Norm-wise relative error ||approx - exact|| / ||exact|| (absolute when the
// exact value is zero).
double relative_error(const Eigen::MatrixXd& approx, const Eigen::MatrixXd& exact);

// Central differences that only ever evaluate objectives, never the analytic
// gradients they are compared against.
Eigen::Matrix3Xd fd_position_gradient(const AntennaPositions& positions, const ComplexMatrix& beams,
                                      std::span<const UserEnvironment> envs, double wavelength, double step_m);
ComplexMatrix fd_beam_gradient(const ComplexMatrix& channels, const ComplexMatrix& beams, double step);
ComplexMatrix fd_sum_rate_gradient(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                   const ComplexMatrix& channels, const ComplexMatrix& beams,
                                   const SystemConfig& config, double step);

struct GradcheckReport
{
    int instances = 0;
    double max_rel_error_positions = 0.0;  // d Phi / dP
    double max_rel_error_beams = 0.0;      // d Psi / dV
    double max_rel_error_sum_rate = 0.0;   // d sum-rate / dV (full-CSI jammer)
};

// Random scenarios, random feasible antenna positions and random beams with
// ||V||_F^2 = P_J; `step_m` is the position step, beams use 1e-7 * sqrt(P_J).
GradcheckReport run_gradcheck(const SystemConfig& config, int instances, std::uint64_t seed, double step_m = 1e-7);

} // namespace majam
