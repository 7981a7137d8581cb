#include "majam/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "majam/precoder.hpp"
#include "majam/rng.hpp"

namespace majam {

namespace {

double position_objective(const AntennaPositions& p, const ComplexMatrix& beams, std::span<const UserEnvironment> envs,
                          double wavelength)
{
    return -jamming_objective(jammer_channels(p, envs, wavelength), beams);
}

template <typename F>
ComplexMatrix complex_central_difference(const ComplexMatrix& at, double step, F&& f)
{
    ComplexMatrix grad(at.rows(), at.cols());
    for (Eigen::Index i = 0; i < at.rows(); ++i) {
        for (Eigen::Index j = 0; j < at.cols(); ++j) {
            ComplexMatrix plus = at, minus = at;
            plus(i, j) += step;
            minus(i, j) -= step;
            const double d_re = (f(plus) - f(minus)) / (2.0 * step);
            plus = at;
            minus = at;
            plus(i, j) += Complex(0.0, step);
            minus(i, j) -= Complex(0.0, step);
            const double d_im = (f(plus) - f(minus)) / (2.0 * step);
            grad(i, j) = Complex(d_re, d_im);
        }
    }
    return grad;
}

Eigen::MatrixXd stack(const ComplexMatrix& z)
{
    Eigen::MatrixXd out(z.rows(), 2 * z.cols());
    out << z.real(), z.imag();
    return out;
}

} // namespace

double relative_error(const Eigen::MatrixXd& approx, const Eigen::MatrixXd& exact)
{
    const double denom = exact.norm();
    const double diff = (approx - exact).norm();
    return denom > 0.0 ? diff / denom : diff;
}

Eigen::Matrix3Xd fd_position_gradient(const AntennaPositions& positions, const ComplexMatrix& beams,
                                      std::span<const UserEnvironment> envs, double wavelength, double step_m)
{
    Eigen::Matrix3Xd grad(3, positions.size());
    for (int m = 0; m < positions.size(); ++m) {
        for (int axis = 0; axis < 3; ++axis) {
            AntennaPositions plus = positions, minus = positions;
            plus.matrix()(axis, m) += step_m;
            minus.matrix()(axis, m) -= step_m;
            grad(axis, m) = (position_objective(plus, beams, envs, wavelength) -
                             position_objective(minus, beams, envs, wavelength)) /
                            (2.0 * step_m);
        }
    }
    return grad;
}

ComplexMatrix fd_beam_gradient(const ComplexMatrix& channels, const ComplexMatrix& beams, double step)
{
    return complex_central_difference(beams, step, [&](const ComplexMatrix& v) { return -jamming_objective(channels, v); });
}

ComplexMatrix fd_sum_rate_gradient(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                   const ComplexMatrix& channels, const ComplexMatrix& beams,
                                   const SystemConfig& config, double step)
{
    return complex_central_difference(
        beams, step, [&](const ComplexMatrix& v) { return sum_rate(envs, bs_precoder, channels, v, config); });
}

GradcheckReport run_gradcheck(const SystemConfig& config, int instances, std::uint64_t seed, double step_m)
{
    GradcheckReport report;
    const ArrayBounds bounds = ArrayBounds::from(config);
    const double lambda = config.wavelength_m;
    const double beam_step = 1e-7 * std::max(std::sqrt(config.jammer_power_w), 1e-3);

    for (int i = 0; i < instances; ++i) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(i), 7);
        const auto envs = sample_scenario(config, rng);

        // Random feasible layout: jitter x/z inside the box and y within its
        // slack around the fixed grid.
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        AntennaPositions positions = fpa_layout(config);
        const double y_slack = std::max(0.0, bounds.y_half - (config.n_jammer_antennas - 1) * lambda);
        const double y_shift = 0.5 * y_slack * unit(rng);
        for (int m = 0; m < positions.size(); ++m) {
            positions.matrix()(0, m) = bounds.xz_half * unit(rng);
            positions.matrix()(2, m) = bounds.xz_half * unit(rng);
            positions.matrix()(1, m) += y_shift;
        }

        std::normal_distribution<double> normal;
        ComplexMatrix beams(config.n_jammer_antennas, config.n_users);
        for (Eigen::Index r = 0; r < beams.rows(); ++r)
            for (Eigen::Index c = 0; c < beams.cols(); ++c) {
                const double re = normal(rng);
                const double im = normal(rng);
                beams(r, c) = Complex(re, im);
            }
        beams *= std::sqrt(config.jammer_power_w) / beams.norm();

        const auto analytic = jamming_power_and_gradient(positions, beams, envs, lambda);
        const auto numeric = fd_position_gradient(positions, beams, envs, lambda, step_m);
        report.max_rel_error_positions =
            std::max(report.max_rel_error_positions, relative_error(numeric, analytic.gradient));

        const ComplexMatrix channels = jammer_channels(positions, envs, lambda);
        const ComplexMatrix grad_v = beamforming_gradient(channels, beams);
        report.max_rel_error_beams = std::max(report.max_rel_error_beams,
                                              relative_error(stack(fd_beam_gradient(channels, beams, beam_step)), stack(grad_v)));

        const auto precoder = bs_precoder(stack_direct_channels(envs), config.bs_power_w, config.precoder);
        const ComplexMatrix grad_rate = sum_rate_gradient(envs, precoder.w, channels, beams, config);
        const ComplexMatrix fd_rate = fd_sum_rate_gradient(envs, precoder.w, channels, beams, config, beam_step);
        report.max_rel_error_sum_rate =
            std::max(report.max_rel_error_sum_rate, relative_error(stack(fd_rate), stack(grad_rate)));
        ++report.instances;
    }
    return report;
}

} // namespace majam
