#include "majam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace majam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexVector field_response(const Point3& p, const VirtualAngles& angles, double wavelength)
{
    const double k = kTwoPi / wavelength;
    const Eigen::VectorXd phase = k * (angles.directions.transpose() * p);
    ComplexVector out(phase.size());
    for (Eigen::Index i = 0; i < phase.size(); ++i) out[i] = std::polar(1.0, phase[i]);
    return out;
}

Complex standard_complex_normal(Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

Point3 virtual_direction(double elevation, double azimuth)
{
    return {std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth), std::sin(elevation)};
}

VirtualAngles sample_angles(Rng& rng, int n_paths)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> azimuth(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    VirtualAngles out{Eigen::Matrix3Xd(3, n_paths)};
    for (int j = 0; j < n_paths; ++j) {
        const double elevation = std::asin(unit(rng));
        out.directions.col(j) = virtual_direction(elevation, azimuth(rng));
    }
    return out;
}

ComplexVector transmit_frv(const Point3& p, const VirtualAngles& angles, double wavelength)
{
    return field_response(p, angles, wavelength);
}

ComplexVector receive_frv(const Point3& u, const VirtualAngles& angles, double wavelength)
{
    return field_response(u, angles, wavelength);
}

void UserEnvironment::refresh(double wavelength)
{
    require_dims(prm.cols() == rx_angles.n_paths(), "PRM columns vs receive paths");
    require_dims(prm.rows() == tx_angles.n_paths(), "PRM rows vs transmit paths");
    receive_frv = majam::receive_frv(user_antenna, rx_angles, wavelength);
    effective_path = prm * receive_frv;
}

ArrayBounds ArrayBounds::from(const SystemConfig& config)
{
    return {config.wavelength_m, config.array_half_length_m, config.min_spacing_m};
}

double max_violation(const AntennaPositions& positions, const ArrayBounds& bounds)
{
    const auto& p = positions.matrix();
    double worst = 0.0;
    for (int m = 0; m < positions.size(); ++m) {
        worst = std::max(worst, std::abs(p(0, m)) - bounds.xz_half);
        worst = std::max(worst, std::abs(p(1, m)) - bounds.y_half);
        worst = std::max(worst, std::abs(p(2, m)) - bounds.xz_half);
        if (m > 0) worst = std::max(worst, bounds.min_spacing - (p(1, m) - p(1, m - 1)));
    }
    return worst;
}

bool is_feasible(const AntennaPositions& positions, const ArrayBounds& bounds, double slack)
{
    return positions.matrix().allFinite() && max_violation(positions, bounds) <= slack;
}

ComplexVector jammer_channel(const AntennaPositions& positions, const UserEnvironment& env, double wavelength)
{
    require_dims(env.effective_path.size() == env.tx_angles.n_paths(), "effective path vector vs transmit paths");
    ComplexVector h(positions.size());
    for (int m = 0; m < positions.size(); ++m) {
        // f^H b
        h[m] = transmit_frv(positions.antenna(m), env.tx_angles, wavelength).dot(env.effective_path);
    }
    return h;
}

ComplexMatrix jammer_channels(const AntennaPositions& positions, std::span<const UserEnvironment> envs,
                              double wavelength)
{
    ComplexMatrix out(positions.size(), static_cast<Eigen::Index>(envs.size()));
    for (std::size_t k = 0; k < envs.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = jammer_channel(positions, envs[k], wavelength);
    return out;
}

double jamming_objective(const ComplexMatrix& channels, const ComplexMatrix& beams)
{
    require_dims(channels.rows() == beams.rows() && channels.cols() == beams.cols(), "channels vs beams");
    double total = 0.0;
    for (Eigen::Index k = 0; k < beams.cols(); ++k) total += std::norm(channels.col(k).dot(beams.col(k)));
    return total;
}

PowerAndGradient jamming_power_and_gradient(const AntennaPositions& positions, const ComplexMatrix& beams,
                                             std::span<const UserEnvironment> envs, double wavelength)
{
    const int n_antennas = positions.size();
    require_dims(beams.rows() == n_antennas, "beam length vs antenna count");
    require_dims(beams.cols() == static_cast<Eigen::Index>(envs.size()), "beam count vs users");

    const double wavenumber = kTwoPi / wavelength;
    PowerAndGradient out{0.0, Eigen::Matrix3Xd::Zero(3, n_antennas)};

    for (std::size_t k = 0; k < envs.size(); ++k) {
        const auto& env = envs[k];
        const auto& dirs = env.tx_angles.directions;
        require_dims(env.effective_path.size() == dirs.cols(), "effective path vector vs transmit paths");
        const auto v = beams.col(static_cast<Eigen::Index>(k));

        // conj(h_m) = sum_j e^{j k <d_j, p_m>} conj(b_j); keep each antenna's
        // phase-weighted terms for the derivative.
        ComplexVector conj_h(n_antennas);
        Eigen::Matrix3Xcd d_conj_h(3, n_antennas);
        for (int m = 0; m < n_antennas; ++m) {
            const ComplexVector terms =
                transmit_frv(positions.antenna(m), env.tx_angles, wavelength).cwiseProduct(env.effective_path.conjugate());
            conj_h[m] = terms.sum();
            d_conj_h.col(m) = Complex(0.0, wavenumber) * (dirs.cast<Complex>() * terms);
        }
        const Complex s = conj_h.cwiseProduct(v).sum();  // h^H v
        out.objective -= std::norm(s);
        for (int m = 0; m < n_antennas; ++m) {
            // d|s|^2 / dp_m = 2 Re(conj(s) v_m d conj(h_m) / dp_m)
            out.gradient.col(m) -= 2.0 * (std::conj(s) * v[m] * d_conj_h.col(m)).real();
        }
    }
    return out;
}

std::vector<UserEnvironment> sample_scenario(const SystemConfig& config, Rng& rng)
{
    const auto& geo = config.geometry;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> offset(-config.wavelength_m, config.wavelength_m);

    std::vector<UserEnvironment> envs(static_cast<std::size_t>(config.n_users));
    for (auto& env : envs) {
        const double radius = geo.user_radius_m * std::sqrt(unit(rng));
        const double bearing = kTwoPi * unit(rng);
        env.position = geo.user_center + radius * Point2(std::cos(bearing), std::sin(bearing));
        env.d_bs = (env.position - geo.bs).norm();
        env.d_jam = (env.position - geo.jammer).norm();

        const double bs_gain = std::sqrt(config.pathloss_ref_bs * std::pow(env.d_bs, -config.alpha_bs));
        env.direct_channel.resize(config.n_bs_antennas);
        for (auto& h : env.direct_channel) h = bs_gain * standard_complex_normal(rng);

        env.tx_angles = sample_angles(rng, config.n_paths);
        env.rx_angles = sample_angles(rng, config.n_paths);

        const double c2 = config.pathloss_ref_jam * std::pow(env.d_jam, -config.alpha_jam);
        const double path_std = std::sqrt(c2 / config.n_paths);
        env.prm = ComplexMatrix::Zero(config.n_paths, config.n_paths);
        for (int i = 0; i < config.n_paths; ++i) env.prm(i, i) = path_std * standard_complex_normal(rng);

        env.user_antenna = Point3::Zero();
        if (config.random_user_antenna) {
            for (int i = 0; i < 3; ++i) env.user_antenna[i] = offset(rng);
        }
        env.refresh(config.wavelength_m);
    }
    return envs;
}

} // namespace majam
