#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "majam/config.hpp"
#include "majam/rng.hpp"
#include "majam/types.hpp"

namespace majam {

// Virtual angles of one side (transmit or receive) of a user's paths.
// Column j holds (vartheta, varphi, omega) = (cos t cos p, cos t sin p, sin t)
// for elevation t and azimuth p, so every column is a unit vector.
struct VirtualAngles
{
    Eigen::Matrix3Xd directions;

    int n_paths() const { return static_cast<int>(directions.cols()); }
};

Point3 virtual_direction(double elevation, double azimuth);

// Draws n_paths directions with joint density cos(t) / (2 pi) on
// [-pi/2, pi/2]^2: sin(t) ~ U[-1, 1], p ~ U[-pi/2, pi/2].
VirtualAngles sample_angles(Rng& rng, int n_paths);

// Field-response vector: entry i = exp(j 2 pi / lambda * <direction_i, p>).
ComplexVector transmit_frv(const Point3& p, const VirtualAngles& angles, double wavelength);
ComplexVector receive_frv(const Point3& u, const VirtualAngles& angles, double wavelength);

struct UserEnvironment
{
    Point2 position;
    double d_bs = 0.0;
    double d_jam = 0.0;
    ComplexVector direct_channel;  // h_BS,k, size N
    VirtualAngles tx_angles;
    VirtualAngles rx_angles;
    ComplexMatrix prm;             // Sigma_k, L_t x L_r
    Point3 user_antenna = Point3::Zero();
    ComplexVector receive_frv;     // g_k, size L_r
    ComplexVector effective_path;  // b_k = Sigma_k g_k, size L_t

    // Recomputes receive_frv and effective_path from the other fields.
    void refresh(double wavelength);
};

// Movement limits of the jammer array: |x|, |z| <= xz_half, |y| <= y_half,
// consecutive y gaps >= min_spacing.
struct ArrayBounds
{
    double xz_half = 0.01;
    double y_half = 0.04;
    double min_spacing = 0.02;

    static ArrayBounds from(const SystemConfig& config);
};

// The jammer's antenna coordinates (3 x M, column m = p_m), kept sorted by y.
class AntennaPositions
{
public:
    AntennaPositions() = default;
    explicit AntennaPositions(Eigen::Matrix3Xd coords) : coords_(std::move(coords)) {}

    int size() const { return static_cast<int>(coords_.cols()); }
    Point3 antenna(int m) const { return coords_.col(m); }
    const Eigen::Matrix3Xd& matrix() const { return coords_; }
    Eigen::Matrix3Xd& matrix() { return coords_; }

    bool operator==(const AntennaPositions& other) const { return coords_ == other.coords_; }

private:
    Eigen::Matrix3Xd coords_;
};

// Largest amount by which any box or spacing constraint is exceeded (0 when
// strictly feasible).
double max_violation(const AntennaPositions& positions, const ArrayBounds& bounds);
bool is_feasible(const AntennaPositions& positions, const ArrayBounds& bounds, double slack = 1e-9);

// h_J,k(P) = F_k(P)^H Sigma_k g_k.
ComplexVector jammer_channel(const AntennaPositions& positions, const UserEnvironment& env, double wavelength);

// Column k is h_J,k for envs[k].
ComplexMatrix jammer_channels(const AntennaPositions& positions, std::span<const UserEnvironment> envs,
                              double wavelength);

// Sum_k |h_J,k^H v_k|^2, the power the jammer steers onto its targets.
double jamming_objective(const ComplexMatrix& channels, const ComplexMatrix& beams);

struct PowerAndGradient
{
    double objective = 0.0;     // Phi(P) = -sum_k |h_J,k(P)^H v_k|^2
    Eigen::Matrix3Xd gradient;  // dPhi / dP, 3 x M
};

PowerAndGradient jamming_power_and_gradient(const AntennaPositions& positions, const ComplexMatrix& beams,
                                             std::span<const UserEnvironment> envs, double wavelength);

// One Monte-Carlo draw of all K users. Draw order is fixed and independent
// of the jammer location, so moving the jammer only rescales the PRMs.
std::vector<UserEnvironment> sample_scenario(const SystemConfig& config, Rng& rng);

} // namespace majam
