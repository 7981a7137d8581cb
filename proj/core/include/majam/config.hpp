#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "majam/types.hpp"

namespace majam {

enum class PrecoderScheme { ZeroForcing, Mrt };

// Jammer configurations compared in the experiments. "partial" jammers know
// only their own channels to the users; "full" jammers also see the BS side.
enum class JamMode { None, FpaPartial, FpaFull, MaPartial, MaFull };

// Beam design used by the partial-CSI jammers. PaperSca runs the SCA
// beamforming iteration (which concentrates power on the strongest user);
// MrtEqualPower keeps one MRT beam per user and only moves the antennas.
enum class PartialStrategy { PaperSca, MrtEqualPower };

std::string_view to_string(PrecoderScheme scheme);
std::string_view to_string(JamMode mode);
std::string_view to_string(PartialStrategy strategy);
std::optional<PartialStrategy> parse_partial_strategy(std::string_view name);
std::optional<PrecoderScheme> parse_precoder(std::string_view name);
std::optional<JamMode> parse_jam_mode(std::string_view name);
const std::vector<JamMode>& all_jam_modes();

struct Geometry
{
    Point2 bs{0.0, 0.0};
    Point2 jammer{100.0, 0.0};
    Point2 user_center{50.0, 50.0};
    double user_radius_m = 40.0;

    bool operator==(const Geometry&) const = default;
};

struct AlgorithmConfig
{
    double epsilon = 1e-4;
    int t1_max = 30;
    int t2_max = 50;
    double trust_radius_m = 1e-3;
    bool paper_faithful = false;  // disables the P2 trust region
    PartialStrategy partial_strategy = PartialStrategy::PaperSca;
    int monte_carlo_runs = 100;
    std::uint64_t master_seed = 1;

    bool operator==(const AlgorithmConfig&) const = default;
};

struct SweepConfig
{
    std::vector<double> powers_w{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> jammer_x_m{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::vector<JamMode> modes = all_jam_modes();

    bool operator==(const SweepConfig&) const = default;
};

struct SystemConfig
{
    int n_bs_antennas = 4;      // N
    int n_users = 4;            // K
    int n_jammer_antennas = 4;  // M

    double wavelength_m = 0.01;
    double array_half_length_m = 0.04;  // L, y-axis half extent
    double min_spacing_m = 0.02;        // D = 2 lambda

    double bs_power_w = 10.0;
    double jammer_power_w = 1.0;
    double noise_power_w = 1e-11;
    std::vector<double> noise_per_user_w;  // optional override, size K

    double pathloss_ref_bs = 1e-3;
    double pathloss_ref_jam = 1e-4;
    double alpha_bs = 2.8;
    double alpha_jam = 2.8;

    int n_paths = 6;
    double rate_threshold_bps_hz = 1.0;

    PrecoderScheme precoder = PrecoderScheme::ZeroForcing;
    bool random_user_antenna = false;

    Geometry geometry;
    AlgorithmConfig algorithm;
    SweepConfig sweep;

    double noise_for(int user) const;
    bool operator==(const SystemConfig&) const = default;
};

// Error raised for unparsable text or violated invariants. `field()` names
// the offending key (section.key) when one is known.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Built-in defaults with the derived geometry (L = M lambda, D = 2 lambda,
// trust radius lambda / 10).
SystemConfig default_config();

// Throws ConfigError on the first violated invariant. Nothing is clamped.
void validate(const SystemConfig& config);

SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);

// Canonical text form. parse_config(to_config_text(c)) == c.
std::string to_config_text(const SystemConfig& config);

} // namespace majam
