#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "majam/channel.hpp"
#include "majam/config.hpp"
#include "majam/types.hpp"

namespace majam {

// V = [v_1 ... v_K], M x K. Feasible when ||V||_F^2 <= P_J.
struct JammerBeamforming
{
    ComplexMatrix v;

    double power() const { return v.squaredNorm(); }
};

enum class JammingStrategy
{
    PaperSca,              // alternating SCA over V and P
    MrtEqualPower,         // v_k = sqrt(P_J / K) h_k / ||h_k||
    ClosedFormSingleUser,  // all power on argmax_k ||h_k||
    FullCsiGradient,       // projected gradient on the true sum rate
};

std::string_view to_string(JammingStrategy strategy);

enum class Termination { Tolerance, T1Max, Stalled };

std::string_view to_string(Termination reason);

struct OuterIteration
{
    double objective = 0.0;  // sum_k |h_J,k^H v_k|^2 after both blocks
    double dv_fro = 0.0;
    double dp_fro = 0.0;
    int inner_v_iters = 0;
    int inner_p_iters = 0;
};

struct OptimizerTrace
{
    double initial_objective = 0.0;
    std::vector<OuterIteration> iterations;
    Termination termination = Termination::Tolerance;
};

// Writes `outer_iter,objective,dV_fro,dP_fro,inner_v_iters,inner_p_iters`.
void write_trace_csv(std::ostream& out, const OptimizerTrace& trace);

// Called with every accepted iterate (including the starting point) and
// its exact jamming objective.
using IterateObserver = std::function<void(const JammerBeamforming&, const AntennaPositions&, double objective)>;

// ---------------------------------------------------------------------------
// Beamforming block

// Complex gradient of Psi(V) = -sum_k |h_k^H v_k|^2, column k = -2 h_k h_k^H v_k.
ComplexMatrix beamforming_gradient(const ComplexMatrix& channels, const ComplexMatrix& beams);

// Minimizer of Re<grad, V> over ||V||_F <= sqrt(p_j); returns `current`
// when the gradient vanishes.
JammerBeamforming solve_p1_step(const ComplexMatrix& grad_v, double p_j, const JammerBeamforming& current);

struct BeamformingResult
{
    JammerBeamforming beams;
    double objective = 0.0;
    int iterations = 0;
};

BeamformingResult optimize_beamforming(std::span<const UserEnvironment> envs, const AntennaPositions& positions,
                                       const JammerBeamforming& v_init, const SystemConfig& config,
                                       const IterateObserver& observer = {});

// ---------------------------------------------------------------------------
// Position block

// Exact minimizer of <grad_p, P> over the array constraints intersected with
// the per-antenna box |p_m - current_m|_inf <= trust_radius. Pass an infinite
// trust radius to drop the trust region.
AntennaPositions solve_p2_step(const Eigen::Matrix3Xd& grad_p, const AntennaPositions& current,
                               const ArrayBounds& bounds, double trust_radius);

struct PositionResult
{
    AntennaPositions positions;
    double objective = 0.0;
    int iterations = 0;
    double final_trust_radius = 0.0;
};

PositionResult optimize_positions(std::span<const UserEnvironment> envs, const JammerBeamforming& beams,
                                  const AntennaPositions& p_init, const SystemConfig& config,
                                  const IterateObserver& observer = {});

// ---------------------------------------------------------------------------
// Layouts and closed forms

// Fixed-position baseline: x = z = 0, y on a 2 lambda grid centered at 0.
AntennaPositions fpa_layout(const SystemConfig& config);

JammerBeamforming mrt_equal_power(const ComplexMatrix& channels, double p_j);
JammerBeamforming closed_form_single_user(const ComplexMatrix& channels, double p_j);

struct BcdResult
{
    JammerBeamforming beams;
    AntennaPositions positions;
    OptimizerTrace trace;
    double objective = 0.0;
};

// Algorithm driver. PaperSca alternates the two blocks from MRT at the FPA
// layout; the closed-form strategies evaluate at the FPA layout.
// FullCsiGradient needs BS-side data and is served by full_csi_beamforming.
BcdResult run_bcd(std::span<const UserEnvironment> envs, const SystemConfig& config,
                  JammingStrategy strategy = JammingStrategy::PaperSca, const IterateObserver& observer = {});

// Movable array with fixed per-user MRT beams: alternates the position block
// with re-aligning every beam (power P_J / K each) to the moved channels.
// Same stopping rules and trace as PaperSca.
BcdResult run_movable_mrt(std::span<const UserEnvironment> envs, const SystemConfig& config,
                          const IterateObserver& observer = {});

// ---------------------------------------------------------------------------
// Full-CSI reference jammer

// Sum rate (bps/Hz) seen by the users for BS precoder W (N x K) and jammer
// channels/beams.
double sum_rate(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                const ComplexMatrix& jammer_channels, const ComplexMatrix& beams, const SystemConfig& config);

// Gradient of the sum rate w.r.t. V in the same complex convention as
// beamforming_gradient (real part = d/dRe V, imaginary part = d/dIm V).
ComplexMatrix sum_rate_gradient(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                const ComplexMatrix& jammer_channels, const ComplexMatrix& beams,
                                const SystemConfig& config);

// Projected gradient descent on the sum rate over the power ball, started
// from the partial-CSI beams and MRT; returns the best iterate seen.
JammerBeamforming full_csi_beamforming(std::span<const UserEnvironment> envs, const ComplexMatrix& bs_precoder,
                                       const AntennaPositions& positions, const SystemConfig& config,
                                       const JammerBeamforming* warm_start = nullptr);

} // namespace majam
