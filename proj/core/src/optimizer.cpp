#include "majam/optimizer.hpp"

#include "majam/chain_lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace majam {

namespace {

constexpr double kPowerSlack = 1e-9;

void notify(const IterateObserver& observer, const JammerBeamforming& v, const AntennaPositions& p, double objective)
{
    if (observer) observer(v, p, objective);
}

void require_feasible_beams(const JammerBeamforming& v, double p_j)
{
    if (!(v.power() <= p_j + kPowerSlack)) throw std::invalid_argument("initial beamforming exceeds the power budget");
}

void require_feasible_positions(const AntennaPositions& p, const ArrayBounds& bounds)
{
    if (!is_feasible(p, bounds)) throw std::invalid_argument("antenna positions violate the array constraints");
}

// argmin g * t over t in [lo, hi]; stays put when g == 0.
double interval_step(double g, double current, double lo, double hi)
{
    if (g > 0.0) return lo;
    if (g < 0.0) return hi;
    return current;
}

} // namespace

std::string_view to_string(JammingStrategy strategy)
{
    switch (strategy) {
    case JammingStrategy::PaperSca: return "paper-sca";
    case JammingStrategy::MrtEqualPower: return "mrt-equal-power";
    case JammingStrategy::ClosedFormSingleUser: return "closed-form-single-user";
    case JammingStrategy::FullCsiGradient: return "full-csi-gradient";
    }
    return "?";
}

std::string_view to_string(Termination reason)
{
    switch (reason) {
    case Termination::Tolerance: return "tolerance";
    case Termination::T1Max: return "t1_max";
    case Termination::Stalled: return "stalled";
    }
    return "?";
}

void write_trace_csv(std::ostream& out, const OptimizerTrace& trace)
{
    const auto old_precision = out.precision(17);
    out << "outer_iter,objective,dV_fro,dP_fro,inner_v_iters,inner_p_iters\n";
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const auto& it = trace.iterations[i];
        out << i + 1 << ',' << it.objective << ',' << it.dv_fro << ',' << it.dp_fro << ',' << it.inner_v_iters << ','
            << it.inner_p_iters << '\n';
    }
    out.precision(old_precision);
}

// ---------------------------------------------------------------------------

ComplexMatrix beamforming_gradient(const ComplexMatrix& channels, const ComplexMatrix& beams)
{
    require_dims(channels.rows() == beams.rows() && channels.cols() == beams.cols(), "channels vs beams");
    ComplexMatrix grad(beams.rows(), beams.cols());
    for (Eigen::Index k = 0; k < beams.cols(); ++k) {
        const Complex s = channels.col(k).dot(beams.col(k));
        grad.col(k) = -2.0 * s * channels.col(k);
    }
    return grad;
}

JammerBeamforming solve_p1_step(const ComplexMatrix& grad_v, double p_j, const JammerBeamforming& current)
{
    if (p_j < 0.0) throw std::invalid_argument("jammer power must be >= 0");
    const double norm = grad_v.norm();
    if (!(norm > 0.0)) return current;
    return {-std::sqrt(p_j) / norm * grad_v};
}

BeamformingResult optimize_beamforming(std::span<const UserEnvironment> envs, const AntennaPositions& positions,
                                       const JammerBeamforming& v_init, const SystemConfig& config,
                                       const IterateObserver& observer)
{
    const double p_j = config.jammer_power_w;
    require_feasible_beams(v_init, p_j);
    const ComplexMatrix channels = jammer_channels(positions, envs, config.wavelength_m);
    require_dims(v_init.v.rows() == channels.rows() && v_init.v.cols() == channels.cols(), "v_init shape");

    BeamformingResult result{v_init, jamming_objective(channels, v_init.v), 0};
    notify(observer, result.beams, positions, result.objective);

    while (result.iterations < config.algorithm.t2_max) {
        const ComplexMatrix grad = beamforming_gradient(channels, result.beams.v);
        JammerBeamforming next = solve_p1_step(grad, p_j, result.beams);
        ++result.iterations;
        const double next_objective = jamming_objective(channels, next.v);
        if (next_objective < result.objective) break;
        const double delta = (next.v - result.beams.v).norm();
        result.beams = std::move(next);
        result.objective = next_objective;
        notify(observer, result.beams, positions, result.objective);
        if (delta <= config.algorithm.epsilon) break;
    }
    return result;
}

// ---------------------------------------------------------------------------

AntennaPositions solve_p2_step(const Eigen::Matrix3Xd& grad_p, const AntennaPositions& current,
                               const ArrayBounds& bounds, double trust_radius)
{
    require_dims(grad_p.cols() == current.size(), "position gradient vs antenna count");
    require_feasible_positions(current, bounds);
    if (!(grad_p.cwiseAbs().maxCoeff() > 0.0)) return current;

    const auto& p = current.matrix();
    const Eigen::Index n = current.size();
    Eigen::Matrix3Xd next = p;

    for (Eigen::Index m = 0; m < n; ++m) {
        for (int axis : {0, 2}) {
            const double c = p(axis, m);
            const double lo = std::min(c, std::max(-bounds.xz_half, c - trust_radius));
            const double hi = std::max(c, std::min(bounds.xz_half, c + trust_radius));
            next(axis, m) = interval_step(grad_p(axis, m), c, lo, hi);
        }
    }

    ChainProblem chain;
    chain.cost = grad_p.row(1).transpose();
    chain.current = p.row(1).transpose();
    chain.lower.resize(n);
    chain.upper.resize(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        chain.lower[m] = std::min(chain.current[m], std::max(-bounds.y_half, chain.current[m] - trust_radius));
        chain.upper[m] = std::max(chain.current[m], std::min(bounds.y_half, chain.current[m] + trust_radius));
    }
    chain.min_gap = bounds.min_spacing;
    next.row(1) = solve_chain_lp(chain).transpose();
    return AntennaPositions(std::move(next));
}

PositionResult optimize_positions(std::span<const UserEnvironment> envs, const JammerBeamforming& beams,
                                  const AntennaPositions& p_init, const SystemConfig& config,
                                  const IterateObserver& observer)
{
    const ArrayBounds bounds = ArrayBounds::from(config);
    require_feasible_positions(p_init, bounds);
    const double wavelength = config.wavelength_m;
    const double min_trust = wavelength / 1000.0;
    const bool faithful = config.algorithm.paper_faithful;

    PositionResult result;
    result.positions = p_init;
    result.objective = jamming_objective(jammer_channels(p_init, envs, wavelength), beams.v);
    result.final_trust_radius =
        faithful ? std::numeric_limits<double>::infinity() : config.algorithm.trust_radius_m;
    notify(observer, beams, result.positions, result.objective);

    while (result.iterations < config.algorithm.t2_max) {
        const auto local = jamming_power_and_gradient(result.positions, beams.v, envs, wavelength);
        ++result.iterations;
        if (!(local.gradient.cwiseAbs().maxCoeff() > 0.0)) break;

        AntennaPositions candidate = solve_p2_step(local.gradient, result.positions, bounds, result.final_trust_radius);
        const double candidate_objective = jamming_objective(jammer_channels(candidate, envs, wavelength), beams.v);

        if (candidate_objective >= result.objective) {
            const double delta = (candidate.matrix() - result.positions.matrix()).norm();
            result.positions = std::move(candidate);
            result.objective = candidate_objective;
            notify(observer, beams, result.positions, result.objective);
            if (delta <= config.algorithm.epsilon) break;
        } else {
            if (faithful) break;
            result.final_trust_radius /= 2.0;
            if (result.final_trust_radius < min_trust) break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

AntennaPositions fpa_layout(const SystemConfig& config)
{
    const int n = config.n_jammer_antennas;
    const double spacing = 2.0 * config.wavelength_m;
    if ((n - 1) * config.wavelength_m > config.array_half_length_m * (1.0 + 1e-12))
        throw std::invalid_argument("fixed layout does not fit in the array length");
    Eigen::Matrix3Xd p = Eigen::Matrix3Xd::Zero(3, n);
    for (int m = 0; m < n; ++m) p(1, m) = (m - 0.5 * (n - 1)) * spacing;
    return AntennaPositions(std::move(p));
}

JammerBeamforming mrt_equal_power(const ComplexMatrix& channels, double p_j)
{
    const auto k = channels.cols();
    JammerBeamforming out{ComplexMatrix::Zero(channels.rows(), k)};
    if (k == 0) return out;
    const double amplitude = std::sqrt(p_j / static_cast<double>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        const double norm = channels.col(j).norm();
        if (norm > 0.0) out.v.col(j) = amplitude / norm * channels.col(j);
    }
    return out;
}

JammerBeamforming closed_form_single_user(const ComplexMatrix& channels, double p_j)
{
    JammerBeamforming out{ComplexMatrix::Zero(channels.rows(), channels.cols())};
    if (channels.cols() == 0) return out;
    Eigen::Index best = 0;
    channels.colwise().squaredNorm().maxCoeff(&best);
    const double norm = channels.col(best).norm();
    if (norm > 0.0) out.v.col(best) = std::sqrt(p_j) / norm * channels.col(best);
    return out;
}

namespace {

using BeamBlock = std::function<BeamformingResult(const AntennaPositions&, const JammerBeamforming&)>;

// Outer loop shared by the movable-array drivers; `result` holds the start point.
void alternate_blocks(std::span<const UserEnvironment> envs, const SystemConfig& config, const BeamBlock& beam_block,
                      const IterateObserver& observer, BcdResult& result)
{
    const double eps = config.algorithm.epsilon;
    result.trace.termination = Termination::T1Max;
    for (int i = 0; i < config.algorithm.t1_max; ++i) {
        auto bf = beam_block(result.positions, result.beams);
        auto pos = optimize_positions(envs, bf.beams, result.positions, config, observer);

        OuterIteration rec;
        rec.dv_fro = (bf.beams.v - result.beams.v).norm();
        rec.dp_fro = (pos.positions.matrix() - result.positions.matrix()).norm();
        rec.objective = pos.objective;
        rec.inner_v_iters = bf.iterations;
        rec.inner_p_iters = pos.iterations;
        result.trace.iterations.push_back(rec);

        const double previous = result.objective;
        result.beams = std::move(bf.beams);
        result.positions = std::move(pos.positions);
        result.objective = pos.objective;

        // The outer loop runs while both deltas exceed eps; either one
        // dropping to eps ends it.
        if (rec.dv_fro <= eps || rec.dp_fro <= eps) {
            result.trace.termination = Termination::Tolerance;
            return;
        }
        if (result.objective <= previous) {
            result.trace.termination = Termination::Stalled;
            return;
        }
    }
}

BcdResult mrt_start(std::span<const UserEnvironment> envs, const SystemConfig& config, const IterateObserver& observer)
{
    BcdResult result;
    result.positions = fpa_layout(config);
    const ComplexMatrix channels = jammer_channels(result.positions, envs, config.wavelength_m);
    result.beams = mrt_equal_power(channels, config.jammer_power_w);
    result.objective = jamming_objective(channels, result.beams.v);
    result.trace.initial_objective = result.objective;
    notify(observer, result.beams, result.positions, result.objective);
    return result;
}

} // namespace

BcdResult run_bcd(std::span<const UserEnvironment> envs, const SystemConfig& config, JammingStrategy strategy,
                  const IterateObserver& observer)
{
    switch (strategy) {
    case JammingStrategy::MrtEqualPower:
        return mrt_start(envs, config, observer);
    case JammingStrategy::ClosedFormSingleUser: {
        BcdResult result;
        result.positions = fpa_layout(config);
        const ComplexMatrix channels = jammer_channels(result.positions, envs, config.wavelength_m);
        result.beams = closed_form_single_user(channels, config.jammer_power_w);
        result.objective = jamming_objective(channels, result.beams.v);
        result.trace.initial_objective = result.objective;
        notify(observer, result.beams, result.positions, result.objective);
        return result;
    }
    case JammingStrategy::FullCsiGradient:
        throw std::invalid_argument("full-CSI jamming needs the BS precoder; use full_csi_beamforming");
    case JammingStrategy::PaperSca:
        break;
    }

    BcdResult result = mrt_start(envs, config, observer);
    alternate_blocks(
        envs, config,
        [&](const AntennaPositions& p, const JammerBeamforming& v) {
            return optimize_beamforming(envs, p, v, config, observer);
        },
        observer, result);
    return result;
}

BcdResult run_movable_mrt(std::span<const UserEnvironment> envs, const SystemConfig& config,
                          const IterateObserver& observer)
{
    BcdResult result = mrt_start(envs, config, observer);
    alternate_blocks(
        envs, config,
        [&](const AntennaPositions& p, const JammerBeamforming&) {
            const ComplexMatrix channels = jammer_channels(p, envs, config.wavelength_m);
            BeamformingResult bf{mrt_equal_power(channels, config.jammer_power_w), 0.0, 1};
            bf.objective = jamming_objective(channels, bf.beams.v);
            notify(observer, bf.beams, p, bf.objective);
            return bf;
        },
        observer, result);
    return result;
}

} // namespace majam
