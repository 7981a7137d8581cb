#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "majam/optimizer.hpp"
#include "test_support.hpp"

using namespace majam;
using majam::test::cd;

namespace {

std::vector<UserEnvironment> scenario(const SystemConfig& cfg, std::uint64_t seed)
{
    Rng rng = make_stream(seed, 0);
    return sample_scenario(cfg, rng);
}

SystemConfig config_with(int users, int antennas)
{
    auto c = default_config();
    c.n_users = users;
    c.n_bs_antennas = users;
    c.n_jammer_antennas = antennas;
    c.array_half_length_m = antennas * c.wavelength_m;
    return c;
}

// Records every accepted iterate for feasibility / monotonicity checks.
struct Recorder
{
    std::vector<double> objectives;
    double worst_violation = 0.0;
    double max_power = 0.0;
    ArrayBounds bounds;

    IterateObserver observer()
    {
        return [this](const JammerBeamforming& v, const AntennaPositions& p, double objective) {
            objectives.push_back(objective);
            worst_violation = std::max(worst_violation, max_violation(p, bounds));
            max_power = std::max(max_power, v.power());
        };
    }
};

} // namespace

TEST(P1Step, ZeroGradientKeepsCurrent)
{
    JammerBeamforming current{ComplexMatrix::Constant(3, 2, cd(0.1, 0.2))};
    const auto out = solve_p1_step(ComplexMatrix::Zero(3, 2), 1.0, current);
    EXPECT_EQ(out.v, current.v);
}

TEST(P1Step, SingleUserStepIsMrt)
{
    std::mt19937_64 rng(1);
    const ComplexMatrix h = test::random_complex(4, 1, rng);
    const ComplexMatrix v = h * cd(0.3, -0.1);
    const auto out = solve_p1_step(beamforming_gradient(h, v), 2.0, {v});
    const ComplexMatrix expected = std::sqrt(2.0) * h / h.norm();
    // equal up to a common phase
    const cd phase = expected.col(0).dot(out.v.col(0)) / std::abs(expected.col(0).dot(out.v.col(0)));
    EXPECT_LT((out.v - phase * expected).norm(), 1e-12);
}

TEST(P1Step, LandsOnTheBoundaryAndMinimizesTheLinearObjective)
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix g = test::random_complex(4, 3, rng);
        const auto out = solve_p1_step(g, 1.5, {ComplexMatrix::Zero(4, 3)});
        EXPECT_NEAR(out.v.norm(), std::sqrt(1.5), 1e-12);
        const double best = (g.adjoint() * out.v).trace().real();
        for (int s = 0; s < 20; ++s) {
            const auto other = test::random_beams(4, 3, 1.5, rng);
            EXPECT_LE(best, (g.adjoint() * other).trace().real() + 1e-12);
        }
    }
}

TEST(P1Step, RejectsNegativePower)
{
    EXPECT_THROW(solve_p1_step(ComplexMatrix::Ones(2, 1), -1.0, {ComplexMatrix::Zero(2, 1)}), std::invalid_argument);
}

TEST(Beamforming, SingleUserConvergesInOneStep)
{
    auto cfg = config_with(1, 4);
    const auto envs = scenario(cfg, 3);
    const auto p = fpa_layout(cfg);
    const auto h = jammer_channels(p, envs, cfg.wavelength_m);
    std::mt19937_64 rng(3);
    const auto r = optimize_beamforming(envs, p, {test::random_beams(4, 1, 0.5, rng)}, cfg);
    EXPECT_NEAR(r.objective, cfg.jammer_power_w * h.squaredNorm(), 1e-12 * cfg.jammer_power_w * h.squaredNorm());
}

TEST(Beamforming, ZeroPowerGivesZeroBeams)
{
    auto cfg = default_config();
    cfg.jammer_power_w = 0.0;
    const auto envs = scenario(cfg, 4);
    const auto r = optimize_beamforming(envs, fpa_layout(cfg), {ComplexMatrix::Zero(4, 4)}, cfg);
    EXPECT_EQ(r.beams.v.norm(), 0.0);
    EXPECT_EQ(r.objective, 0.0);
}

TEST(Beamforming, ConcentratesOnTheStrongestUser)
{
    auto cfg = default_config();
    cfg.algorithm.epsilon = 1e-9;
    cfg.algorithm.t2_max = 5000;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto envs = scenario(cfg, 100 + seed);
        const auto p = fpa_layout(cfg);
        const auto h = jammer_channels(p, envs, cfg.wavelength_m);
        Recorder rec;
        const auto r = optimize_beamforming(envs, p, mrt_equal_power(h, cfg.jammer_power_w), cfg, rec.observer());
        const double oracle = cfg.jammer_power_w * h.colwise().squaredNorm().maxCoeff();
        EXPECT_NEAR(r.objective, oracle, 1e-6 * oracle) << "seed " << seed;
        for (std::size_t i = 1; i < rec.objectives.size(); ++i) EXPECT_GE(rec.objectives[i], rec.objectives[i - 1]);
        EXPECT_LE(rec.max_power, cfg.jammer_power_w + 1e-9);
    }
}

TEST(Beamforming, RejectsInfeasibleStart)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg, 5);
    EXPECT_THROW(optimize_beamforming(envs, fpa_layout(cfg), {ComplexMatrix::Ones(4, 4)}, cfg), std::invalid_argument);
}

TEST(P2Step, ZeroGradientKeepsCurrent)
{
    const auto cfg = default_config();
    const auto p = fpa_layout(cfg);
    EXPECT_EQ(solve_p2_step(Eigen::Matrix3Xd::Zero(3, 4), p, ArrayBounds::from(cfg), 1e-3), p);
}

TEST(P2Step, XStepMovesAgainstTheGradientWithinTrustRegion)
{
    const auto cfg = default_config();
    const auto p = fpa_layout(cfg);
    Eigen::Matrix3Xd g = Eigen::Matrix3Xd::Zero(3, 4);
    g(0, 1) = 0.7;
    g(2, 2) = -0.2;
    const auto next = solve_p2_step(g, p, ArrayBounds::from(cfg), cfg.wavelength_m / 10.0);
    EXPECT_DOUBLE_EQ(next.matrix()(0, 1), -cfg.wavelength_m / 10.0);
    EXPECT_DOUBLE_EQ(next.matrix()(2, 2), cfg.wavelength_m / 10.0);
    EXPECT_EQ(next.matrix().row(1), p.matrix().row(1));
}

TEST(P2Step, ChainExampleWithoutTrustRegion)
{
    auto cfg = config_with(1, 2);
    const double lam = cfg.wavelength_m;
    cfg.array_half_length_m = 4 * lam;
    Eigen::Matrix3Xd p = Eigen::Matrix3Xd::Zero(3, 2);
    p(1, 0) = -lam;
    p(1, 1) = lam;
    Eigen::Matrix3Xd g = Eigen::Matrix3Xd::Zero(3, 2);
    g(1, 0) = g(1, 1) = -1.0;
    const auto next = solve_p2_step(g, AntennaPositions(p), ArrayBounds::from(cfg),
                                    std::numeric_limits<double>::infinity());
    EXPECT_NEAR(next.matrix()(1, 0), 2 * lam, 1e-15);
    EXPECT_NEAR(next.matrix()(1, 1), 4 * lam, 1e-15);
}

TEST(P2Step, RejectsInfeasibleStart)
{
    const auto cfg = default_config();
    auto p = fpa_layout(cfg);
    p.matrix()(1, 1) = p.matrix()(1, 0) + 0.001;
    EXPECT_THROW(solve_p2_step(Eigen::Matrix3Xd::Ones(3, 4), p, ArrayBounds::from(cfg), 1e-3), std::invalid_argument);
}

TEST(Positions, ZeroBeamsReturnStartAfterOneIteration)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg, 6);
    const auto p = fpa_layout(cfg);
    const auto r = optimize_positions(envs, {ComplexMatrix::Zero(4, 4)}, p, cfg);
    EXPECT_EQ(r.positions, p);
    EXPECT_EQ(r.iterations, 1);
}

TEST(Positions, AcceptedIteratesAreFeasibleAndMonotone)
{
    const auto cfg = default_config();
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto envs = scenario(cfg, 200 + seed);
        Recorder rec;
        rec.bounds = ArrayBounds::from(cfg);
        const auto start = test::random_positions(cfg, rng);
        const auto r = optimize_positions(envs, {test::random_beams(4, 4, 1.0, rng)}, start, cfg, rec.observer());
        EXPECT_LE(rec.worst_violation, 1e-9);
        for (std::size_t i = 1; i < rec.objectives.size(); ++i) EXPECT_GE(rec.objectives[i], rec.objectives[i - 1]);
        EXPECT_GE(r.objective, rec.objectives.front());
        EXPECT_LE(r.iterations, cfg.algorithm.t2_max);
    }
}

TEST(Positions, PaperFaithfulDropsTheTrustRegion)
{
    auto cfg = default_config();
    cfg.algorithm.paper_faithful = true;
    const auto envs = scenario(cfg, 8);
    const auto p = fpa_layout(cfg);
    const auto beams = mrt_equal_power(jammer_channels(p, envs, cfg.wavelength_m), 1.0);
    const auto r = optimize_positions(envs, beams, p, cfg);
    EXPECT_TRUE(std::isinf(r.final_trust_radius));
    EXPECT_TRUE(is_feasible(r.positions, ArrayBounds::from(cfg)));
    EXPECT_GE(r.objective, jamming_objective(jammer_channels(p, envs, cfg.wavelength_m), beams.v));
}

TEST(Layouts, FixedLayout)
{
    const auto p = fpa_layout(default_config());
    const Eigen::RowVector4d y(-0.03, -0.01, 0.01, 0.03);
    EXPECT_LT((p.matrix().row(1) - y).norm(), 1e-17);
    EXPECT_EQ(p.matrix().row(0).norm(), 0.0);
    EXPECT_EQ(p.matrix().row(2).norm(), 0.0);

    const auto one = fpa_layout(config_with(1, 1));
    EXPECT_EQ(one.matrix(), Eigen::Matrix3Xd::Zero(3, 1));

    auto tight = default_config();
    tight.array_half_length_m = 0.02;
    EXPECT_THROW(fpa_layout(tight), std::invalid_argument);
}

TEST(Layouts, ClosedForms)
{
    std::mt19937_64 rng(9);
    const ComplexMatrix h = test::random_complex(4, 3, rng);
    const auto mrt = mrt_equal_power(h, 3.0);
    EXPECT_NEAR(mrt.power(), 3.0, 1e-12);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(mrt.v.col(k).squaredNorm(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(h.col(k).dot(mrt.v.col(k))), h.col(k).norm(), 1e-12);
    }
    const auto single = closed_form_single_user(h, 3.0);
    Eigen::Index best = 0;
    h.colwise().squaredNorm().maxCoeff(&best);
    EXPECT_NEAR(jamming_objective(h, single.v), 3.0 * h.col(best).squaredNorm(), 1e-12);
    EXPECT_NEAR(single.power(), 3.0, 1e-12);
}

TEST(Bcd, SinglePathSingleAntenna)
{
    auto cfg = config_with(1, 1);
    cfg.n_paths = 1;
    const auto envs = scenario(cfg, 10);
    const auto r = run_bcd(envs, cfg);
    const double expected = cfg.jammer_power_w * std::norm(envs[0].effective_path[0]);
    EXPECT_NEAR(r.objective, expected, 1e-12 * expected);
    for (const auto& it : r.trace.iterations) EXPECT_NEAR(it.objective, expected, 1e-12 * expected);
}

TEST(Bcd, TraceAndDominanceOverFixedArray)
{
    const auto cfg = default_config();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto envs = scenario(cfg, 300 + seed);
        Recorder rec;
        rec.bounds = ArrayBounds::from(cfg);
        const auto r = run_bcd(envs, cfg, JammingStrategy::PaperSca, rec.observer());
        ASSERT_LE(static_cast<int>(r.trace.iterations.size()), cfg.algorithm.t1_max);
        ASSERT_FALSE(r.trace.iterations.empty());
        EXPECT_LE(rec.worst_violation, 1e-9);
        EXPECT_LE(rec.max_power, cfg.jammer_power_w + 1e-9);
        double previous = r.trace.initial_objective;
        for (const auto& it : r.trace.iterations) {
            EXPECT_GE(it.objective, previous);
            previous = it.objective;
        }
        const auto& last = r.trace.iterations.back();
        switch (r.trace.termination) {
        case Termination::Tolerance:
            EXPECT_TRUE(last.dv_fro <= cfg.algorithm.epsilon || last.dp_fro <= cfg.algorithm.epsilon);
            break;
        case Termination::T1Max:
            EXPECT_EQ(static_cast<int>(r.trace.iterations.size()), cfg.algorithm.t1_max);
            break;
        case Termination::Stalled:
            break;
        }

        const auto fpa = fpa_layout(cfg);
        const auto h = jammer_channels(fpa, envs, cfg.wavelength_m);
        const auto fixed = optimize_beamforming(envs, fpa, mrt_equal_power(h, cfg.jammer_power_w), cfg);
        EXPECT_GE(r.objective, fixed.objective);

        const auto moved = run_movable_mrt(envs, cfg);
        EXPECT_GE(moved.objective, jamming_objective(h, mrt_equal_power(h, cfg.jammer_power_w).v));
        EXPECT_TRUE(is_feasible(moved.positions, rec.bounds));
    }
}

TEST(Bcd, MovableMrtKeepsEqualPowerBeamsAndIsMonotone)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg, 11);
    Recorder rec;
    rec.bounds = ArrayBounds::from(cfg);
    const auto r = run_movable_mrt(envs, cfg, rec.observer());
    for (std::size_t i = 1; i < rec.objectives.size(); ++i) EXPECT_GE(rec.objectives[i], rec.objectives[i - 1]);
    const double share = cfg.jammer_power_w / cfg.n_users;
    for (Eigen::Index k = 0; k < r.beams.v.cols(); ++k) EXPECT_NEAR(r.beams.v.col(k).squaredNorm(), share, 1e-12 * share);
}

TEST(Bcd, ClosedFormStrategiesStayOnTheFixedArray)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg, 12);
    const auto fpa = fpa_layout(cfg);
    const auto h = jammer_channels(fpa, envs, cfg.wavelength_m);
    const auto mrt = run_bcd(envs, cfg, JammingStrategy::MrtEqualPower);
    EXPECT_EQ(mrt.positions, fpa);
    EXPECT_EQ(mrt.beams.v, mrt_equal_power(h, cfg.jammer_power_w).v);
    const auto single = run_bcd(envs, cfg, JammingStrategy::ClosedFormSingleUser);
    EXPECT_EQ(single.beams.v, closed_form_single_user(h, cfg.jammer_power_w).v);
    EXPECT_THROW(run_bcd(envs, cfg, JammingStrategy::FullCsiGradient), std::invalid_argument);
}

TEST(Bcd, DeterministicTraces)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg, 13);
    std::ostringstream a, b;
    write_trace_csv(a, run_bcd(envs, cfg).trace);
    write_trace_csv(b, run_bcd(envs, cfg).trace);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("outer_iter,objective,dV_fro,dP_fro,inner_v_iters,inner_p_iters\n", 0), 0u);
}
