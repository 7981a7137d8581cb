#include <gtest/gtest.h>

#include "majam/optimizer.hpp"
#include "majam/precoder.hpp"
#include "test_support.hpp"

using namespace majam;
using majam::test::cd;

namespace {

struct Instance
{
    std::vector<UserEnvironment> envs;
    BsPrecoder precoder;
    ComplexMatrix direct;
};

Instance instance(const SystemConfig& cfg, std::uint64_t seed)
{
    Rng rng = make_stream(seed, 0);
    Instance out;
    out.envs = sample_scenario(cfg, rng);
    out.direct = stack_direct_channels(out.envs);
    out.precoder = bs_precoder(out.direct, cfg.bs_power_w, cfg.precoder);
    return out;
}

} // namespace

TEST(FullCsi, ZeroPowerGivesZeroBeams)
{
    auto cfg = default_config();
    cfg.jammer_power_w = 0.0;
    const auto in = instance(cfg, 1);
    const auto v = full_csi_beamforming(in.envs, in.precoder.w, fpa_layout(cfg), cfg);
    EXPECT_EQ(v.v, ComplexMatrix::Zero(4, 4));
}

TEST(FullCsi, SumRateMatchesIndependentFormula)
{
    const auto cfg = default_config();
    std::mt19937_64 rng(2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto in = instance(cfg, 10 + s);
        const auto p = test::random_positions(cfg, rng);
        const auto g = jammer_channels(p, in.envs, cfg.wavelength_m);
        const auto v = test::random_beams(4, 4, 2.0, rng);
        EXPECT_NEAR(sum_rate(in.envs, in.precoder.w, g, v, cfg),
                    test::oracle_sum_rate(in.direct, in.precoder.w, g, v, cfg.noise_power_w), 1e-12);
    }
}

TEST(FullCsi, GradientMatchesFiniteDifferences)
{
    const auto cfg = default_config();
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto in = instance(cfg, 40 + s);
        const auto g = jammer_channels(fpa_layout(cfg), in.envs, cfg.wavelength_m);
        const auto v = test::random_beams(4, 4, 1.0, rng);
        const auto grad = sum_rate_gradient(in.envs, in.precoder.w, g, v, cfg);
        ComplexMatrix fd(4, 4);
        const double h = 1e-7;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            double parts[2];
            for (int part = 0; part < 2; ++part) {
                const cd step = part == 0 ? cd(h, 0.0) : cd(0.0, h);
                ComplexMatrix plus = v, minus = v;
                plus.data()[i] += step;
                minus.data()[i] -= step;
                parts[part] = (test::oracle_sum_rate(in.direct, in.precoder.w, g, plus, cfg.noise_power_w) -
                               test::oracle_sum_rate(in.direct, in.precoder.w, g, minus, cfg.noise_power_w)) /
                              (2.0 * h);
            }
            fd.data()[i] = cd(parts[0], parts[1]);
        }
        worst = std::max(worst, (fd - grad).norm() / grad.norm());
    }
    EXPECT_LT(worst, 1e-5);
}

TEST(FullCsi, NeverWorseThanPartialBeamsAtTheSamePositions)
{
    const auto cfg = default_config();
    for (std::uint64_t s = 0; s < 15; ++s) {
        const auto in = instance(cfg, 80 + s);
        const auto bcd = run_bcd(in.envs, cfg);
        const auto g = jammer_channels(bcd.positions, in.envs, cfg.wavelength_m);
        const auto full = full_csi_beamforming(in.envs, in.precoder.w, bcd.positions, cfg, &bcd.beams);
        EXPECT_LE(full.power(), cfg.jammer_power_w + 1e-9);
        EXPECT_LE(sum_rate(in.envs, in.precoder.w, g, full.v, cfg),
                  sum_rate(in.envs, in.precoder.w, g, bcd.beams.v, cfg) + 1e-6);
        const auto mrt = mrt_equal_power(g, cfg.jammer_power_w);
        EXPECT_LE(sum_rate(in.envs, in.precoder.w, g, full.v, cfg), sum_rate(in.envs, in.precoder.w, g, mrt.v, cfg) + 1e-6);
    }
}
