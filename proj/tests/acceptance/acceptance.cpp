// Acceptance suite: one PASS/FAIL line per primary criterion, followed by
// the numbers behind each verdict. Exit status is the number of failures
// (capped at 1).

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "majam/gradcheck.hpp"
#include "majam/report.hpp"
#include "majam/simulator.hpp"

using namespace majam;

namespace {

int failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail)
{
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void info(const std::string& name, const std::string& detail)
{
    std::printf("      %-28s %s\n", name.c_str(), detail.c_str());
}

std::string num(double x, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// ---------------------------------------------------------------------------

void gradient_correctness()
{
    const auto r = run_gradcheck(default_config(), 100, 2024);
    const double worst = std::max(r.max_rel_error_positions, r.max_rel_error_beams);
    verdict(worst < 1e-5, "gradient-correctness",
            "instances=" + std::to_string(r.instances) + " max_rel_err dP=" + num(r.max_rel_error_positions) +
                " dV=" + num(r.max_rel_error_beams) + " (sum-rate dV=" + num(r.max_rel_error_sum_rate) +
                ") tol=1e-5");
}

void p1_oracle()
{
    auto cfg = default_config();
    cfg.algorithm.epsilon = 1e-10;
    cfg.algorithm.t2_max = 200000;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = make_stream(7001, i);
        const auto envs = sample_scenario(cfg, rng);
        const auto p = fpa_layout(cfg);
        const auto h = jammer_channels(p, envs, cfg.wavelength_m);
        const auto r = optimize_beamforming(envs, p, mrt_equal_power(h, cfg.jammer_power_w), cfg);
        double strongest = 0.0;
        for (Eigen::Index k = 0; k < h.cols(); ++k) strongest = std::max(strongest, h.col(k).squaredNorm());
        const double oracle = cfg.jammer_power_w * strongest;
        worst = std::max(worst, std::abs(r.objective - oracle) / oracle);
    }
    verdict(worst <= 1e-6, "p1-oracle-equivalence", "instances=50 max_rel_err=" + num(worst) + " tol=1e-6");
}

void position_oracle()
{
    auto cfg = default_config();
    cfg.n_users = 1;
    cfg.n_jammer_antennas = 1;
    cfg.array_half_length_m = cfg.wavelength_m;
    const double lam = cfg.wavelength_m;
    const int steps = static_cast<int>(std::lround(cfg.wavelength_m / (lam / 20.0)));
    const int ysteps = static_cast<int>(std::lround(cfg.array_half_length_m / (lam / 20.0)));

    int passed = 0;
    double worst = 1.0, sum = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = make_stream(7002, i);
        const auto envs = sample_scenario(cfg, rng);
        const auto r = run_bcd(envs, cfg);
        double best = 0.0;
        Eigen::Matrix3Xd p(3, 1);
        for (int a = -steps; a <= steps; ++a)
            for (int b = -ysteps; b <= ysteps; ++b)
                for (int c = -steps; c <= steps; ++c) {
                    p << a * lam / 20.0, b * lam / 20.0, c * lam / 20.0;
                    best = std::max(best, jamming_objective(jammer_channels(AntennaPositions(p), envs, lam), r.beams.v));
                }
        const double ratio = r.objective / best;
        passed += ratio >= 0.95 ? 1 : 0;
        worst = std::min(worst, ratio);
        sum += ratio;
    }
    verdict(passed == 20, "position-oracle-m1",
            "instances=20 at>=95%: " + std::to_string(passed) + "/20 worst=" + num(worst) + " mean=" + num(sum / 20.0));
}

void feasibility_monotonicity()
{
    long iterates = 0, outer = 0;
    double worst_violation = 0.0, worst_power = 0.0, worst_inner_drop = 0.0, worst_outer_drop = 0.0;
    for (bool faithful : {false, true}) {
        for (int strategy = 0; strategy < 2; ++strategy) {
            auto cfg = default_config();
            cfg.algorithm.paper_faithful = faithful;
            const auto bounds = ArrayBounds::from(cfg);
            for (std::uint64_t i = 0; i < 50; ++i) {
                Rng rng = make_stream(7003, i);
                const auto envs = sample_scenario(cfg, rng);
                double last = -1.0;
                const IterateObserver observer = [&](const JammerBeamforming& v, const AntennaPositions& p, double obj) {
                    ++iterates;
                    worst_violation = std::max(worst_violation, max_violation(p, bounds));
                    worst_power = std::max(worst_power, v.power() - cfg.jammer_power_w);
                    if (last >= 0.0 && last > 0.0) worst_inner_drop = std::max(worst_inner_drop, (last - obj) / last);
                    last = obj;
                };
                const auto r = strategy == 0 ? run_bcd(envs, cfg, JammingStrategy::PaperSca, observer)
                                             : run_movable_mrt(envs, cfg, observer);
                double prev = r.trace.initial_objective;
                for (const auto& it : r.trace.iterations) {
                    ++outer;
                    worst_outer_drop = std::max(worst_outer_drop, (prev - it.objective) / prev);
                    prev = it.objective;
                }
            }
        }
    }
    // Observer sequences restart at each block boundary with the same point,
    // so a drop would show up in either column.
    const bool ok = worst_violation <= 1e-9 && worst_power <= 1e-9 && worst_outer_drop <= 0.0 && worst_inner_drop <= 0.0;
    verdict(ok, "feasibility-monotonicity",
            "iterates=" + std::to_string(iterates) + " outer=" + std::to_string(outer) +
                " max_violation=" + num(worst_violation) + " max_power_excess=" + num(worst_power) +
                " max_rel_drop inner=" + num(worst_inner_drop) + " outer=" + num(worst_outer_drop));
}

// ---------------------------------------------------------------------------

struct Curves
{
    SweepResult power;
    SweepResult location;
};

Curves run_curves(PartialStrategy strategy)
{
    auto cfg = default_config();
    cfg.algorithm.partial_strategy = strategy;
    Curves c;
    c.power = sweep_power(cfg, cfg.sweep.powers_w, all_jam_modes());
    c.location = sweep_jammer_location(cfg, cfg.sweep.jammer_x_m, all_jam_modes());
    return c;
}

struct Verdict
{
    bool ok = false;
    std::string detail;
};

Verdict power_sweep(const SweepResult& r)
{
    const auto none = r.mode_index(JamMode::None);
    const auto fp = r.mode_index(JamMode::FpaPartial);
    const auto ff = r.mode_index(JamMode::FpaFull);
    const auto mp = r.mode_index(JamMode::MaPartial);
    const auto mf = r.mode_index(JamMode::MaFull);

    const double baseline = r.aggregate_for(0, none).mean_sum_rate;
    bool baseline_ok = baseline >= 25.0 && baseline <= 45.0;
    bool exceeds = true;
    double gap_sum = 0.0, worst_full_partial = 0.0;
    std::string gaps, diffs;
    for (std::size_t p = 0; p < r.axis.size(); ++p) {
        const double base = r.aggregate_for(p, none).mean_sum_rate;
        const double red_fpa = base - r.aggregate_for(p, fp).mean_sum_rate;
        const double red_ma = base - r.aggregate_for(p, mp).mean_sum_rate;
        exceeds = exceeds && red_ma > red_fpa;
        const double gap = (red_ma - red_fpa) / red_fpa;
        gap_sum += gap;
        gaps += (p ? "," : "") + num(100.0 * gap, 3);
        const auto rel = [&](std::size_t full, std::size_t partial) {
            const double part = r.aggregate_for(p, partial).mean_sum_rate;
            return std::abs(r.aggregate_for(p, full).mean_sum_rate - part) / part;
        };
        const double d = std::max(rel(ff, fp), rel(mf, mp));
        worst_full_partial = std::max(worst_full_partial, d);
        diffs += (p ? "," : "") + num(100.0 * rel(ff, fp), 3) + "/" + num(100.0 * rel(mf, mp), 3);
    }
    const double mean_gap = gap_sum / static_cast<double>(r.axis.size());
    Verdict out;
    out.ok = baseline_ok && exceeds && mean_gap >= 0.10 && worst_full_partial < 0.15;
    out.detail = std::string("no-jam=") + num(baseline) + (baseline_ok ? " in" : " NOT in") + " [25,45]; MA>FPA reduction at all P: " +
                 (exceeds ? "yes" : "no") + "; mean gap=" + num(100.0 * mean_gap, 3) + "% (per P: " + gaps +
                 ") need>=10%; full-vs-partial fpa/ma %=" + diffs + " need<15%";
    return out;
}

Verdict location_sweep(const SweepResult& r)
{
    std::size_t center = 0;
    for (std::size_t p = 0; p < r.axis.size(); ++p)
        if (std::abs(r.axis[p] - 50.0) < std::abs(r.axis[center] - 50.0)) center = p;
    const std::size_t first = 0, last = r.axis.size() - 1;

    bool ok = true;
    std::string detail;
    for (JamMode mode : {JamMode::FpaPartial, JamMode::FpaFull, JamMode::MaPartial, JamMode::MaFull}) {
        const auto m = r.mode_index(mode);
        std::size_t argmin = 0;
        for (std::size_t p = 0; p < r.axis.size(); ++p)
            if (r.aggregate_for(p, m).mean_sum_rate < r.aggregate_for(argmin, m).mean_sum_rate) argmin = p;
        const auto& a0 = r.aggregate_for(first, m);
        const auto& a1 = r.aggregate_for(last, m);
        const double diff = std::abs(a0.mean_sum_rate - a1.mean_sum_rate);
        const double tol = 2.0 * std::max(a0.se_sum_rate, a1.se_sum_rate);
        const bool mode_ok = argmin == center && diff <= tol;
        ok = ok && mode_ok;
        detail += std::string(to_string(mode)) + ": min@x=" + num(r.axis[argmin]) + " |SR(0)-SR(100)|=" + num(diff, 3) +
                  " (2SE=" + num(tol, 3) + "); ";
    }
    return {ok, detail};
}

Verdict outage(const SweepResult& r)
{
    const auto none = r.mode_index(JamMode::None);
    bool ok = true;
    std::string detail;

    double none_max = 0.0;
    for (std::size_t p = 0; p < r.axis.size(); ++p)
        none_max = std::max({none_max, r.aggregate_for(p, none).p_system_indep, r.aggregate_for(p, none).p_system_empirical});
    const bool none_ok = none_max == 0.0;
    ok = ok && none_ok;
    detail += "no-jam outage=" + num(none_max) + (none_ok ? "" : " (!=0)") + "; ";

    bool monotone = true;
    for (JamMode mode : {JamMode::FpaPartial, JamMode::MaPartial, JamMode::FpaFull, JamMode::MaFull}) {
        const auto m = r.mode_index(mode);
        for (std::size_t p = 1; p < r.axis.size(); ++p) {
            const auto& lo = r.aggregate_for(p - 1, m);
            const auto& hi = r.aggregate_for(p, m);
            const double se = std::max(lo.se_p_system_empirical, hi.se_p_system_empirical);
            monotone = monotone && hi.p_system_indep >= lo.p_system_indep - 2.0 * se;
        }
    }
    ok = ok && monotone;
    detail += std::string("monotone in P_J: ") + (monotone ? "yes" : "no") + "; ";

    bool outage_order = true, fraction_order = true;
    std::string outages, fractions;
    for (auto [fpa, ma] : {std::pair{JamMode::FpaPartial, JamMode::MaPartial}, std::pair{JamMode::FpaFull, JamMode::MaFull}}) {
        const auto f = r.mode_index(fpa);
        const auto m = r.mode_index(ma);
        for (std::size_t p = 0; p < r.axis.size(); ++p) {
            const auto& af = r.aggregate_for(p, f);
            const auto& am = r.aggregate_for(p, m);
            outage_order = outage_order && am.p_system_indep >= af.p_system_indep;
            fraction_order = fraction_order && am.user_outage_frac > af.user_outage_frac;
            outages += num(af.p_system_indep, 2) + "/" + num(am.p_system_indep, 2) + " ";
            fractions += num(af.user_outage_frac, 2) + "/" + num(am.user_outage_frac, 2) + " ";
        }
        outages += "| ";
        fractions += "| ";
    }
    ok = ok && outage_order && fraction_order;
    detail += std::string("MA>=FPA outage: ") + (outage_order ? "yes" : "no") + " [fpa/ma partial | full: " + outages +
              "]; MA>FPA user fraction: " + (fraction_order ? "yes" : "no") + " [" + fractions + "]";
    return {ok, detail};
}

// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void determinism()
{
#ifdef MAJAM_CLI
    namespace fs = std::filesystem;
    const fs::path work = MAJAM_WORK_DIR;
    fs::remove_all(work);
    fs::create_directories(work);
    const auto sh = [&](const std::string& args) {
        const std::string cmd = "cd '" + work.string() + "' && '" MAJAM_CLI "' " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    bool ok = true;
    std::string detail;
    for (const std::string axis : {"power", "location"}) {
        ok = ok && sh("sweep -q --axis " + axis + " -j 1 -o " + axis + "_j1") == 0;
        for (int jobs : {2, 4}) {
            const std::string dir = axis + "_rerun_j" + std::to_string(jobs);
            ok = ok && sh("rerun " + axis + "_j1/manifest.json -q -j " + std::to_string(jobs) + " -o " + dir) == 0;
            const bool same = slurp(work / (axis + "_j1") / ("raw_" + axis + ".csv")) ==
                              slurp(work / dir / ("raw_" + axis + ".csv"));
            ok = ok && same;
            detail += axis + " j1 vs rerun j" + std::to_string(jobs) + ": " + (same ? "identical" : "DIFFERENT") + "; ";
        }
    }
    ok = ok && sh("optimize --seed 7 -o opt_a") == 0 && sh("rerun opt_a/manifest.json -o opt_b") == 0;
    const bool trace_same = !slurp(work / "opt_a/trace.csv").empty() &&
                            slurp(work / "opt_a/trace.csv") == slurp(work / "opt_b/trace.csv");
    ok = ok && trace_same;
    detail += std::string("optimize trace rerun: ") + (trace_same ? "identical" : "DIFFERENT");
    verdict(ok, "determinism", detail);
#else
    auto cfg = default_config();
    std::ostringstream a, b;
    write_raw_csv(a, sweep_power(cfg, cfg.sweep.powers_w, all_jam_modes(), {.jobs = 1}));
    write_raw_csv(b, sweep_power(cfg, cfg.sweep.powers_w, all_jam_modes(), {.jobs = 4}));
    verdict(a.str() == b.str(), "determinism", "library-level power sweep jobs=1 vs jobs=4 (CLI not built)");
#endif
}

} // namespace

int main()
{
    std::printf("acceptance suite (default config, master seed %llu, %d realizations)\n",
                static_cast<unsigned long long>(default_config().algorithm.master_seed),
                default_config().algorithm.monte_carlo_runs);

    gradient_correctness();
    p1_oracle();
    position_oracle();
    feasibility_monotonicity();

    const auto curves = run_curves(PartialStrategy::PaperSca);
    const auto a = power_sweep(curves.power);
    verdict(a.ok, "power-sweep-trend", a.detail);
    const auto b = location_sweep(curves.location);
    verdict(b.ok, "location-sweep-trend", b.detail);
    const auto c = outage(curves.power);
    verdict(c.ok, "outage-trend", c.detail);
    determinism();

    // Same checks with the alternative partial-CSI jammer; informational.
    const auto alt = run_curves(PartialStrategy::MrtEqualPower);
    const auto a2 = power_sweep(alt.power);
    info("[mrt-equal-power] power-sweep", std::string(a2.ok ? "pass: " : "fail: ") + a2.detail);
    const auto b2 = location_sweep(alt.location);
    info("[mrt-equal-power] location", std::string(b2.ok ? "pass: " : "fail: ") + b2.detail);
    const auto c2 = outage(alt.power);
    info("[mrt-equal-power] outage", std::string(c2.ok ? "pass: " : "fail: ") + c2.detail);

    std::printf("%d criteria failed\n", failures);
    return failures > 0 ? 1 : 0;
}
