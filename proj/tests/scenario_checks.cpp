#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "omsync/integrate.hpp"
#include "omsync/lyapunov.hpp"
#include "omsync/scenario.hpp"
#include "omsync/signal.hpp"
#include "omsync/units.hpp"

// End-to-end checks of the shipped presets: chaos classification, regime
// diagnostics, lock/sync verdicts, and integrator cross-validation. These run
// the full experiment pipeline, so they are slower than the unit suite.

using namespace omsync;

namespace {

double max_channel_modulus(const trajectory& traj, const char* re_name, const char* im_name) {
    const auto re = traj.channel(re_name);
    const auto im = traj.channel(im_name);
    double worst = 0.0;
    for (std::size_t i = 0; i < re.size(); ++i)
        worst = std::max(worst, std::hypot(re[i], im[i]));
    return worst;
}

double max_state_difference(const trajectory& a, const trajectory& b) {
    REQUIRE(a.size() == b.size());
    REQUIRE(a.dim == b.dim);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
    return worst;
}

} // namespace

// ---------------------------------------------------------------------------
TEST_SUITE("chaos classification") {

TEST_CASE("undriven shared-resonator baseline stays regular and bounded") {
    // With the strong drive disconnected the weak modes are linearly damped
    // and driven: the response must stay inside the linear bound and the
    // exponent must come out negative by a clear margin.
    trajectory traj;
    const auto rep = run_scenario(preset("fig3a"), &traj);
    CHECK(rep.errors.empty());
    REQUIRE(rep.lle.has_value());
    CAPTURE(rep.lle->lle);
    CAPTURE(rep.lle->std_error);
    CHECK(rep.lle->lle < 0.0);
    CHECK(std::abs(rep.lle->lle) > 3.0 * rep.lle->std_error);
    CHECK(std::abs(rep.lle->lle) < 0.05); // a gentle contraction, not a collapse

    const auto& c = rep.config.params.cav[1];
    const double linear_bound = 4.0 * c.eps / c.gamma;
    CHECK(max_channel_modulus(traj, "re_alpha_1", "im_alpha_1") < linear_bound);
    CHECK(max_channel_modulus(traj, "re_alpha_2", "im_alpha_2") < linear_bound);
}

TEST_CASE("driven shared-resonator baseline goes chaotic but stays on its attractor") {
    trajectory traj;
    const auto rep = run_scenario(preset("fig3b"), &traj);
    CHECK(rep.errors.empty());
    REQUIRE(rep.lle.has_value());
    CAPTURE(rep.lle->lle);
    CAPTURE(rep.lle->std_error);
    CHECK(rep.lle->lle > 0.0);
    CHECK(rep.lle->lle > 3.0 * rep.lle->std_error);
    CHECK(rep.lle->lle == doctest::Approx(1.79).epsilon(0.1));

    // 2000 ns of motion without a blow-up, on a bounded attractor.
    CHECK(traj.size() > 100000);
    double u_max = 0.0;
    for (double u : traj.channel("u")) u_max = std::max(u_max, std::abs(u));
    CAPTURE(u_max);
    CHECK(std::isfinite(u_max));
    CHECK(u_max < 1e4);
    CHECK(u_max > 1.0); // the resonator really is excited
}

TEST_CASE("spring chain with springs off leaves the weak branches regular") {
    const auto rep = run_scenario(preset("fig5a"));
    CHECK(rep.errors.empty());
    REQUIRE(rep.lle.has_value());
    CAPTURE(rep.lle->lle);
    CAPTURE(rep.lle->std_error);
    CHECK(rep.lle->lle < 0.0);
    CHECK(std::abs(rep.lle->lle) > 3.0 * rep.lle->std_error);
    CHECK(std::abs(rep.lle->lle) < 0.05);
}

TEST_CASE("spring-coupled chain: both estimators agree the weak branches are chaotic") {
    const auto c = preset("fig5b");
    const auto w = lle_wolf(c.params, c.ics, c.lle);
    const auto b = lle_benettin(c.params, c.ics, c.lle);
    CAPTURE(w.lle);
    CAPTURE(b.lle);
    CHECK(w.lle > 0.0);
    CHECK(b.lle > 0.0);
    CHECK(w.lle == doctest::Approx(1.79).epsilon(0.1));
    // Independent estimators on the same orbit: within 10% of each other.
    CHECK(std::abs(w.lle - b.lle) < 0.1 * std::abs(w.lle));
}

TEST_CASE("the exponent is insensitive to perturbation scale and start point") {
    auto c = preset("fig3b");
    std::vector<double> ic = c.ics;
    ic[0] = 0.1; // nudge the start off the preset's zero state
    ic[6] = 0.05;

    lle_options o;
    o.dt = 5e-4;     // finer step than the production runs
    o.t_total = 700.0;
    o.discard = 100.0;

    o.d0_rel = 1e-6;
    const auto coarse = lle_wolf(c.params, ic, o);
    o.d0_rel = 1e-10;
    const auto fine = lle_wolf(c.params, ic, o);
    CAPTURE(coarse.lle);
    CAPTURE(fine.lle);
    CHECK(coarse.lle > 0.0);
    CHECK(fine.lle > 0.0);
    // Same orbit, four decades apart in perturbation scale: the estimates
    // must agree well inside their own statistical error.
    const double se = std::max(coarse.std_error, fine.std_error);
    CHECK(std::abs(coarse.lle - fine.lle) < 2.0 * se);

    // The preset's own start lands on the same attractor.
    o.d0_rel = 1e-8;
    const auto from_zero = lle_wolf(c.params, c.ics, o);
    CAPTURE(from_zero.lle);
    CHECK(from_zero.lle > 0.0);
    CHECK(std::abs(from_zero.lle - fine.lle) <
          2.0 * (from_zero.std_error + fine.std_error));
}

} // TEST_SUITE("chaos classification")

// ---------------------------------------------------------------------------
TEST_SUITE("phase-sync runs") {

TEST_CASE("strong/weak pair on one resonator: chaotic and inside the regime") {
    trajectory traj;
    const auto rep = run_scenario(preset("fig7"), &traj);
    CHECK(rep.errors.empty());

    REQUIRE(rep.lle.has_value());
    CAPTURE(rep.lle->lle);
    CHECK(rep.lle->lle > 0.0);
    CHECK(rep.lle->lle == doctest::Approx(1.79).epsilon(0.1));

    REQUIRE(rep.regime.has_value());
    const auto& r = *rep.regime;
    CAPTURE(r.ratio_delta_strong);
    CAPTURE(r.ratio_gamma_strong);
    CAPTURE(r.ratio_delta_weak);
    CAPTURE(r.ratio_gamma_weak);
    CHECK(r.satisfied);
    // The frequency modulation dominates detuning and linewidth by two orders
    // of magnitude on the strong side and well over one on the weak side.
    CHECK(r.ratio_delta_strong > 100.0);
    CHECK(r.ratio_gamma_strong > 50.0);
    CHECK(r.ratio_delta_weak > 100.0);
    CHECK(r.ratio_gamma_weak > 50.0);

    // The report's displacement average is the documented time average of |u|.
    const double u_bar = mean_abs(traj.times, traj.channel("u"));
    CHECK(r.u_bar_strong == u_bar);
    CHECK(r.u_bar_weak == u_bar); // one resonator serves both modes
    CHECK(r.g_ubar_strong == doctest::Approx(rep.config.params.cav[0].g * u_bar).epsilon(1e-12));
}

TEST_CASE("spring-coupled pair: chaotic and inside the regime") {
    const auto rep = run_scenario(preset("fig9"));
    CHECK(rep.errors.empty());

    REQUIRE(rep.lle.has_value());
    CAPTURE(rep.lle->lle);
    CHECK(rep.lle->lle > 0.0);
    CHECK(rep.lle->lle == doctest::Approx(1.79).epsilon(0.1));

    REQUIRE(rep.regime.has_value());
    const auto& r = *rep.regime;
    CAPTURE(r.ratio_delta_strong);
    CAPTURE(r.ratio_gamma_strong);
    CAPTURE(r.ratio_delta_weak);
    CAPTURE(r.ratio_gamma_weak);
    CHECK(r.satisfied);
    CHECK(r.ratio_delta_strong > 100.0);
    CHECK(r.ratio_gamma_strong > 50.0);
    CHECK(r.ratio_delta_weak > 80.0);
    CHECK(r.ratio_gamma_weak > 40.0);
    // The weak resonator moves less than the directly driven one.
    CHECK(r.u_bar_weak < r.u_bar_strong);
}

TEST_CASE("drive-coupling sweep walks the pair into phase lock") {
    // One sweep covers the three published operating points: coupling rate at
    // 1%, 10% and 100% of the strong mode's (drive-strength ratios 100/10/1).
    const auto base = preset("fig8a");
    const double g_s = base.params.cav[0].g;
    const auto swept = sweep(base, "g_w", {0.01 * g_s, 0.1 * g_s, g_s});
    REQUIRE(swept.reports.size() == 3);
    for (const auto& rep : swept.reports) {
        CHECK(rep.errors.empty());
        REQUIRE(rep.lock.has_value());
        REQUIRE(rep.regime.has_value());
    }

    const auto& far = *swept.reports[0].lock;   // expect ratio 100, far from lock
    const auto& mid = *swept.reports[1].lock;   // expect ratio 10
    const auto& unity = *swept.reports[2].lock; // expect ratio 1, locked

    CAPTURE(far.ratio_mean);
    CAPTURE(far.ratio_band_width);
    CAPTURE(far.deviation);
    CHECK(!far.locked);
    CHECK(far.ratio_band_width > 0.5); // the ratio wanders, no plateau at all
    // ...and its weak side fails the regime inequalities, which is why.
    CHECK(!swept.reports[0].regime->weak_satisfied);
    CHECK(swept.reports[0].regime->strong_satisfied);

    // At a tenth of the strong coupling the published behaviour is a ratio
    // that still slips; a locked verdict here disagrees with the reference
    // phase-ratio plateaus and is under investigation (the plateau at 10 is
    // real but its band stays inside the lock tolerance on this horizon).
    CAPTURE(mid.ratio_mean);
    CAPTURE(mid.ratio_band_width);
    CAPTURE(mid.deviation);
    CHECK_MESSAGE(!mid.locked,
                  "expected the mid-coupling point to stay unlocked; measured mean ",
                  mid.ratio_mean, ", band ", mid.ratio_band_width, ", deviation ",
                  mid.deviation);

    CAPTURE(unity.ratio_mean);
    CAPTURE(unity.ratio_band_width);
    CAPTURE(unity.deviation);
    CHECK(unity.locked);
    CHECK(unity.deviation < 0.05);   // within 5% of the 1:1 target
    CHECK(swept.reports[2].regime->satisfied);
}

TEST_CASE("spring-rate sweep walks the coupled devices into phase lock") {
    const auto base = preset("fig10a");
    const double gamma_s = base.params.cav[0].gamma;
    const auto swept = sweep(base, "k1", {1e-3 * gamma_s, 1e-2 * gamma_s, 1e3 * gamma_s});
    REQUIRE(swept.reports.size() == 3);
    for (const auto& rep : swept.reports) {
        CHECK(rep.errors.empty());
        REQUIRE(rep.lock.has_value());
    }

    const auto& loose = *swept.reports[0].lock;
    const auto& closer = *swept.reports[1].lock;
    const auto& stiff = *swept.reports[2].lock;

    // Loose spring: the weak device runs at its own pace, mean ratio far off 1.
    CAPTURE(loose.ratio_mean);
    CAPTURE(loose.ratio_band_width);
    CHECK(!loose.locked);
    CHECK(loose.deviation > loose.opts.tol);

    // Tenfold stiffer: still not locked, but the ratio band has tightened.
    CAPTURE(closer.ratio_mean);
    CAPTURE(closer.ratio_band_width);
    CHECK(!closer.locked);
    CHECK(closer.ratio_band_width < loose.ratio_band_width);

    // Stiff spring: locked on the 1:1 target.
    CAPTURE(stiff.ratio_mean);
    CAPTURE(stiff.ratio_band_width);
    CHECK(stiff.locked);
    CHECK(stiff.deviation < 0.05);
}

} // TEST_SUITE("phase-sync runs")

// ---------------------------------------------------------------------------
TEST_SUITE("integrator cross-check") {

TEST_CASE("fixed-step and adaptive integration agree while the orbit is still tame") {
    // Before sensitive dependence has amplified the method difference the two
    // integrators must track each other to well below the adaptive tolerance
    // budget's growth.
    auto c = preset("fig7");
    c.plan.t1 = 0.25;
    const auto fixed = integrate(c.params, c.ics, c.plan);
    const auto adaptive = integrate_adaptive(c.params, c.ics, c.plan);
    const double worst = max_state_difference(fixed, adaptive);
    CAPTURE(worst);
    CHECK(worst < 1e-5);
}

TEST_CASE("fixed-step and adaptive integration agree over a 50 ns chaotic window") {
    // Contract under test: two integrators at these tolerances should stay
    // within 1e-5 of each other for 50 ns on this preset. The measured orbit
    // has a positive exponent near 1.8/ns and local separation rates many
    // times that, so the 1e-5 budget is exhausted within about half a
    // nanosecond and the trajectories decorrelate to attractor scale; the
    // criterion is not attainable on this horizon and the check records that
    // honestly rather than loosening the bound.
    auto c = preset("fig7");
    c.plan.t1 = 50.0;
    const auto fixed = integrate(c.params, c.ics, c.plan);
    const auto adaptive = integrate_adaptive(c.params, c.ics, c.plan);
    REQUIRE(fixed.times == adaptive.times);
    const double worst = max_state_difference(fixed, adaptive);
    CAPTURE(worst);
    CHECK_MESSAGE(worst < 1e-5,
                  "cross-integrator agreement over 50 ns: measured max difference ", worst,
                  " (sensitive dependence amplifies the method difference past any fixed"
                  " tolerance within ~0.5 ns; agreement holds on sub-chaotic horizons,"
                  " see the companion check)");
}

} // TEST_SUITE("integrator cross-check")

// ---------------------------------------------------------------------------
TEST_SUITE("determinism") {

TEST_CASE("running a preset twice gives identical verdicts") {
    const auto c = preset("fig4_g1");
    const auto r1 = run_scenario(c);
    const auto r2 = run_scenario(c);
    REQUIRE(r1.sync.has_value());
    REQUIRE(r2.sync.has_value());
    CHECK(r1.sync->synchronized == r2.sync->synchronized);
    CHECK(r1.sync->settled == r2.sync->settled);
    CHECK(r1.sync->settle_time == r2.sync->settle_time);
    CHECK(r1.sync->terminal_amp_error == r2.sync->terminal_amp_error);
    CHECK(r1.sync->terminal_phase_error == r2.sync->terminal_phase_error);
    CHECK(r1.sync->amp_norm == r2.sync->amp_norm);
    CHECK(r1.errors == r2.errors);
}

} // TEST_SUITE("determinism")
