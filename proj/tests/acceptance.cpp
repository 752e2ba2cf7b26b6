// Acceptance gate: eight release criteria, one PASS/FAIL line each with the
// measured numbers and the pinned tolerances. Exits nonzero if any criterion
// fails. Where a criterion is not attainable by a faithful implementation the
// line reports the honest measurement instead of loosening the check.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "omsync/integrate.hpp"
#include "omsync/lyapunov.hpp"
#include "omsync/scenario.hpp"
#include "omsync/signal.hpp"
#include "omsync/units.hpp"

using namespace omsync;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct criterion {
    bool pass = false;
    std::string detail;
};

// Damped driven cavity with a closed-form solution, the convergence oracle.
struct cavity_oracle {
    double delta, gamma, eps;

    void operator()(double, std::span<const double> y, std::span<double> dy) const {
        dy[0] = delta * y[1] - 0.5 * gamma * y[0] + eps;
        dy[1] = -delta * y[0] - 0.5 * gamma * y[1];
    }

    std::complex<double> exact(std::complex<double> a0, double t) const {
        const std::complex<double> lam(0.5 * gamma, delta);
        const std::complex<double> a_inf = eps / lam;
        return (a0 - a_inf) * std::exp(-lam * t) + a_inf;
    }
};

// ---- criterion 1: exponent classification of the two baselines ------------

criterion check_classification(const lle_estimate& regular, double t_regular,
                               const lle_estimate& chaotic, double t_chaotic) {
    criterion c;
    const bool signs = regular.lle < 0.0 && chaotic.lle > 0.0;
    const bool significant = std::abs(regular.lle) > 3.0 * regular.std_error &&
                             std::abs(chaotic.lle) > 3.0 * chaotic.std_error;
    const bool fast = t_regular < 60.0 && t_chaotic < 60.0;
    c.pass = signs && significant && fast;
    c.detail = fmt("regular LLE=%+.6f/ns (se %.6f, %.1f s), chaotic LLE=%+.6f/ns (se %.6f, %.1f s);"
                   " need opposite signs, |LLE| > 3 se, under 60 s each",
                   regular.lle, regular.std_error, t_regular, chaotic.lle, chaotic.std_error,
                   t_chaotic);
    return c;
}

// ---- criterion 2: complete synchronization of the weak pair ---------------

criterion check_complete_sync(const sweep_report& swept) {
    criterion c;
    c.pass = true;
    std::string parts;
    for (std::size_t i = 0; i < swept.reports.size(); ++i) {
        const auto& rep = swept.reports[i];
        if (!rep.sync.has_value()) {
            c.pass = false;
            parts += fmt(" run %zu: sync analysis failed;", i);
            continue;
        }
        const auto& v = *rep.sync;
        c.pass = c.pass && v.synchronized && v.terminal_amp_error < 1e-3 &&
                 v.terminal_phase_error < 1e-3;
        parts += fmt(" g/2pi=%.0f MHz: %s amp=%.2e cos=%.2e settle=%.1f ns;",
                     hz_from_angular_rate(rep.config.params.cav[1].g) / 1e6,
                     v.synchronized ? "sync" : "NOT-sync", v.terminal_amp_error,
                     v.terminal_phase_error, v.settle_time);
    }
    c.detail = fmt("weak pair verdicts:%s need all synchronized with amp < 1e-3 of |alpha_1|,"
                   " cos-phase < 1e-3",
                   parts.c_str());
    return c;
}

// ---- criterion 3: weak couplings below threshold stay regular -------------

criterion check_weak_coupling_regular(const sweep_report& swept, double gamma_1) {
    criterion c;
    c.pass = true;
    std::string parts;
    for (std::size_t i = 0; i < swept.reports.size(); ++i) {
        const auto& rep = swept.reports[i];
        if (!rep.lle.has_value()) {
            c.pass = false;
            parts += fmt(" run %zu: exponent failed;", i);
            continue;
        }
        c.pass = c.pass && rep.lle->lle <= 0.0;
        parts += fmt(" g/gamma_1=%.2f: LLE=%+.6f/ns;", swept.values[i] / gamma_1, rep.lle->lle);
    }
    c.detail = fmt("weak-mode conditional exponents:%s need LLE <= 0 at both couplings",
                   parts.c_str());
    return c;
}

// ---- criterion 4: spring-rate dependence of the sync verdict --------------

criterion check_spring_rate_dependence(const sweep_report& swept, double gamma_1) {
    criterion c;
    std::string parts;
    std::vector<bool> sync(swept.reports.size(), false);
    std::vector<double> settle(swept.reports.size(), 0.0);
    bool all_present = true;
    for (std::size_t i = 0; i < swept.reports.size(); ++i) {
        const auto& rep = swept.reports[i];
        if (!rep.sync.has_value()) {
            all_present = false;
            parts += fmt(" run %zu: sync analysis failed;", i);
            continue;
        }
        sync[i] = rep.sync->synchronized;
        settle[i] = rep.sync->settle_time;
        parts += fmt(" k/gamma_1=%.0e: %s settle=%.2f ns;", swept.values[i] / gamma_1,
                     sync[i] ? "sync" : "NOT-sync", settle[i]);
    }
    const bool pattern = all_present && !sync[0] && sync[1] && sync[2];
    const bool ordering = all_present && settle[2] < settle[1];
    c.pass = pattern && ordering;
    c.detail = fmt("%s expected NOT-sync/sync/sync with the stiffest spring settling last"
                   " of the two synchronized runs; measured verdicts and settle times disagree"
                   " (weakest spring also synchronizes on this horizon and settle times shrink"
                   " with k)",
                   parts.c_str());
    if (c.pass)
        c.detail = fmt("%s verdicts NOT-sync/sync/sync with settle(k=gamma_1) <"
                       " settle(k=1e-2 gamma_1)",
                       parts.c_str());
    return c;
}

// ---- criteria 5/6: phase-lock progressions --------------------------------

criterion check_drive_ratio_locking(const scenario_report& far, const scenario_report& unity) {
    criterion c;
    if (!far.lock.has_value() || !unity.lock.has_value()) {
        c.detail = "phase-lock analysis failed";
        return c;
    }
    const bool far_ok = !far.lock->locked && far.lock->ratio_band_width > 0.5;
    const bool unity_ok = unity.lock->locked && unity.lock->deviation < 0.05;
    c.pass = far_ok && unity_ok;
    c.detail = fmt("ratio-100 point: %s band=%.3f (need not locked, band > 0.5);"
                   " ratio-1 point: %s mean=%.4f deviation=%.4f (need locked within 5%%)",
                   far.lock->locked ? "LOCKED" : "not locked", far.lock->ratio_band_width,
                   unity.lock->locked ? "locked" : "NOT LOCKED", unity.lock->ratio_mean,
                   unity.lock->deviation);
    return c;
}

criterion check_spring_locking(const sweep_report& swept) {
    criterion c;
    for (const auto& rep : swept.reports)
        if (!rep.lock.has_value()) {
            c.detail = "phase-lock analysis failed";
            return c;
        }
    const auto& loose = *swept.reports[0].lock;
    const auto& mid = *swept.reports[1].lock;
    const auto& stiff = *swept.reports[2].lock;
    const bool loose_ok = !loose.locked;
    const bool mid_ok = !mid.locked && mid.ratio_band_width < loose.ratio_band_width;
    const bool stiff_ok = stiff.locked && stiff.deviation < 0.05;
    c.pass = loose_ok && mid_ok && stiff_ok;
    c.detail = fmt("k=1e-3 gamma_s: %s mean=%.3f band=%.4f; k=1e-2 gamma_s: %s mean=%.4f"
                   " band=%.4f (need band below the looser spring's); k=1e3 gamma_s: %s"
                   " deviation=%.4f (need locked within 5%%)",
                   loose.locked ? "LOCKED" : "not locked", loose.ratio_mean,
                   loose.ratio_band_width, mid.locked ? "LOCKED" : "not locked", mid.ratio_mean,
                   mid.ratio_band_width, stiff.locked ? "locked" : "NOT LOCKED", stiff.deviation);
    return c;
}

// ---- criterion 7: numerical oracles ----------------------------------------

criterion check_oracles(double wolf_fig3b, double wolf_fig5b, double wolf_fig9,
                        double benettin_fig3b, double benettin_fig5b, double benettin_fig9,
                        clock_type::time_point suite_start) {
    // (a) integrator convergence order on the closed-form cavity.
    const cavity_oracle sys{2.2, 1.5, 0.8};
    auto endpoint_error = [&](double dt) {
        integration_plan plan;
        plan.t1 = 8.0;
        plan.dt = dt;
        const std::vector<double> ic{1.0, -0.3};
        const auto traj = integrate(sys, ic, plan);
        const auto y = traj.state(traj.size() - 1);
        const auto ex = sys.exact({1.0, -0.3}, traj.times.back());
        return std::hypot(y[0] - ex.real(), y[1] - ex.imag());
    };
    const double e1 = endpoint_error(0.05);
    const double e2 = endpoint_error(0.025);
    const double e4 = endpoint_error(0.0125);
    const double order_a = std::log2(e1 / e2);
    const double order_b = std::log2(e2 / e4);
    const bool order_ok = order_a > 3.8 && order_a < 4.2 && order_b > 3.8 && order_b < 4.2;

    // (b) pure-tone phase from the transform, interior samples.
    const std::size_t n = 4096;
    const double w = two_pi * 32.0 / static_cast<double>(n);
    std::vector<double> tone(n);
    for (std::size_t j = 0; j < n; ++j) tone[j] = std::cos(w * static_cast<double>(j));
    const auto ph = instantaneous_phase(tone);
    double phase_err = 0.0;
    for (std::size_t j = ph.interior_begin; j < ph.interior_end; ++j) {
        const double expect = w * static_cast<double>(j - ph.interior_begin);
        phase_err = std::max(phase_err,
                             std::abs((ph.phase[j] - ph.phase[ph.interior_begin]) - expect));
    }
    const bool phase_ok = phase_err < 1e-6;

    // (c) applying the transform twice negates a zero-mean signal.
    std::vector<double> comp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n);
        comp[j] = std::cos(two_pi * 32.0 * t) + 0.4 * std::sin(two_pi * 81.0 * t);
    }
    const auto hh = hilbert_dft(hilbert_dft(comp));
    const auto lo = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
    double invol_err = 0.0;
    for (std::size_t j = lo; j < n - lo; ++j)
        invol_err = std::max(invol_err, std::abs(hh[j] + comp[j]));
    const bool invol_ok = invol_err < 1e-6;

    // (d) the two exponent estimators agree on the chaotic presets.
    auto rel_gap = [](double a, double b) { return std::abs(a - b) / std::abs(a); };
    const double gap_3b = rel_gap(wolf_fig3b, benettin_fig3b);
    const double gap_5b = rel_gap(wolf_fig5b, benettin_fig5b);
    const double gap_9 = rel_gap(wolf_fig9, benettin_fig9);
    const bool cross_ok = gap_3b < 0.1 && gap_5b < 0.1 && gap_9 < 0.1;

    // (e) the standard chaotic oracle.
    auto lorenz = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = 10.0 * (y[1] - y[0]);
        dy[1] = y[0] * (28.0 - y[2]) - y[1];
        dy[2] = y[0] * y[1] - 8.0 / 3.0 * y[2];
    };
    lle_options lor;
    lor.renorm_interval = 0.5;
    lor.t_total = 300.0;
    lor.discard = 20.0;
    const std::vector<double> lic{1.0, 1.0, 1.0};
    const auto lw = lle_wolf(lorenz, lic, lor);
    const auto lb = lle_benettin(lorenz, lic, lor);
    const bool lorenz_ok = std::abs(lw.lle - 0.906) < 0.05 && std::abs(lb.lle - 0.906) < 0.05;

    // (f) a linearly damped cavity contracts at half its linewidth.
    lle_options lin;
    lin.renorm_interval = 0.5;
    lin.t_total = 200.0;
    lin.discard = 10.0;
    const std::vector<double> cic{1.0, 0.0};
    const auto damped = lle_wolf(cavity_oracle{0.5, 1.5, 0.3}, cic, lin);
    const bool damped_ok = std::abs(damped.lle - (-0.75)) < 0.05 * 0.75;

    const double elapsed = seconds_since(suite_start);
    const bool time_ok = elapsed < 600.0;

    criterion c;
    c.pass = order_ok && phase_ok && invol_ok && cross_ok && lorenz_ok && damped_ok && time_ok;
    c.detail = fmt("order=%.2f/%.2f (need 3.8..4.2); tone phase err=%.1e (<1e-6); double-transform"
                   " err=%.1e (<1e-6); estimator gaps=%.4f/%.4f/%.4f (<0.1); standard oracle"
                   " %.4f/%.4f (0.906+-0.05); damped cavity %.4f (-0.75+-5%%); suite %.0f s (<600)",
                   order_a, order_b, phase_err, invol_err, gap_3b, gap_5b, gap_9, lw.lle, lb.lle,
                   damped.lle, elapsed);
    return c;
}

// ---- criterion 8: operating-regime inequalities ----------------------------

criterion check_regime(const scenario_report& pair_a, const scenario_report& pair_b,
                       const scenario_report& far_drive) {
    criterion c;
    if (!pair_a.regime.has_value() || !pair_b.regime.has_value() ||
        !far_drive.regime.has_value()) {
        c.detail = "regime report missing";
        return c;
    }
    const auto& ra = *pair_a.regime;
    const auto& rb = *pair_b.regime;
    const auto& rf = *far_drive.regime;
    const bool pairs_ok = ra.satisfied && rb.satisfied;
    const bool violation_ok = !rf.weak_satisfied;
    c.pass = pairs_ok && violation_ok;
    c.detail = fmt("shared-resonator pair ratios %.0f/%.0f/%.0f/%.0f, spring pair"
                   " %.0f/%.0f/%.0f/%.0f (need all > 10); ratio-100 point weak side"
                   " %.1f/%.1f -> %s (need a violation)",
                   ra.ratio_delta_strong, ra.ratio_gamma_strong, ra.ratio_delta_weak,
                   ra.ratio_gamma_weak, rb.ratio_delta_strong, rb.ratio_gamma_strong,
                   rb.ratio_delta_weak, rb.ratio_gamma_weak, rf.ratio_delta_weak,
                   rf.ratio_gamma_weak, rf.weak_satisfied ? "satisfied" : "violated");
    return c;
}

} // namespace

int main() {
    const auto suite_start = clock_type::now();
    criterion results[8];

    // Criterion 1: classification of the two shared-resonator baselines.
    auto t0 = clock_type::now();
    const auto rep_regular = run_scenario(preset("fig3a"));
    const double t_regular = seconds_since(t0);
    t0 = clock_type::now();
    const auto rep_chaotic = run_scenario(preset("fig3b"));
    const double t_chaotic = seconds_since(t0);
    if (rep_regular.lle.has_value() && rep_chaotic.lle.has_value()) {
        results[0] = check_classification(*rep_regular.lle, t_regular, *rep_chaotic.lle, t_chaotic);
    } else {
        results[0].detail = "exponent estimation failed on a baseline preset";
    }

    // Criterion 2: complete synchronization across the coupling family.
    {
        const auto base = preset("fig4_g1");
        const auto swept = sweep(base, "g_weak",
                                 {angular_rate_from_ghz(0.063), angular_rate_from_ghz(0.126),
                                  angular_rate_from_ghz(0.252)});
        results[1] = check_complete_sync(swept);
    }

    // Criterion 3: weak couplings of a few percent of the linewidth keep the
    // weak modes regular (their conditional exponent stays non-positive).
    {
        auto base = preset("fig3b");
        base.lle.perturb_channels = {2, 3}; // offset only the first weak mode...
        base.lle.measure_channels = {2, 3}; // ...and watch only its separation
        const double gamma_1 = base.params.cav[1].gamma;
        const auto swept = sweep(base, "g_weak", {0.02 * gamma_1, 0.04 * gamma_1});
        results[2] = check_weak_coupling_regular(swept, gamma_1);
    }

    // Criterion 4: spring-rate dependence of the chain's sync verdict.
    {
        const auto base = preset("fig6_k1e-4");
        const double gamma_1 = base.params.cav[1].gamma;
        const auto swept = sweep(base, "k", {1e-4 * gamma_1, 1e-2 * gamma_1, gamma_1});
        results[3] = check_spring_rate_dependence(swept, gamma_1);
    }

    // Criteria 5 and 8 share the drive-ratio runs.
    scenario_report rep_far, rep_unity;
    {
        const auto base = preset("fig8a");
        const double g_s = base.params.cav[0].g;
        const auto swept = sweep(base, "g_w", {0.01 * g_s, g_s});
        rep_far = swept.reports[0];
        rep_unity = swept.reports[1];
        results[4] = check_drive_ratio_locking(rep_far, rep_unity);
    }

    // Criterion 6: spring-rate locking progression.
    {
        const auto base = preset("fig10a");
        const double gamma_s = base.params.cav[0].gamma;
        const auto swept = sweep(base, "k1", {1e-3 * gamma_s, 1e-2 * gamma_s, 1e3 * gamma_s});
        results[5] = check_spring_locking(swept);
    }

    // Criterion 8 needs both chaotic strong/weak pairs.
    const auto rep_pair_a = run_scenario(preset("fig7"));
    const auto rep_pair_b = run_scenario(preset("fig9"));
    results[7] = check_regime(rep_pair_a, rep_pair_b, rep_far);

    // Criterion 7: numerical oracles, reusing the exponents measured above.
    {
        const auto c5b = preset("fig5b");
        const auto wolf_5b = lle_wolf(c5b.params, c5b.ics, c5b.lle);
        const auto ben_5b = lle_benettin(c5b.params, c5b.ics, c5b.lle);
        const auto c3b = preset("fig3b");
        const auto ben_3b = lle_benettin(c3b.params, c3b.ics, c3b.lle);
        const auto c9 = preset("fig9");
        const auto ben_9 = lle_benettin(c9.params, c9.ics, c9.lle);
        const double wolf_3b = rep_chaotic.lle ? rep_chaotic.lle->lle : 0.0;
        const double wolf_9 = rep_pair_b.lle ? rep_pair_b.lle->lle : 0.0;
        results[6] = check_oracles(wolf_3b, wolf_5b.lle, wolf_9, ben_3b.lle, ben_5b.lle, ben_9.lle,
                                   suite_start);
    }

    static const char* const titles[8] = {
        "exponent classification of the regular and chaotic baselines",
        "complete synchronization of the weak pair across couplings",
        "sub-threshold couplings keep the weak modes regular",
        "spring-rate dependence of the chain sync verdict",
        "drive-ratio phase-lock progression",
        "spring-rate phase-lock progression",
        "numerical oracles (order, transform, estimators, runtime)",
        "operating-regime inequalities",
    };

    int failures = 0;
    for (int i = 0; i < 8; ++i) {
        if (!results[i].pass) ++failures;
        std::printf("%s criterion %d: %s -- %s\n", results[i].pass ? "PASS" : "FAIL", i + 1,
                    titles[i], results[i].detail.c_str());
    }
    std::printf("acceptance: %d of 8 criteria passed in %.0f s\n", 8 - failures,
                seconds_since(suite_start));
    return failures == 0 ? 0 : 1;
}
