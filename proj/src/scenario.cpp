#include "omsync/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "omsync/errors.hpp"
#include "omsync/signal.hpp"
#include "omsync/units.hpp"

namespace omsync {

namespace {

double ghz(double f) { return angular_rate_from_ghz(f); }

// Every preset uses the same mechanical resonator(s).
constexpr double f_omega_ghz = 0.346;
constexpr double f_gamma_m_ghz = 0.0028;

scenario_config make_base(setup_kind setup) {
    scenario_config c;
    c.params.setup = setup;
    for (auto& m : c.params.mech) m = {ghz(f_omega_ghz), ghz(f_gamma_m_ghz)};
    c.plan.t0 = 0.0;
    c.plan.dt = 1e-3;
    c.plan.sample_stride = 5;
    c.ics.assign(static_cast<std::size_t>(c.params.dim()), 0.0);
    return c;
}

std::vector<std::size_t> portrait_channels(setup_kind setup) {
    std::vector<std::size_t> out;
    for (int idx : weak_portrait_channels(setup)) out.push_back(static_cast<std::size_t>(idx));
    return out;
}

// Shared-resonator triple, strong drive chaotic (the two weak modes are
// identical): the baseline the complete-sync studies build on.
scenario_config cs_a_base() {
    auto c = make_base(setup_kind::cs_a);
    c.params.cav[0] = {ghz(0.13), ghz(0.24), ghz(0.126), ghz(15.4)};   // strong
    c.params.cav[1] = {ghz(0.013), ghz(0.24), ghz(0.126), ghz(0.022)}; // weak 1
    c.params.cav[2] = c.params.cav[1];                                 // weak 2
    return c;
}

// Spring-coupled chain of three devices.
scenario_config cs_b_base() {
    auto c = make_base(setup_kind::cs_b);
    c.params.cav[0] = {ghz(0.13), ghz(0.24), ghz(0.126), ghz(15.4)};
    c.params.cav[1] = {ghz(0.026), ghz(0.24), ghz(0.0252), ghz(0.022)};
    c.params.cav[2] = c.params.cav[1];
    c.params.k1 = c.params.k2 = ghz(0.00129);
    return c;
}

// Strong/weak pair on one resonator.
scenario_config ps_a_base() {
    auto c = make_base(setup_kind::ps_a);
    c.params.cav[0] = {ghz(0.13), ghz(0.24), ghz(0.126), ghz(15.4)};
    c.params.cav[1] = {ghz(0.026), ghz(0.052), ghz(0.0252), ghz(0.22)};
    return c;
}

// Spring-coupled strong/weak devices.
scenario_config ps_b_base() {
    auto c = ps_a_base();
    c.params.setup = setup_kind::ps_b;
    c.params.k1 = ghz(0.00129);
    c.ics.assign(static_cast<std::size_t>(c.params.dim()), 0.0);
    return c;
}

void use_portrait_lle(scenario_config& c) {
    c.plan.t1 = 2500.0;
    c.plan.discard = 500.0;
    c.analyses = {"lle"};
    c.lle.measure_channels = portrait_channels(c.params.setup);
}

void use_sync_run(scenario_config& c) {
    c.plan.t1 = 2000.0;
    c.plan.discard = 0.0;
    c.analyses = {"complete-sync"};
}

void use_phase_run(scenario_config& c) {
    c.plan.t1 = 5000.0;
    c.plan.discard = 0.0;
}

scenario_config preset_fig4(double g_ghz, const char* name, const char* title) {
    auto c = cs_a_base();
    c.name = name;
    c.title = title;
    c.params.cav[1].g = c.params.cav[2].g = ghz(g_ghz);
    c.ics[2] = 0.1; // alpha_1(0) = 0.1 + 0.1i
    c.ics[3] = 0.1;
    c.ics[5] = 0.1; // alpha_2(0) = 0.1i
    use_sync_run(c);
    return c;
}

scenario_config preset_fig6(double k_over_gamma, const char* name, const char* title) {
    auto c = cs_b_base();
    c.name = name;
    c.title = title;
    c.params.k1 = c.params.k2 = k_over_gamma * c.params.cav[1].gamma;
    c.ics[5] = 0.01; // alpha_1(0) = 0.01i
    c.ics[8] = 0.01; // alpha_2(0) = 0.01 + 0.01i
    c.ics[9] = 0.01;
    use_sync_run(c);
    return c;
}

scenario_config preset_fig8(double gw_ghz, const char* name, const char* title) {
    auto c = ps_a_base();
    c.name = name;
    c.title = title;
    c.params.cav[1].eps = ghz(1.1);
    c.params.cav[1].g = ghz(gw_ghz);
    use_phase_run(c);
    c.analyses = {"phase-lock", "regime-report"};
    return c;
}

scenario_config preset_fig10(double k_over_gamma_s, const char* name, const char* title) {
    auto c = ps_b_base();
    c.name = name;
    c.title = title;
    c.params.cav[1].g = c.params.cav[0].g; // equal couplings: target ratio 1
    c.params.k1 = k_over_gamma_s * c.params.cav[0].gamma;
    use_phase_run(c);
    c.analyses = {"phase-lock"};
    return c;
}

struct preset_row {
    const char* name;
    const char* title;
};

constexpr preset_row preset_table[] = {
    {"fig3a", "weak pair on a shared resonator, strong drive off: regular orbits, negative exponent"},
    {"fig3b", "weak pair driven chaotic through the shared resonator: positive exponent"},
    {"fig4_g1", "complete-sync verdict for the weak pair at g/2pi = 63 MHz"},
    {"fig4_g2", "complete-sync verdict for the weak pair at g/2pi = 126 MHz"},
    {"fig4_g3", "complete-sync verdict for the weak pair at g/2pi = 252 MHz"},
    {"fig5a", "spring-coupled chain with springs off: isolated weak branches, negative exponent"},
    {"fig5b", "spring-coupled chain at k/2pi = 1.29 MHz: chaos reaches the weak branches"},
    {"fig6_k1e-4", "complete-sync verdict for the spring chain at k = 1e-4 * gamma_1"},
    {"fig6_k1e-2", "complete-sync verdict for the spring chain at k = 1e-2 * gamma_1"},
    {"fig6_k1", "complete-sync verdict for the spring chain at k = gamma_1"},
    {"fig7", "chaotic strong/weak pair on one resonator, exponent plus regime report"},
    {"fig8a", "phase-lock verdict at drive-coupling ratio 100 (weak side outside the regime)"},
    {"fig8b", "phase-lock verdict at drive-coupling ratio 10"},
    {"fig8c", "phase-lock verdict at drive-coupling ratio 1"},
    {"fig9", "chaotic spring-coupled strong/weak devices, exponent plus regime report"},
    {"fig10a", "phase-lock verdict for spring-coupled devices at k = 1e-3 * gamma_s"},
    {"fig10b", "phase-lock verdict for spring-coupled devices at k = 1e-2 * gamma_s"},
    {"fig10c", "phase-lock verdict for spring-coupled devices at k = 1e3 * gamma_s"},
};

const char* find_title(const std::string& name) {
    for (const auto& row : preset_table)
        if (name == row.name) return row.title;
    fail(errc::unknown_preset, "no preset named '" + name + "'");
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& row : preset_table) out.emplace_back(row.name);
    return out;
}

std::string preset_title(const std::string& name) { return find_title(name); }

scenario_config preset(const std::string& name) {
    const char* title = find_title(name);

    if (name == "fig3a" || name == "fig3b") {
        auto c = cs_a_base();
        c.name = name;
        c.title = title;
        if (name == "fig3a") {
            c.params.cav[0].eps = 0.0; // strong drive disconnected
            c.params.cav[0].g = 0.0;
        }
        use_portrait_lle(c);
        return c;
    }
    if (name == "fig4_g1") return preset_fig4(0.063, "fig4_g1", title);
    if (name == "fig4_g2") return preset_fig4(0.126, "fig4_g2", title);
    if (name == "fig4_g3") return preset_fig4(0.252, "fig4_g3", title);
    if (name == "fig5a" || name == "fig5b") {
        auto c = cs_b_base();
        c.name = name;
        c.title = title;
        use_portrait_lle(c);
        if (name == "fig5a") {
            c.params.k1 = c.params.k2 = 0.0;
            // With the springs off the weak branches are autonomous; perturb
            // them directly so the exponent is theirs, not the strong mode's.
            c.lle.perturb_channels = c.lle.measure_channels;
        }
        return c;
    }
    if (name == "fig6_k1e-4") return preset_fig6(1e-4, "fig6_k1e-4", title);
    if (name == "fig6_k1e-2") return preset_fig6(1e-2, "fig6_k1e-2", title);
    if (name == "fig6_k1") return preset_fig6(1.0, "fig6_k1", title);
    if (name == "fig7" || name == "fig9") {
        auto c = (name == "fig7") ? ps_a_base() : ps_b_base();
        c.name = name;
        c.title = title;
        use_phase_run(c);
        c.analyses = {"lle", "regime-report"};
        c.lle.measure_channels = portrait_channels(c.params.setup);
        return c;
    }
    if (name == "fig8a") return preset_fig8(0.00126, "fig8a", title);
    if (name == "fig8b") return preset_fig8(0.0126, "fig8b", title);
    if (name == "fig8c") return preset_fig8(0.126, "fig8c", title);
    if (name == "fig10a") return preset_fig10(1e-3, "fig10a", title);
    if (name == "fig10b") return preset_fig10(1e-2, "fig10b", title);
    if (name == "fig10c") return preset_fig10(1e3, "fig10c", title);

    fail(errc::unknown_preset, "no preset named '" + name + "'");
}

void validate(const scenario_config& config) {
    validate(config.params);
    validate(config.plan);
    if (config.ics.size() != static_cast<std::size_t>(config.params.dim()))
        fail(errc::layout_mismatch, "initial state size " + std::to_string(config.ics.size()) +
                                        " vs layout dimension " +
                                        std::to_string(config.params.dim()));
    if (config.analyses.empty())
        fail(errc::validation_error, "analysis list must not be empty");
    for (const auto& a : config.analyses)
        if (a != "lle" && a != "complete-sync" && a != "phase-lock" && a != "regime-report")
            fail(errc::validation_error, "unknown analysis '" + a + "'");
    for (const auto& ch : config.output_channels)
        channel_index(config.params.setup, ch); // throws unknown_channel
}

namespace {

void run_lle(const scenario_config& config, scenario_report& rep) {
    rep.lle = lle_wolf(config.params, config.ics, config.lle);
}

void run_complete_sync(const scenario_config& config, const trajectory& traj,
                       scenario_report& rep) {
    const auto amp_err = amplitude_error(traj, 1, 2);
    const auto phase_err = cos_phase_error(traj, 1, 2, config.sync.gap_floor);
    const auto [r1, i1] = cavity_channels(config.params.setup, "alpha_1");
    std::vector<double> amp_ref(traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const auto y = traj.state(n);
        amp_ref[n] = std::hypot(y[static_cast<std::size_t>(r1)], y[static_cast<std::size_t>(i1)]);
    }
    rep.sync = detect_complete_sync(traj.times, amp_err, phase_err, amp_ref, config.sync);
}

void run_phase_lock(const scenario_config& config, const trajectory& traj, scenario_report& rep) {
    const auto re_s = traj.channel("re_alpha_s");
    const auto re_w = traj.channel("re_alpha_w");
    const auto ph_s = instantaneous_phase(re_s);
    const auto ph_w = instantaneous_phase(re_w);
    const std::size_t lo = std::max(ph_s.interior_begin, ph_w.interior_begin);
    const std::size_t hi = std::min(ph_s.interior_end, ph_w.interior_end);
    if (hi <= lo) fail(errc::window_too_short, "no interior overlap between the phase series");
    const std::span<const double> psi_s(ph_s.phase.data() + lo, hi - lo);
    const std::span<const double> psi_w(ph_w.phase.data() + lo, hi - lo);
    const auto ratio = phase_ratio(psi_s, psi_w, config.lock.ratio_floor);
    const double target = (config.lock.target > 0.0)
                              ? config.lock.target
                              : config.params.cav[0].g / config.params.cav[1].g;
    rep.lock = detect_phase_lock(ratio, target, config.lock);
}

} // namespace

scenario_report run_scenario(const scenario_config& config, trajectory* out_traj) {
    validate(config);
    scenario_report rep;
    rep.config = config;

    trajectory traj;
    try {
        traj = integrate(config.params, config.ics, config.plan);
    } catch (const std::exception& e) {
        rep.errors.push_back(std::string("integrate: ") + e.what());
        for (const auto& a : config.analyses)
            rep.errors.push_back(a + ": skipped after integration failure");
        return rep;
    }
    if (out_traj) *out_traj = traj;

    for (const auto& a : config.analyses) {
        try {
            if (a == "lle")
                run_lle(config, rep);
            else if (a == "complete-sync")
                run_complete_sync(config, traj, rep);
            else if (a == "phase-lock")
                run_phase_lock(config, traj, rep);
            else if (a == "regime-report")
                rep.regime = validate_regime(config.params, traj);
        } catch (const std::exception& e) {
            rep.errors.push_back(a + ": " + e.what());
        }
    }
    return rep;
}

void set_param(scenario_config& config, const std::string& param_path, double value) {
    auto& p = config.params;
    auto cavity_field = [&](int idx, const std::string& field) -> double* {
        auto& c = p.cav[static_cast<std::size_t>(idx)];
        if (field == "delta") return &c.delta;
        if (field == "gamma") return &c.gamma;
        if (field == "g") return &c.g;
        if (field == "eps") return &c.eps;
        return nullptr;
    };

    // Combined paths first.
    if (param_path == "k") {
        p.k1 = p.k2 = value;
        return;
    }
    if (param_path == "g_weak") { // every weakly driven mode at once
        p.cav[1].g = value;
        if (p.n_cavities() == 3) p.cav[2].g = value;
        return;
    }
    if (param_path == "omega") {
        for (int i = 0; i < p.n_resonators(); ++i) p.mech[static_cast<std::size_t>(i)].omega = value;
        return;
    }
    if (param_path == "big_gamma") {
        for (int i = 0; i < p.n_resonators(); ++i)
            p.mech[static_cast<std::size_t>(i)].big_gamma = value;
        return;
    }
    if (param_path == "k1") { p.k1 = value; return; }
    if (param_path == "k2") { p.k2 = value; return; }
    if (param_path == "zpf_ratio") { p.zpf_ratio = value; return; }
    if (param_path == "dt") { config.plan.dt = value; return; }
    if (param_path == "t1") { config.plan.t1 = value; return; }
    if (param_path == "discard") { config.plan.discard = value; return; }

    const auto sep = param_path.rfind('_');
    if (sep != std::string::npos && sep + 1 < param_path.size()) {
        const std::string field = param_path.substr(0, sep);
        const std::string tag = param_path.substr(sep + 1);
        int idx = -1;
        if (tag == "s") idx = 0;
        else if (tag == "1" || tag == "w") idx = 1;
        else if (tag == "2") idx = 2;
        if (idx >= 0 && idx < p.n_cavities()) {
            if (double* slot = cavity_field(idx, field)) {
                *slot = value;
                return;
            }
        }
    }
    fail(errc::bad_path, "no sweepable parameter at path '" + param_path + "'");
}

sweep_report sweep(const scenario_config& base, const std::string& param_path,
                   const std::vector<double>& values, unsigned n_workers) {
    if (values.empty()) fail(errc::validation_error, "sweep needs at least one value");
    {
        // Resolve the path up front so a bad path fails before any run starts.
        scenario_config probe = base;
        set_param(probe, param_path, values.front());
    }

    sweep_report rep;
    rep.base = base;
    rep.param_path = param_path;
    rep.values = values;
    rep.reports.resize(values.size());

    unsigned workers = n_workers ? n_workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min(workers, static_cast<unsigned>(values.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) break;
            scenario_config c = base;
            set_param(c, param_path, values[i]);
            try {
                rep.reports[i] = run_scenario(c);
            } catch (const std::exception& e) {
                rep.reports[i].config = c;
                rep.reports[i].errors.push_back(std::string("run: ") + e.what());
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rep;
}

} // namespace omsync
