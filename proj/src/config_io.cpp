#include "omsync/config_io.hpp"

#include <cmath>
#include <cstddef>

#include <json.hpp>

#include "omsync/errors.hpp"
#include "omsync/units.hpp"

namespace omsync {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end())
        fail(errc::validation_error, "missing field '" + path + "'");
    return *it;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number())
        fail(errc::validation_error, "field '" + path + "' must be a number");
    return v.get<double>();
}

// Rates arrive as Hz numbers or "value unit" strings.
double rate_at(const json& v, const std::string& path) {
    if (v.is_number()) return angular_rate_from_hz(v.get<double>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(s, &pos);
        } catch (const std::exception&) {
            fail(errc::validation_error, "field '" + path + "': cannot parse '" + s + "'");
        }
        while (pos < s.size() && s[pos] == ' ') ++pos;
        const std::string unit = s.substr(pos);
        double mult = 0.0;
        if (unit == "Hz") mult = 1.0;
        else if (unit == "kHz") mult = 1e3;
        else if (unit == "MHz") mult = 1e6;
        else if (unit == "GHz") mult = 1e9;
        else
            fail(errc::validation_error,
                 "field '" + path + "': unknown unit '" + unit + "' (use Hz, kHz, MHz, GHz)");
        return angular_rate_from_hz(value * mult);
    }
    fail(errc::validation_error,
         "field '" + path + "' must be a number in Hz or a \"value unit\" string");
}

double hz(double angular) { return hz_from_angular_rate(angular); }

std::vector<std::size_t> channels_at(const json& arr, setup_kind setup, const std::string& path) {
    if (!arr.is_array()) fail(errc::validation_error, "field '" + path + "' must be an array");
    std::vector<std::size_t> out;
    for (const auto& entry : arr) {
        if (!entry.is_string())
            fail(errc::validation_error, "field '" + path + "' must hold channel names");
        out.push_back(static_cast<std::size_t>(channel_index(setup, entry.get<std::string>())));
    }
    return out;
}

json channel_names_json(const std::vector<std::size_t>& channels, setup_kind setup) {
    const auto& names = channel_names(setup);
    json arr = json::array();
    for (std::size_t c : channels) arr.push_back(names.at(c));
    return arr;
}

json config_to_json(const scenario_config& c) {
    json cavities = json::array();
    for (int i = 0; i < c.params.n_cavities(); ++i) {
        const auto& cav = c.params.cav[static_cast<std::size_t>(i)];
        cavities.push_back({{"delta_hz", hz(cav.delta)},
                            {"gamma_hz", hz(cav.gamma)},
                            {"g_hz", hz(cav.g)},
                            {"eps_hz", hz(cav.eps)}});
    }
    json resonators = json::array();
    for (int i = 0; i < c.params.n_resonators(); ++i) {
        const auto& m = c.params.mech[static_cast<std::size_t>(i)];
        resonators.push_back({{"omega_hz", hz(m.omega)}, {"big_gamma_hz", hz(m.big_gamma)}});
    }

    json j;
    j["name"] = c.name;
    j["title"] = c.title;
    j["setup"] = setup_name(c.params.setup);
    j["params"] = {{"cavities", cavities},
                   {"resonators", resonators},
                   {"k1_hz", hz(c.params.k1)},
                   {"k2_hz", hz(c.params.k2)},
                   {"zpf_ratio", c.params.zpf_ratio},
                   {"include_weak_backaction", c.params.include_weak_backaction}};
    j["initial_state"] = c.ics;
    j["plan"] = {{"t0_ns", c.plan.t0},
                 {"t1_ns", c.plan.t1},
                 {"dt_ns", c.plan.dt},
                 {"sample_stride", c.plan.sample_stride},
                 {"discard_ns", c.plan.discard},
                 {"method", c.plan.method == integration_plan::rk4 ? "rk4" : "rkf45"},
                 {"abs_tol", c.plan.abs_tol},
                 {"rel_tol", c.plan.rel_tol}};
    j["analyses"] = c.analyses;
    j["lle"] = {{"d0_rel", c.lle.d0_rel},
                {"renorm_interval_ns", c.lle.renorm_interval},
                {"t_total_ns", c.lle.t_total},
                {"discard_ns", c.lle.discard},
                {"dt_ns", c.lle.dt},
                {"n_blocks", c.lle.n_blocks},
                {"perturb_channels", channel_names_json(c.lle.perturb_channels, c.params.setup)},
                {"measure_channels", channel_names_json(c.lle.measure_channels, c.params.setup)}};
    j["sync"] = {{"amp_tol", c.sync.amp_tol},
                 {"phase_tol", c.sync.phase_tol},
                 {"window_fraction", c.sync.window_fraction},
                 {"gap_floor", c.sync.gap_floor}};
    j["lock"] = {{"target", c.lock.target},
                 {"tol", c.lock.tol},
                 {"band_tol", c.lock.band_tol},
                 {"window_fraction", c.lock.window_fraction},
                 {"ratio_floor", c.lock.ratio_floor}};
    json out_ch = json::array();
    for (const auto& ch : c.output_channels) out_ch.push_back(ch);
    j["output_channels"] = out_ch;
    return j;
}

scenario_config config_from_json(const json& j) {
    scenario_config c;
    c.name = j.value("name", std::string("custom"));
    c.title = j.value("title", std::string());
    c.params.setup = setup_from_name(require(j, "setup", "setup").get<std::string>());

    const json& params = require(j, "params", "params");
    const json& cavities = require(params, "cavities", "params.cavities");
    if (!cavities.is_array() || cavities.size() != static_cast<std::size_t>(c.params.n_cavities()))
        fail(errc::validation_error, "params.cavities must list " +
                                         std::to_string(c.params.n_cavities()) +
                                         " cavities for this setup");
    for (std::size_t i = 0; i < cavities.size(); ++i) {
        const std::string base = "params.cavities[" + std::to_string(i) + "].";
        auto& cav = c.params.cav[i];
        cav.delta = rate_at(require(cavities[i], "delta_hz", base + "delta_hz"), base + "delta_hz");
        cav.gamma = rate_at(require(cavities[i], "gamma_hz", base + "gamma_hz"), base + "gamma_hz");
        cav.g = rate_at(require(cavities[i], "g_hz", base + "g_hz"), base + "g_hz");
        cav.eps = rate_at(require(cavities[i], "eps_hz", base + "eps_hz"), base + "eps_hz");
    }
    const json& resonators = require(params, "resonators", "params.resonators");
    if (!resonators.is_array() ||
        resonators.size() != static_cast<std::size_t>(c.params.n_resonators()))
        fail(errc::validation_error, "params.resonators must list " +
                                         std::to_string(c.params.n_resonators()) +
                                         " resonators for this setup");
    for (std::size_t i = 0; i < resonators.size(); ++i) {
        const std::string base = "params.resonators[" + std::to_string(i) + "].";
        auto& m = c.params.mech[i];
        m.omega = rate_at(require(resonators[i], "omega_hz", base + "omega_hz"), base + "omega_hz");
        m.big_gamma = rate_at(require(resonators[i], "big_gamma_hz", base + "big_gamma_hz"),
                              base + "big_gamma_hz");
    }
    if (params.contains("k1_hz")) c.params.k1 = rate_at(params["k1_hz"], "params.k1_hz");
    if (params.contains("k2_hz")) c.params.k2 = rate_at(params["k2_hz"], "params.k2_hz");
    c.params.zpf_ratio = params.value("zpf_ratio", 1.0);
    c.params.include_weak_backaction = params.value("include_weak_backaction", false);

    const auto dim = static_cast<std::size_t>(c.params.dim());
    if (j.contains("initial_state")) {
        const json& ics = j["initial_state"];
        if (!ics.is_array() || ics.size() != dim)
            fail(errc::validation_error,
                 "initial_state must hold " + std::to_string(dim) + " numbers");
        c.ics.clear();
        for (const auto& v : ics) c.ics.push_back(number_at(v, "initial_state"));
    } else {
        c.ics.assign(dim, 0.0);
    }

    if (j.contains("plan")) {
        const json& plan = j["plan"];
        c.plan.t0 = plan.value("t0_ns", 0.0);
        c.plan.t1 = number_at(require(plan, "t1_ns", "plan.t1_ns"), "plan.t1_ns");
        c.plan.dt = plan.value("dt_ns", 1e-3);
        c.plan.sample_stride = plan.value("sample_stride", 1);
        c.plan.discard = plan.value("discard_ns", 0.0);
        const std::string method = plan.value("method", std::string("rk4"));
        if (method == "rk4") c.plan.method = integration_plan::rk4;
        else if (method == "rkf45") c.plan.method = integration_plan::rkf45;
        else fail(errc::validation_error, "plan.method must be rk4 or rkf45");
        c.plan.abs_tol = plan.value("abs_tol", 1e-10);
        c.plan.rel_tol = plan.value("rel_tol", 1e-10);
    } else {
        fail(errc::validation_error, "missing field 'plan'");
    }

    if (j.contains("analyses")) {
        c.analyses.clear();
        for (const auto& a : j["analyses"]) c.analyses.push_back(a.get<std::string>());
    } else {
        c.analyses = {"lle"};
    }

    if (j.contains("lle")) {
        const json& l = j["lle"];
        c.lle.d0_rel = l.value("d0_rel", c.lle.d0_rel);
        c.lle.renorm_interval = l.value("renorm_interval_ns", c.lle.renorm_interval);
        c.lle.t_total = l.value("t_total_ns", c.lle.t_total);
        c.lle.discard = l.value("discard_ns", c.lle.discard);
        c.lle.dt = l.value("dt_ns", c.lle.dt);
        c.lle.n_blocks = l.value("n_blocks", c.lle.n_blocks);
        if (l.contains("perturb_channels"))
            c.lle.perturb_channels =
                channels_at(l["perturb_channels"], c.params.setup, "lle.perturb_channels");
        if (l.contains("measure_channels"))
            c.lle.measure_channels =
                channels_at(l["measure_channels"], c.params.setup, "lle.measure_channels");
    }
    if (j.contains("sync")) {
        const json& s = j["sync"];
        c.sync.amp_tol = s.value("amp_tol", c.sync.amp_tol);
        c.sync.phase_tol = s.value("phase_tol", c.sync.phase_tol);
        c.sync.window_fraction = s.value("window_fraction", c.sync.window_fraction);
        c.sync.gap_floor = s.value("gap_floor", c.sync.gap_floor);
    }
    if (j.contains("lock")) {
        const json& l = j["lock"];
        c.lock.target = l.value("target", c.lock.target);
        c.lock.tol = l.value("tol", c.lock.tol);
        c.lock.band_tol = l.value("band_tol", c.lock.band_tol);
        c.lock.window_fraction = l.value("window_fraction", c.lock.window_fraction);
        c.lock.ratio_floor = l.value("ratio_floor", c.lock.ratio_floor);
    }
    if (j.contains("output_channels")) {
        c.output_channels.clear();
        for (const auto& ch : j["output_channels"]) c.output_channels.push_back(ch.get<std::string>());
    }

    validate(c);
    return c;
}

json estimate_to_json(const lle_estimate& est) {
    return {{"lle_per_ns", est.lle},
            {"std_error", est.std_error},
            {"n_renormalizations", est.n_renormalizations},
            {"method", est.method == lle_estimate::wolf ? "wolf" : "benettin"}};
}

json sync_to_json(const sync_verdict& v) {
    json j{{"synchronized", v.synchronized},
           {"settled", v.settled},
           {"terminal_amp_error", v.terminal_amp_error},
           {"terminal_phase_error", v.terminal_phase_error},
           {"amp_norm", v.amp_norm},
           {"amp_tol", v.opts.amp_tol},
           {"phase_tol", v.opts.phase_tol},
           {"window_fraction", v.opts.window_fraction}};
    if (v.settled) j["settle_time_ns"] = v.settle_time;
    else j["settle_time_ns"] = nullptr;
    return j;
}

json lock_to_json(const lock_verdict& v) {
    return {{"locked", v.locked},
            {"ratio_mean", v.ratio_mean},
            {"ratio_band_width", v.ratio_band_width},
            {"deviation", v.deviation},
            {"target", v.target},
            {"tol", v.opts.tol},
            {"band_tol", v.opts.band_tol}};
}

json regime_to_json(const regime_report& r) {
    return {{"threshold", r.threshold},
            {"u_bar_strong", r.u_bar_strong},
            {"u_bar_weak", r.u_bar_weak},
            {"g_ubar_strong", r.g_ubar_strong},
            {"g_ubar_weak", r.g_ubar_weak},
            {"ratio_delta_strong", r.ratio_delta_strong},
            {"ratio_gamma_strong", r.ratio_gamma_strong},
            {"ratio_delta_weak", r.ratio_delta_weak},
            {"ratio_gamma_weak", r.ratio_gamma_weak},
            {"strong_satisfied", r.strong_satisfied},
            {"weak_satisfied", r.weak_satisfied},
            {"satisfied", r.satisfied}};
}

json report_to_json(const scenario_report& rep, const std::string& timestamp) {
    json results = json::object();
    if (rep.lle) results["lle"] = estimate_to_json(*rep.lle);
    if (rep.sync) results["complete_sync"] = sync_to_json(*rep.sync);
    if (rep.lock) results["phase_lock"] = lock_to_json(*rep.lock);
    if (rep.regime) results["regime"] = regime_to_json(*rep.regime);

    json j;
    j["config"] = config_to_json(rep.config);
    j["results"] = results;
    j["errors"] = rep.errors;
    j["manifest"] = {{"generated_at", timestamp}, {"outputs", rep.outputs}};
    return j;
}

} // namespace

scenario_config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(errc::syntax_error, e.what()); // carries the byte position
    }
    if (!j.is_object()) fail(errc::syntax_error, "config document must be a JSON object");
    return config_from_json(j);
}

std::string serialize_config(const scenario_config& config) {
    return config_to_json(config).dump(2) + "\n";
}

std::string serialize_report(const scenario_report& rep, const std::string& timestamp) {
    return report_to_json(rep, timestamp).dump(2) + "\n";
}

std::string serialize_sweep_report(const sweep_report& rep, const std::string& timestamp) {
    json reports = json::array();
    for (const auto& r : rep.reports) reports.push_back(report_to_json(r, timestamp));
    json j;
    j["base"] = config_to_json(rep.base);
    j["param_path"] = rep.param_path;
    j["values"] = rep.values;
    j["reports"] = reports;
    return j.dump(2) + "\n";
}

} // namespace omsync
