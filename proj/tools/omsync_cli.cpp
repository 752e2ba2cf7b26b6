// Command-line front end: run presets or config files, sweep parameters,
// estimate exponents, and write reports, CSV trajectories, and SVG plots.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omsync/config_io.hpp"
#include "omsync/csv.hpp"
#include "omsync/errors.hpp"
#include "omsync/scenario.hpp"
#include "omsync/signal.hpp"
#include "omsync/svg.hpp"

namespace {

using namespace omsync;

// Usage/config problems exit 2, anything that breaks during analysis exits 1.
int exit_code_for(errc code) {
    switch (code) {
    case errc::syntax_error:
    case errc::validation_error:
    case errc::unknown_preset:
    case errc::unknown_channel:
    case errc::bad_path:
    case errc::bad_plan:
    case errc::layout_mismatch:
    case errc::non_positive_rate:
    case errc::non_positive_input:
        return 2;
    default:
        return 1;
    }
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

scenario_config load_config(const std::string& preset_name, const std::string& config_path,
                            double dt_override, double duration_override) {
    scenario_config config;
    if (!config_path.empty())
        config = parse_config(read_text_file(config_path));
    else if (!preset_name.empty())
        config = preset(preset_name);
    else
        fail(errc::validation_error, "give either --preset or --config");
    if (dt_override > 0.0) {
        config.plan.dt = dt_override;
        config.lle.dt = dt_override;
    }
    if (duration_override > 0.0) config.plan.t1 = config.plan.t0 + duration_override;
    return config;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string item =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) fail(errc::validation_error, "empty entry in --values");
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            fail(errc::validation_error, "cannot parse value '" + item + "'");
        }
        if (pos != item.size())
            fail(errc::validation_error, "cannot parse value '" + item + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void print_verdicts(const scenario_report& rep) {
    if (rep.lle)
        std::printf("lle: %.6g 1/ns (stderr %.2g, %ld renormalizations, %s)\n", rep.lle->lle,
                    rep.lle->std_error, rep.lle->n_renormalizations,
                    rep.lle->method == lle_estimate::wolf ? "wolf" : "benettin");
    if (rep.sync) {
        std::printf("complete-sync: %s (terminal amp %.3g, phase %.3g",
                    rep.sync->synchronized ? "synchronized" : "not synchronized",
                    rep.sync->terminal_amp_error, rep.sync->terminal_phase_error);
        if (rep.sync->settled)
            std::printf(", settles at %.4g ns)\n", rep.sync->settle_time);
        else
            std::printf(", never settles)\n");
    }
    if (rep.lock)
        std::printf("phase-lock: %s (ratio mean %.6g, band %.3g, target %.6g, deviation %.3g)\n",
                    rep.lock->locked ? "locked" : "not locked", rep.lock->ratio_mean,
                    rep.lock->ratio_band_width, rep.lock->target, rep.lock->deviation);
    if (rep.regime)
        std::printf("regime: %s (strong %.4g/%.4g, weak %.4g/%.4g, threshold %g)\n",
                    rep.regime->satisfied ? "satisfied" : "violated",
                    rep.regime->ratio_delta_strong, rep.regime->ratio_gamma_strong,
                    rep.regime->ratio_delta_weak, rep.regime->ratio_gamma_weak,
                    rep.regime->threshold);
    for (const auto& err : rep.errors) std::printf("error %s\n", err.c_str());
}

// Portrait of the weakly driven subsystem colored by its displacement.
void add_portrait_panel(std::vector<svg_panel>& panels, const scenario_config& config,
                        const trajectory& traj) {
    const auto setup = config.params.setup;
    const auto chans = weak_portrait_channels(setup);
    const auto& names = channel_names(setup);
    svg_series s;
    s.x = traj.channel(static_cast<std::size_t>(chans[0]));
    s.y = traj.channel(static_cast<std::size_t>(chans[1]));
    s.color_by = traj.channel(static_cast<std::size_t>(chans[2]));
    svg_panel panel;
    panel.title = "weak-mode portrait, colored by " + names[static_cast<std::size_t>(chans[2])];
    panel.x_label = names[static_cast<std::size_t>(chans[0])];
    panel.y_label = names[static_cast<std::size_t>(chans[1])];
    panel.series.push_back(std::move(s));
    panels.push_back(std::move(panel));
}

int cmd_run(const std::string& preset_name, const std::string& config_path, std::string out_dir,
            double dt_override, double duration_override) {
    auto config = load_config(preset_name, config_path, dt_override, duration_override);
    if (out_dir.empty()) out_dir = "out_" + config.name;
    std::filesystem::create_directories(out_dir);
    const auto out = [&](const std::string& leaf) { return out_dir + "/" + leaf; };

    trajectory traj;
    scenario_report rep = run_scenario(config, &traj);

    if (traj.size() > 0) {
        write_csv(traj, config.output_channels, out("trajectory.csv"));
        rep.outputs.push_back(out("trajectory.csv"));

        std::vector<svg_panel> panels;
        add_portrait_panel(panels, config, traj);
        write_text_file(out("portrait.svg"), render_svg(panels));
        rep.outputs.push_back(out("portrait.svg"));
    }

    if (rep.lle) {
        write_csv({{"t_ns", rep.lle->convergence_times}, {"lle_running", rep.lle->convergence}},
                  out("lle_convergence.csv"));
        rep.outputs.push_back(out("lle_convergence.csv"));
        svg_panel panel;
        panel.title = "largest-exponent running estimate";
        panel.x_label = "t (ns)";
        panel.y_label = "lle (1/ns)";
        panel.h_lines = {0.0};
        panel.series.push_back({"running mean", rep.lle->convergence_times,
                                rep.lle->convergence, {}});
        write_text_file(out("lle_convergence.svg"), render_svg({panel}));
        rep.outputs.push_back(out("lle_convergence.svg"));
    }

    if (rep.sync) {
        const auto amp = amplitude_error(traj, 1, 2);
        const auto phase = cos_phase_error(traj, 1, 2, config.sync.gap_floor);
        write_csv({{"t_ns", traj.times}, {"amp_error", amp}, {"cos_phase_error", phase}},
                  out("sync_errors.csv"));
        rep.outputs.push_back(out("sync_errors.csv"));
        svg_panel pa;
        pa.title = "amplitude error";
        pa.x_label = "t (ns)";
        pa.y_label = "|alpha_2| - |alpha_1|";
        pa.series.push_back({"", traj.times, amp, {}});
        svg_panel pb;
        pb.title = "phase error";
        pb.x_label = "t (ns)";
        pb.y_label = "cos th_2 - cos th_1";
        pb.series.push_back({"", traj.times, phase, {}});
        write_text_file(out("sync_errors.svg"), render_svg({pa, pb}));
        rep.outputs.push_back(out("sync_errors.svg"));
    }

    if (rep.lock) {
        const auto re_s = traj.channel("re_alpha_s");
        const auto re_w = traj.channel("re_alpha_w");
        const auto ph_s = instantaneous_phase(re_s);
        const auto ph_w = instantaneous_phase(re_w);
        const std::size_t lo = std::max(ph_s.interior_begin, ph_w.interior_begin);
        const std::size_t hi = std::min(ph_s.interior_end, ph_w.interior_end);
        std::vector<double> t(traj.times.begin() + static_cast<long>(lo),
                              traj.times.begin() + static_cast<long>(hi));
        std::vector<double> ratio(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) ratio[i - lo] = ph_s.phase[i] / ph_w.phase[i];
        write_csv({{"t_ns", t}, {"phase_ratio", ratio}}, out("phase_ratio.csv"));
        rep.outputs.push_back(out("phase_ratio.csv"));
        svg_panel panel;
        panel.title = "unwrapped-phase ratio";
        panel.x_label = "t (ns)";
        panel.y_label = "psi_s / psi_w";
        panel.h_lines = {rep.lock->target};
        panel.series.push_back({"", t, ratio, {}});
        write_text_file(out("phase_ratio.svg"), render_svg({panel}));
        rep.outputs.push_back(out("phase_ratio.svg"));
    }

    write_text_file(out("report.json"), serialize_report(rep, timestamp_utc()));
    std::printf("%s: wrote %s\n", config.name.c_str(), out("report.json").c_str());
    print_verdicts(rep);
    return rep.errors.empty() ? 0 : 1;
}

int cmd_sweep(const std::string& preset_name, const std::string& config_path,
              const std::string& param, const std::string& values_csv, std::string out_dir,
              unsigned workers) {
    auto base = load_config(preset_name, config_path, 0.0, 0.0);
    const auto values = parse_values(values_csv);
    if (out_dir.empty()) out_dir = "out_" + base.name + "_sweep";
    std::filesystem::create_directories(out_dir);

    const auto rep = sweep(base, param, values, workers);
    write_text_file(out_dir + "/sweep_report.json",
                    serialize_sweep_report(rep, timestamp_utc()));
    std::printf("sweep %s over %s: wrote %s/sweep_report.json\n", base.name.c_str(),
                param.c_str(), out_dir.c_str());
    bool any_error = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::printf("-- %s = %.6g\n", param.c_str(), values[i]);
        print_verdicts(rep.reports[i]);
        any_error = any_error || !rep.reports[i].errors.empty();
    }
    return any_error ? 1 : 0;
}

int cmd_lle(const std::string& preset_name, const std::string& config_path,
            const std::string& method) {
    auto config = load_config(preset_name, config_path, 0.0, 0.0);
    lle_estimate est;
    if (method == "wolf")
        est = lle_wolf(config.params, config.ics, config.lle);
    else if (method == "benettin")
        est = lle_benettin(config.params, config.ics, config.lle);
    else
        fail(errc::validation_error, "--method must be wolf or benettin");
    std::printf("%s lle = %.6g 1/ns (stderr %.3g, %ld renormalizations, %s)\n",
                config.name.c_str(), est.lle, est.std_error, est.n_renormalizations,
                method.c_str());
    return 0;
}

int cmd_list_presets() {
    for (const auto& name : preset_names())
        std::printf("%-11s %s\n", name.c_str(), preset_title(name).c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analysis toolkit for synchronized chaotic cavity modes"};
    app.require_subcommand(1);

    std::string preset_name, config_path, out_dir, param, values_csv, method = "wolf";
    double dt_override = 0.0, duration_override = 0.0;
    unsigned workers = 0;

    auto* run = app.add_subcommand("run", "run one scenario; write report, CSV, plots");
    run->add_option("--preset", preset_name, "preset name (see list-presets)");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--out", out_dir, "output directory (default out_<name>)");
    run->add_option("--dt", dt_override, "integration step, ns");
    run->add_option("--duration", duration_override, "simulated span, ns");

    auto* sw = app.add_subcommand("sweep", "run a scalar-parameter sweep");
    sw->add_option("--preset", preset_name, "preset name");
    sw->add_option("--config", config_path, "JSON config file");
    sw->add_option("--param", param, "parameter path (e.g. k, g_weak, eps_w)")->required();
    sw->add_option("--values", values_csv, "comma-separated values (rad/ns)")->required();
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--workers", workers, "max concurrent runs (default: hardware)");

    auto* lle = app.add_subcommand("lle", "largest-exponent estimate only");
    lle->add_option("--preset", preset_name, "preset name");
    lle->add_option("--config", config_path, "JSON config file");
    lle->add_option("--method", method, "wolf|benettin");

    auto* list = app.add_subcommand("list-presets", "enumerate preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(preset_name, config_path, out_dir, dt_override, duration_override);
        if (sw->parsed()) return cmd_sweep(preset_name, config_path, param, values_csv, out_dir, workers);
        if (lle->parsed()) return cmd_lle(preset_name, config_path, method);
        if (list->parsed()) return cmd_list_presets();
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
