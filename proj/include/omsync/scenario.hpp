#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omsync/integrate.hpp"
#include "omsync/lyapunov.hpp"
#include "omsync/params.hpp"
#include "omsync/regime.hpp"
#include "omsync/sync.hpp"

namespace omsync {

// Named experiment presets, the run pipeline (integrate, then the requested
// analyses), and a sweep harness over any scalar parameter.

struct scenario_config {
    std::string name;
    std::string title;                  // one-line description
    model_params params;
    std::vector<double> ics;            // initial state, layout order
    integration_plan plan;
    std::vector<std::string> analyses;  // of: lle, complete-sync, phase-lock, regime-report
    lle_options lle;
    sync_options sync;
    lock_options lock;                  // lock.target <= 0 derives g_s/g_w
    std::vector<std::string> output_channels;  // CSV/plot selection; empty = all
};

void validate(const scenario_config& config);

struct scenario_report {
    scenario_config config;             // echo
    std::optional<lle_estimate> lle;
    std::optional<sync_verdict> sync;
    std::optional<lock_verdict> lock;
    std::optional<regime_report> regime;
    std::vector<std::string> outputs;   // files written by the caller
    std::vector<std::string> errors;    // "<stage>: <message>" per failed analysis
};

std::vector<std::string> preset_names();

// One-line description for list output.
std::string preset_title(const std::string& name);

scenario_config preset(const std::string& name);

// Integrates the configured system and runs every requested analysis. Each
// analysis either fills its report field or appends a stage-tagged error
// record. Deterministic for a fixed config. If out_traj is non-null the
// sampled trajectory is stored there for export.
scenario_report run_scenario(const scenario_config& config, trajectory* out_traj = nullptr);

// Assigns a new value to the scalar identified by param_path. Paths: delta_s,
// gamma_s, g_s, eps_s, likewise _1/_2/_w, omega, big_gamma, k1, k2, plus the
// combined paths "k" (k1 = k2) and "g_weak" (all weak-mode g at once); plan
// fields dt, t1, discard.
void set_param(scenario_config& config, const std::string& param_path, double value);

struct sweep_report {
    scenario_config base;
    std::string param_path;
    std::vector<double> values;
    std::vector<scenario_report> reports;  // in input order
};

// Runs the base config once per value (concurrently up to n_workers),
// preserving input order in the merged report.
sweep_report sweep(const scenario_config& base, const std::string& param_path,
                   const std::vector<double>& values, unsigned n_workers = 0);

} // namespace omsync
