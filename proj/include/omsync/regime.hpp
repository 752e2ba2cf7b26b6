#pragma once

#include "omsync/integrate.hpp"
#include "omsync/params.hpp"

namespace omsync {

// Strong-coupling small-detuning diagnostics for the phase-synchronization
// setups: phase locking needs the mechanically induced frequency modulation
// G = g * u_bar (u_bar = time-averaged |u| of the resonator the mode couples
// to) to dominate both the detuning and the linewidth of each cavity:
//     G_s/|Delta_s| > threshold,  G_s/gamma_s > threshold,
//     G_w/|Delta_w| > threshold,  G_w/gamma_w > threshold.

struct regime_report {
    double threshold = 10.0;
    double u_bar_strong = 0.0;    // mean |u| seen by the strong mode
    double u_bar_weak = 0.0;      // mean |u| seen by the weak mode
    double g_ubar_strong = 0.0;   // G_s = g_s * u_bar_strong, rad/ns
    double g_ubar_weak = 0.0;     // G_w = g_w * u_bar_weak, rad/ns
    double ratio_delta_strong = 0.0;
    double ratio_gamma_strong = 0.0;
    double ratio_delta_weak = 0.0;
    double ratio_gamma_weak = 0.0;
    bool strong_satisfied = false;
    bool weak_satisfied = false;
    bool satisfied = false;       // all four inequalities hold
};

// Evaluates the four inequalities on a simulated trajectory of a
// phase-synchronization setup (single weak mode).
regime_report validate_regime(const model_params& params, const trajectory& traj,
                              double threshold = 10.0);

} // namespace omsync
