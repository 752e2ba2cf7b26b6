#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "omsync/integrate.hpp"

namespace omsync {

// Synchronization metrics for two cavity modes of one trajectory.
//
// Complete synchronization is judged on the error series
//     e_amp(t) = |alpha_j(t)| - |alpha_i(t)|
//     e_cos(t) = cos(theta_j) - cos(theta_i),   cos(theta) = Re alpha / |alpha|
// (theta is the instantaneous complex argument, not the Hilbert phase).
// Phase synchronization is judged on the unwrapped Hilbert phase ratio
// psi_s(t)/psi_w(t) against a target ratio.

struct sync_options {
    double amp_tol = 1e-3;         // on max|e_amp| / mean|alpha_i| in the window
    double phase_tol = 1e-3;       // on max|e_cos| in the window
    double window_fraction = 0.2;  // terminal window = last fraction of samples
    double gap_floor = 1e-12;      // |alpha| below this -> phase gap marker (NaN)
};

struct sync_verdict {
    bool synchronized = false;
    bool settled = false;
    double settle_time = 0.0;          // ns; meaningful only when settled
    double terminal_amp_error = 0.0;   // max |e_amp| over window / amp_norm
    double terminal_phase_error = 0.0; // max |e_cos| over window
    double amp_norm = 0.0;             // mean |alpha_i| over window
    sync_options opts;                 // thresholds echo
};

struct lock_options {
    double target = 0.0;           // expected phase ratio; <= 0 means derive g_s/g_w
    double tol = 0.05;             // relative deviation of window mean from target
    double band_tol = 0.1;         // max-min of ratio over the window
    double window_fraction = 0.2;
    double ratio_floor = 10.0;     // rad; |psi_w| must exceed this
};

struct lock_verdict {
    bool locked = false;
    double ratio_mean = 0.0;
    double ratio_band_width = 0.0; // max - min over window
    double deviation = 0.0;        // |ratio_mean - target| / target
    double target = 0.0;
    lock_options opts;
};

// Pointwise |alpha_j| - |alpha_i|. Swapping the modes negates the series.
std::vector<double> amplitude_error(std::span<const double> re_i, std::span<const double> im_i,
                                    std::span<const double> re_j, std::span<const double> im_j);

// Pointwise cos(theta_j) - cos(theta_i); samples where either modulus falls
// below gap_floor are emitted as quiet-NaN gap markers and skipped downstream.
std::vector<double> cos_phase_error(std::span<const double> re_i, std::span<const double> im_i,
                                    std::span<const double> re_j, std::span<const double> im_j,
                                    double gap_floor = 1e-12);

// Trajectory-level overloads; mode indices: 0 = strongly driven mode, 1.. = weak.
std::vector<double> amplitude_error(const trajectory& traj, int mode_i, int mode_j);
std::vector<double> cos_phase_error(const trajectory& traj, int mode_i, int mode_j,
                                    double gap_floor = 1e-12);

// Pointwise psi_s / psi_w. Requires |psi_w| > ratio_floor at every sample
// (callers pass post-transient, edge-trimmed phases).
std::vector<double> phase_ratio(std::span<const double> psi_s, std::span<const double> psi_w,
                                double ratio_floor = 10.0);

// Verdict over the terminal window of the given error series. amp_ref is the
// |alpha_i| series used to normalize the amplitude error.
sync_verdict detect_complete_sync(std::span<const double> times, std::span<const double> amp_err,
                                  std::span<const double> phase_err,
                                  std::span<const double> amp_ref, const sync_options& opts = {});

// Verdict over the terminal window of a phase-ratio series.
lock_verdict detect_phase_lock(std::span<const double> ratio_series, double target,
                               const lock_options& opts = {});

} // namespace omsync
