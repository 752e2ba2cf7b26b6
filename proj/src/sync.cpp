#include "omsync/sync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "omsync/errors.hpp"
#include "omsync/params.hpp"

namespace omsync {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

void check_equal_sizes(std::size_t a, std::size_t b) {
    if (a != b) fail(errc::grid_mismatch, "series sizes differ");
    if (a == 0) fail(errc::empty_series, "empty series");
}

// Map a mode index (0 = strong, 1.. = weak) to its quadrature channel names.
std::pair<int, int> mode_channels(const trajectory& traj, int mode) {
    std::string suffix;
    if (mode == 0) {
        suffix = "s";
    } else {
        // Weak modes are named alpha_1/alpha_2 in the two-mode setups and
        // alpha_w in the single-weak-mode setups.
        bool has_w = false;
        for (const auto& name : traj.channels)
            if (name == "re_alpha_w") has_w = true;
        suffix = has_w ? "w" : std::to_string(mode);
    }
    return {traj.channel_idx("re_alpha_" + suffix), traj.channel_idx("im_alpha_" + suffix)};
}

} // namespace

std::vector<double> amplitude_error(std::span<const double> re_i, std::span<const double> im_i,
                                    std::span<const double> re_j, std::span<const double> im_j) {
    check_equal_sizes(re_i.size(), im_i.size());
    check_equal_sizes(re_i.size(), re_j.size());
    check_equal_sizes(re_i.size(), im_j.size());
    std::vector<double> out(re_i.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = std::hypot(re_j[n], im_j[n]) - std::hypot(re_i[n], im_i[n]);
    return out;
}

std::vector<double> cos_phase_error(std::span<const double> re_i, std::span<const double> im_i,
                                    std::span<const double> re_j, std::span<const double> im_j,
                                    double gap_floor) {
    check_equal_sizes(re_i.size(), im_i.size());
    check_equal_sizes(re_i.size(), re_j.size());
    check_equal_sizes(re_i.size(), im_j.size());
    std::vector<double> out(re_i.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double mi = std::hypot(re_i[n], im_i[n]);
        const double mj = std::hypot(re_j[n], im_j[n]);
        out[n] = (mi < gap_floor || mj < gap_floor) ? quiet_nan : re_j[n] / mj - re_i[n] / mi;
    }
    return out;
}

std::vector<double> amplitude_error(const trajectory& traj, int mode_i, int mode_j) {
    const auto [ri, ii] = mode_channels(traj, mode_i);
    const auto [rj, ij] = mode_channels(traj, mode_j);
    std::vector<double> out(traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const auto y = traj.state(n);
        out[n] = std::hypot(y[rj], y[ij]) - std::hypot(y[ri], y[ii]);
    }
    return out;
}

std::vector<double> cos_phase_error(const trajectory& traj, int mode_i, int mode_j,
                                    double gap_floor) {
    const auto [ri, ii] = mode_channels(traj, mode_i);
    const auto [rj, ij] = mode_channels(traj, mode_j);
    std::vector<double> out(traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const auto y = traj.state(n);
        const double mi = std::hypot(y[ri], y[ii]);
        const double mj = std::hypot(y[rj], y[ij]);
        out[n] = (mi < gap_floor || mj < gap_floor) ? quiet_nan : y[rj] / mj - y[ri] / mi;
    }
    return out;
}

std::vector<double> phase_ratio(std::span<const double> psi_s, std::span<const double> psi_w,
                                double ratio_floor) {
    check_equal_sizes(psi_s.size(), psi_w.size());
    std::vector<double> out(psi_s.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (!(std::abs(psi_w[n]) > ratio_floor))
            fail(errc::phase_too_small,
                 "|psi_w| = " + std::to_string(std::abs(psi_w[n])) + " rad at sample " +
                     std::to_string(n) + " is below the ratio floor");
        out[n] = psi_s[n] / psi_w[n];
    }
    return out;
}

sync_verdict detect_complete_sync(std::span<const double> times, std::span<const double> amp_err,
                                  std::span<const double> phase_err,
                                  std::span<const double> amp_ref, const sync_options& opts) {
    check_equal_sizes(times.size(), amp_err.size());
    check_equal_sizes(times.size(), phase_err.size());
    check_equal_sizes(times.size(), amp_ref.size());
    const std::size_t n = times.size();
    if (n < 2) fail(errc::window_too_short, "need at least 2 samples");
    const std::size_t w0 =
        n - std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(opts.window_fraction * static_cast<double>(n))));
    if (w0 >= n - 1) fail(errc::window_too_short, "terminal window needs at least 2 samples");

    sync_verdict v;
    v.opts = opts;

    double norm_acc = 0.0;
    std::size_t norm_count = 0;
    double max_amp = 0.0, max_phase = 0.0;
    for (std::size_t i = w0; i < n; ++i) {
        norm_acc += amp_ref[i];
        ++norm_count;
        max_amp = std::max(max_amp, std::abs(amp_err[i]));
        if (!std::isnan(phase_err[i])) max_phase = std::max(max_phase, std::abs(phase_err[i]));
    }
    v.amp_norm = norm_acc / static_cast<double>(norm_count);
    if (!(v.amp_norm > 0.0)) fail(errc::constant_signal, "reference amplitude vanishes in window");
    v.terminal_amp_error = max_amp / v.amp_norm;
    v.terminal_phase_error = max_phase;
    v.synchronized = v.terminal_amp_error < opts.amp_tol && v.terminal_phase_error < opts.phase_tol;

    // First time after which both error series stay below threshold for good.
    const double amp_thresh = opts.amp_tol * v.amp_norm;
    std::size_t first_ok = n;
    for (std::size_t i = n; i-- > 0;) {
        const bool amp_ok = std::abs(amp_err[i]) < amp_thresh;
        const bool phase_ok = std::isnan(phase_err[i]) || std::abs(phase_err[i]) < opts.phase_tol;
        if (amp_ok && phase_ok)
            first_ok = i;
        else
            break;
    }
    if (first_ok < n) {
        v.settled = true;
        v.settle_time = times[first_ok];
    } else {
        v.settled = false;
        v.settle_time = quiet_nan;
    }
    return v;
}

lock_verdict detect_phase_lock(std::span<const double> ratio_series, double target,
                               const lock_options& opts) {
    if (ratio_series.empty()) fail(errc::empty_series, "empty ratio series");
    if (!(target > 0.0)) fail(errc::non_positive_input, "lock target must be > 0");
    const std::size_t n = ratio_series.size();
    if (n < 2) fail(errc::window_too_short, "need at least 2 samples");
    const std::size_t w0 =
        n - std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(opts.window_fraction * static_cast<double>(n))));
    if (w0 >= n - 1) fail(errc::window_too_short, "terminal window needs at least 2 samples");

    double acc = 0.0;
    double lo = ratio_series[w0], hi = ratio_series[w0];
    for (std::size_t i = w0; i < n; ++i) {
        acc += ratio_series[i];
        lo = std::min(lo, ratio_series[i]);
        hi = std::max(hi, ratio_series[i]);
    }

    lock_verdict v;
    v.opts = opts;
    v.target = target;
    v.ratio_mean = acc / static_cast<double>(n - w0);
    v.ratio_band_width = hi - lo;
    v.deviation = std::abs(v.ratio_mean - target) / target;
    v.locked = v.deviation < opts.tol && v.ratio_band_width < opts.band_tol;
    return v;
}

} // namespace omsync
