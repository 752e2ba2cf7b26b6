#include "omsync/regime.hpp"

#include <cmath>
#include <limits>

#include "omsync/errors.hpp"
#include "omsync/signal.hpp"

namespace omsync {

namespace {

// G/denominator with the degenerate corners pinned down: a zero denominator
// with positive G is an infinitely-well-satisfied inequality; zero G never
// satisfies it.
double safe_ratio(double g_ubar, double denom) {
    if (denom == 0.0)
        return g_ubar > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return g_ubar / denom;
}

} // namespace

regime_report validate_regime(const model_params& params, const trajectory& traj,
                              double threshold) {
    if (params.setup != setup_kind::ps_a && params.setup != setup_kind::ps_b)
        fail(errc::validation_error,
             "regime diagnostics apply to the single-weak-mode (phase sync) setups");
    if (traj.size() < 2) fail(errc::empty_trajectory, "trajectory too short");

    const auto u_strong = (params.setup == setup_kind::ps_a) ? traj.channel("u")
                                                             : traj.channel("u_s");
    const auto u_weak = (params.setup == setup_kind::ps_a) ? traj.channel("u")
                                                           : traj.channel("u_w");

    regime_report r;
    r.threshold = threshold;
    r.u_bar_strong = mean_abs(traj.times, u_strong);
    r.u_bar_weak = mean_abs(traj.times, u_weak);
    r.g_ubar_strong = params.cav[0].g * r.u_bar_strong;
    r.g_ubar_weak = params.cav[1].g * r.u_bar_weak;

    r.ratio_delta_strong = safe_ratio(r.g_ubar_strong, std::abs(params.cav[0].delta));
    r.ratio_gamma_strong = safe_ratio(r.g_ubar_strong, params.cav[0].gamma);
    r.ratio_delta_weak = safe_ratio(r.g_ubar_weak, std::abs(params.cav[1].delta));
    r.ratio_gamma_weak = safe_ratio(r.g_ubar_weak, params.cav[1].gamma);

    r.strong_satisfied = r.ratio_delta_strong > threshold && r.ratio_gamma_strong > threshold;
    r.weak_satisfied = r.ratio_delta_weak > threshold && r.ratio_gamma_weak > threshold;
    r.satisfied = r.strong_satisfied && r.weak_satisfied;
    return r;
}

} // namespace omsync
