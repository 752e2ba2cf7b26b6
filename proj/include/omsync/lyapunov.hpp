#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "omsync/dynamics.hpp"
#include "omsync/errors.hpp"
#include "omsync/integrate.hpp"

namespace omsync {

// Largest-Lyapunov-exponent estimation. Two estimators are provided:
//  - lle_wolf: two full trajectories kept a small distance apart; every
//    renorm_interval the companion is pulled back to the reference distance
//    along the current separation direction and the log-expansion is
//    accumulated.
//  - lle_benettin: a finite-difference tangent vector propagated alongside the
//    fiducial orbit and renormalized each interval (independent cross-check).
// Positive LLE classifies the orbit as chaotic, negative as regular.

struct lle_options {
    double d0_rel = 1e-8;             // separation relative to the state norm
    double renorm_interval = 0.25 / 0.346;  // ns; quarter mechanical period
    double t_total = 2000.0;          // ns, includes the discard
    double discard = 500.0;           // ns of transient before accumulation
    double dt = 1e-3;                 // ns
    std::size_t n_blocks = 20;        // block means for the stderr estimate
    // Channel restrictions (wolf only). Empty = all channels. perturb selects
    // where the companion is offset; measure selects which components enter
    // the separation distance. Restricting to a decoupled subsystem measures
    // that subsystem's own exponent.
    std::vector<std::size_t> perturb_channels;
    std::vector<std::size_t> measure_channels;
};

struct lle_estimate {
    double lle = 0.0;        // 1/ns
    double std_error = 0.0;  // 1/ns, from block averaging
    long n_renormalizations = 0;
    enum method_t { wolf, benettin } method = wolf;
    std::vector<double> convergence_times;  // ns
    std::vector<double> convergence;        // running estimate; back() == lle
};

namespace detail {

inline double subspace_distance(std::span<const double> a, std::span<const double> b,
                                const std::vector<std::size_t>& channels) {
    double acc = 0.0;
    if (channels.empty()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
    } else {
        for (std::size_t c : channels) {
            const double d = a[c] - b[c];
            acc += d * d;
        }
    }
    return std::sqrt(acc);
}

inline double state_norm(std::span<const double> y) {
    double acc = 0.0;
    for (double x : y) acc += x * x;
    return std::sqrt(acc);
}

inline void finalize_estimate(lle_estimate& est, const std::vector<double>& rates,
                              double t_start, double interval, std::size_t n_blocks) {
    const std::size_t n = rates.size();
    est.n_renormalizations = static_cast<long>(n);
    est.convergence_times.resize(n);
    est.convergence.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += rates[i];
        est.convergence_times[i] = t_start + static_cast<double>(i + 1) * interval;
        est.convergence[i] = acc / static_cast<double>(i + 1);
    }
    est.lle = est.convergence.back();

    const std::size_t blocks = std::min(n_blocks, n);
    if (blocks >= 2) {
        std::vector<double> means(blocks, 0.0);
        std::vector<std::size_t> counts(blocks, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t b = i * blocks / n;
            means[b] += rates[i];
            ++counts[b];
        }
        double grand = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            means[b] /= static_cast<double>(counts[b]);
            grand += means[b];
        }
        grand /= static_cast<double>(blocks);
        double var = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) var += (means[b] - grand) * (means[b] - grand);
        var /= static_cast<double>(blocks - 1);
        est.std_error = std::sqrt(var / static_cast<double>(blocks));
    }
}

template <rhs_callable F>
inline void advance(F& rhs, std::vector<double>& y, double& t, long steps, double dt,
                    rk4_scratch& s) {
    for (long i = 0; i < steps; ++i) {
        rk4_step(rhs, y, t, dt, s);
        t += dt;
    }
    if (!all_finite(y))
        fail(errc::non_finite_state, "trajectory blew up at t = " + std::to_string(t) + " ns");
}

inline void check_lle_options(const lle_options& o, std::size_t dim) {
    if (!(o.dt > 0.0) || !(o.renorm_interval > 0.0) || !(o.d0_rel > 0.0))
        fail(errc::bad_plan, "dt, renorm_interval and d0_rel must be > 0");
    if (!(o.t_total > o.discard) || o.discard < 0.0)
        fail(errc::bad_plan, "need 0 <= discard < t_total");
    if (o.t_total - o.discard < 2.0 * o.renorm_interval)
        fail(errc::bad_plan, "accumulation span shorter than two renormalization intervals");
    for (std::size_t c : o.perturb_channels)
        if (c >= dim) fail(errc::unknown_channel, "perturb channel out of range");
    for (std::size_t c : o.measure_channels)
        if (c >= dim) fail(errc::unknown_channel, "measure channel out of range");
}

} // namespace detail

template <rhs_callable F>
lle_estimate lle_wolf(F&& rhs, std::span<const double> ic, const lle_options& opts = {}) {
    const std::size_t n = ic.size();
    detail::check_lle_options(opts, n);
    const long steps_per_interval = std::max<long>(1, std::lround(opts.renorm_interval / opts.dt));
    const double interval = static_cast<double>(steps_per_interval) * opts.dt;
    const long discard_steps = std::lround(opts.discard / opts.dt);
    const long n_intervals =
        static_cast<long>(std::floor((opts.t_total - opts.discard) / interval + 1e-9));

    std::vector<double> y(ic.begin(), ic.end());
    detail::rk4_scratch scratch(n);
    double t = 0.0;
    detail::advance(rhs, y, t, discard_steps, opts.dt, scratch);

    // Reference separation, scaled to the post-transient state.
    const double norm = detail::state_norm(y);
    const double d0 = opts.d0_rel * (norm > 1e-12 ? norm : 1.0);
    const auto& perturb = opts.perturb_channels;
    const std::size_t n_pert = perturb.empty() ? n : perturb.size();
    std::vector<double> z = y;
    const double offset = d0 / std::sqrt(static_cast<double>(n_pert));
    if (perturb.empty())
        for (std::size_t i = 0; i < n; ++i) z[i] += offset;
    else
        for (std::size_t c : perturb) z[c] += offset;

    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(n_intervals));
    double tz = t;
    for (long i = 0; i < n_intervals; ++i) {
        detail::advance(rhs, y, t, steps_per_interval, opts.dt, scratch);
        detail::advance(rhs, z, tz, steps_per_interval, opts.dt, scratch);
        const double d = detail::subspace_distance(y, z, opts.measure_channels);
        if (d < 1e-300)
            fail(errc::degenerate_separation,
                 "companion collapsed onto the fiducial trajectory at t = " + std::to_string(t) +
                     " ns");
        rates.push_back(std::log(d / d0) / interval);
        // Pull the companion back to distance d0 along the current direction.
        const double shrink = d0 / d;
        for (std::size_t c = 0; c < n; ++c) z[c] = y[c] + (z[c] - y[c]) * shrink;
    }

    lle_estimate est;
    est.method = lle_estimate::wolf;
    detail::finalize_estimate(est, rates, opts.discard, interval, opts.n_blocks);
    return est;
}

template <rhs_callable F>
lle_estimate lle_benettin(F&& rhs, std::span<const double> ic, const lle_options& opts = {}) {
    const std::size_t n = ic.size();
    detail::check_lle_options(opts, n);
    const long steps_per_interval = std::max<long>(1, std::lround(opts.renorm_interval / opts.dt));
    const double interval = static_cast<double>(steps_per_interval) * opts.dt;
    const long discard_steps = std::lround(opts.discard / opts.dt);
    const long n_intervals =
        static_cast<long>(std::floor((opts.t_total - opts.discard) / interval + 1e-9));

    std::vector<double> y(ic.begin(), ic.end());
    detail::rk4_scratch scratch(n);
    double t = 0.0;
    detail::advance(rhs, y, t, discard_steps, opts.dt, scratch);

    const double norm = detail::state_norm(y);
    const double h = opts.d0_rel * (norm > 1e-12 ? norm : 1.0);

    // Unit tangent vector, propagated by the finite difference of the flow map.
    std::vector<double> w(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> yp(n);

    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(n_intervals));
    for (long i = 0; i < n_intervals; ++i) {
        for (std::size_t c = 0; c < n; ++c) yp[c] = y[c] + h * w[c];
        double tp = t;
        detail::advance(rhs, y, t, steps_per_interval, opts.dt, scratch);
        detail::advance(rhs, yp, tp, steps_per_interval, opts.dt, scratch);
        double growth = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            w[c] = (yp[c] - y[c]) / h;
            growth += w[c] * w[c];
        }
        growth = std::sqrt(growth);
        if (growth < 1e-300)
            fail(errc::degenerate_separation,
                 "tangent vector vanished at t = " + std::to_string(t) + " ns");
        rates.push_back(std::log(growth) / interval);
        for (std::size_t c = 0; c < n; ++c) w[c] /= growth;
    }

    lle_estimate est;
    est.method = lle_estimate::benettin;
    detail::finalize_estimate(est, rates, opts.discard, interval, opts.n_blocks);
    return est;
}

// Model-level overloads.
inline lle_estimate lle_wolf(const model_params& p, std::span<const double> ic,
                             const lle_options& opts = {}) {
    return lle_wolf(model_rhs{&p}, ic, opts);
}

inline lle_estimate lle_benettin(const model_params& p, std::span<const double> ic,
                                 const lle_options& opts = {}) {
    return lle_benettin(model_rhs{&p}, ic, opts);
}

} // namespace omsync
