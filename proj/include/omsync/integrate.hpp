#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "omsync/dynamics.hpp"
#include "omsync/errors.hpp"

namespace omsync {

// Fixed-step or adaptive time integration with transient discard and uniform
// output sampling. The rhs callable has signature
//     void rhs(double t, std::span<const double> y, std::span<double> dy)
// so dynamics models, oracle systems, and lambdas can all be integrated.

template <class F>
concept rhs_callable = std::invocable<F&, double, std::span<const double>, std::span<double>>;

struct integration_plan {
    double t0 = 0.0;            // ns
    double t1 = 0.0;            // ns
    double dt = 1e-3;           // ns; ~2900 steps per mechanical period, well
                                // below any chaos-relevant error scale
    int sample_stride = 1;      // record every Nth step
    double discard = 0.0;       // ns of initial transient excluded from output
    enum method_t { rk4, rkf45 } method = rk4;
    double abs_tol = 1e-10;     // adaptive only
    double rel_tol = 1e-10;     // adaptive only
};

inline void validate(const integration_plan& plan) {
    if (!(plan.t1 > plan.t0)) fail(errc::bad_plan, "t1 must exceed t0");
    if (!(plan.dt > 0.0)) fail(errc::bad_plan, "dt must be > 0");
    if (plan.sample_stride < 1) fail(errc::bad_plan, "sample_stride must be >= 1");
    if (plan.discard < 0.0 || plan.discard >= plan.t1 - plan.t0)
        fail(errc::bad_plan, "discard must lie in [0, t1 - t0)");
}

// Sampled orbit on the uniform post-discard grid.
struct trajectory {
    std::vector<double> times;          // ns, spacing dt * sample_stride
    std::size_t dim = 0;
    std::vector<double> data;           // row-major: times.size() * dim
    std::vector<std::string> channels;  // one name per state entry
    integration_plan plan;              // echo of the producing plan
    long n_rhs_steps = 0;               // accepted integrator steps

    std::size_t size() const { return times.size(); }

    std::span<const double> state(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }

    int channel_idx(const std::string& name) const {
        for (std::size_t i = 0; i < channels.size(); ++i)
            if (channels[i] == name) return static_cast<int>(i);
        fail(errc::unknown_channel, "no channel '" + name + "' in trajectory");
    }

    std::vector<double> channel(std::size_t idx) const {
        std::vector<double> out(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) out[i] = data[i * dim + idx];
        return out;
    }

    std::vector<double> channel(const std::string& name) const {
        return channel(static_cast<std::size_t>(channel_idx(name)));
    }
};

namespace detail {

struct rk4_scratch {
    std::vector<double> k1, k2, k3, k4, yt;
    explicit rk4_scratch(std::size_t n) : k1(n), k2(n), k3(n), k4(n), yt(n) {}
};

template <rhs_callable F>
inline void rk4_step(F& rhs, std::vector<double>& y, double t, double dt, rk4_scratch& s) {
    const std::size_t n = y.size();
    rhs(t, y, std::span<double>(s.k1));
    for (std::size_t i = 0; i < n; ++i) s.yt[i] = y[i] + 0.5 * dt * s.k1[i];
    rhs(t + 0.5 * dt, s.yt, std::span<double>(s.k2));
    for (std::size_t i = 0; i < n; ++i) s.yt[i] = y[i] + 0.5 * dt * s.k2[i];
    rhs(t + 0.5 * dt, s.yt, std::span<double>(s.k3));
    for (std::size_t i = 0; i < n; ++i) s.yt[i] = y[i] + dt * s.k3[i];
    rhs(t + dt, s.yt, std::span<double>(s.k4));
    for (std::size_t i = 0; i < n; ++i)
        y[i] += dt / 6.0 * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
}

inline bool all_finite(std::span<const double> y) {
    for (double x : y)
        if (!std::isfinite(x)) return false;
    return true;
}

inline std::vector<std::string> default_channels(std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = "x" + std::to_string(i);
    return names;
}

} // namespace detail

// One classic 4th-order Runge-Kutta step; local error O(dt^5).
template <rhs_callable F>
std::vector<double> step_rk4(F&& rhs, std::span<const double> y0, double t, double dt) {
    if (!(dt > 0.0)) fail(errc::bad_plan, "dt must be > 0");
    std::vector<double> y(y0.begin(), y0.end());
    detail::rk4_scratch s(y.size());
    detail::rk4_step(rhs, y, t, dt, s);
    if (!detail::all_finite(y)) fail(errc::non_finite_state, "rk4 step produced NaN/Inf");
    return y;
}

// Fixed-step integration. Deterministic: identical inputs give bit-identical
// trajectories on one platform. Output grid:
//     times[i] = t0 + (round(discard/dt) + i*stride) * dt,
//     len = floor((t1 - t0 - discard)/(dt*stride)) + 1.
template <rhs_callable F>
trajectory integrate(F&& rhs, std::span<const double> ic, const integration_plan& plan,
                     std::vector<std::string> channels = {}) {
    validate(plan);
    const std::size_t n = ic.size();
    if (channels.empty()) channels = detail::default_channels(n);
    if (channels.size() != n) fail(errc::layout_mismatch, "channel list size vs state size");

    const double span_ns = plan.t1 - plan.t0 - plan.discard;
    const long stride = plan.sample_stride;
    const long n_out = static_cast<long>(std::floor(span_ns / (plan.dt * static_cast<double>(stride)) + 1e-9)) + 1;
    const long i_dis = std::lround(plan.discard / plan.dt);
    const long total_steps = i_dis + (n_out - 1) * stride;

    trajectory traj;
    traj.dim = n;
    traj.channels = std::move(channels);
    traj.plan = plan;
    traj.times.reserve(static_cast<std::size_t>(n_out));
    traj.data.reserve(static_cast<std::size_t>(n_out) * n);

    std::vector<double> y(ic.begin(), ic.end());
    detail::rk4_scratch s(n);
    for (long step = 0;; ++step) {
        if (step >= i_dis && (step - i_dis) % stride == 0) {
            traj.times.push_back(plan.t0 + static_cast<double>(step) * plan.dt);
            traj.data.insert(traj.data.end(), y.begin(), y.end());
            if (static_cast<long>(traj.times.size()) == n_out) break;
        }
        detail::rk4_step(rhs, y, plan.t0 + static_cast<double>(step) * plan.dt, plan.dt, s);
        if (!detail::all_finite(y))
            fail(errc::non_finite_state,
                 "integration blew up at t = " +
                     std::to_string(plan.t0 + static_cast<double>(step + 1) * plan.dt) + " ns");
    }
    traj.n_rhs_steps = total_steps;
    return traj;
}

// Runge-Kutta-Fehlberg 4(5) with proportional step control, resampled onto the
// same uniform grid as the fixed-step path by cubic Hermite interpolation.
// Used as a cross-check oracle for the RK4 runs.
template <rhs_callable F>
trajectory integrate_adaptive(F&& rhs, std::span<const double> ic, const integration_plan& plan,
                              std::vector<std::string> channels = {}) {
    validate(plan);
    const std::size_t n = ic.size();
    if (channels.empty()) channels = detail::default_channels(n);
    if (channels.size() != n) fail(errc::layout_mismatch, "channel list size vs state size");

    const double span_ns = plan.t1 - plan.t0 - plan.discard;
    const long stride = plan.sample_stride;
    const long n_out = static_cast<long>(std::floor(span_ns / (plan.dt * static_cast<double>(stride)) + 1e-9)) + 1;
    const double grid_dt = plan.dt * static_cast<double>(stride);
    const double t_first = plan.t0 + static_cast<double>(std::lround(plan.discard / plan.dt)) * plan.dt;

    trajectory traj;
    traj.dim = n;
    traj.channels = std::move(channels);
    traj.plan = plan;
    traj.times.reserve(static_cast<std::size_t>(n_out));
    traj.data.reserve(static_cast<std::size_t>(n_out) * n);

    std::vector<double> y(ic.begin(), ic.end());
    std::vector<double> f0(n), f1(n), yt(n), y5(n), y4(n);
    std::vector<double> k2(n), k3(n), k4(n), k5(n), k6(n);

    double t = plan.t0;
    double h = plan.dt;
    long next_sample = 0;
    long accepted = 0;
    rhs(t, y, std::span<double>(f0));

    // Emit a sample at t_target from the Hermite cubic on [t, t+h_used].
    auto emit = [&](double t_target, const std::vector<double>& ya, const std::vector<double>& fa,
                    const std::vector<double>& yb, const std::vector<double>& fb, double h_used) {
        const double s_ = (t_target - t) / h_used;
        const double h00 = (1 + 2 * s_) * (1 - s_) * (1 - s_);
        const double h10 = s_ * (1 - s_) * (1 - s_);
        const double h01 = s_ * s_ * (3 - 2 * s_);
        const double h11 = s_ * s_ * (s_ - 1);
        traj.times.push_back(t_target);
        for (std::size_t i = 0; i < n; ++i)
            traj.data.push_back(h00 * ya[i] + h10 * h_used * fa[i] + h01 * yb[i] + h11 * h_used * fb[i]);
    };

    while (next_sample < n_out) {
        const double t_target = t_first + static_cast<double>(next_sample) * grid_dt;
        if (t_target <= t + 1e-12 * std::max(1.0, std::abs(t))) {
            // Exactly on (or numerically at) the current point.
            traj.times.push_back(t_target);
            traj.data.insert(traj.data.end(), y.begin(), y.end());
            ++next_sample;
            continue;
        }
        if (t + h > plan.t1) h = plan.t1 - t;

        // Fehlberg tableau.
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + h * (1.0 / 4.0) * f0[i];
        rhs(t + h / 4.0, yt, std::span<double>(k2));
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (3.0 / 32.0 * f0[i] + 9.0 / 32.0 * k2[i]);
        rhs(t + 3.0 * h / 8.0, yt, std::span<double>(k3));
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (1932.0 / 2197.0 * f0[i] - 7200.0 / 2197.0 * k2[i] + 7296.0 / 2197.0 * k3[i]);
        rhs(t + 12.0 * h / 13.0, yt, std::span<double>(k4));
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (439.0 / 216.0 * f0[i] - 8.0 * k2[i] + 3680.0 / 513.0 * k3[i] - 845.0 / 4104.0 * k4[i]);
        rhs(t + h, yt, std::span<double>(k5));
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + h * (-8.0 / 27.0 * f0[i] + 2.0 * k2[i] - 3544.0 / 2565.0 * k3[i] +
                                1859.0 / 4104.0 * k4[i] - 11.0 / 40.0 * k5[i]);
        rhs(t + h / 2.0, yt, std::span<double>(k6));

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y5[i] = y[i] + h * (16.0 / 135.0 * f0[i] + 6656.0 / 12825.0 * k3[i] +
                                28561.0 / 56430.0 * k4[i] - 9.0 / 50.0 * k5[i] + 2.0 / 55.0 * k6[i]);
            y4[i] = y[i] + h * (25.0 / 216.0 * f0[i] + 1408.0 / 2565.0 * k3[i] +
                                2197.0 / 4104.0 * k4[i] - 1.0 / 5.0 * k5[i]);
            const double scale = plan.abs_tol + plan.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = (y5[i] - y4[i]) / scale;
            err += e * e;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || h <= 1e-12) {
            if (!detail::all_finite(y5))
                fail(errc::non_finite_state,
                     "adaptive integration blew up at t = " + std::to_string(t + h) + " ns");
            rhs(t + h, y5, std::span<double>(f1));
            // Emit every grid point that the accepted interval covers.
            while (next_sample < n_out) {
                const double tt = t_first + static_cast<double>(next_sample) * grid_dt;
                if (tt > t + h + 1e-12 * std::max(1.0, std::abs(t + h))) break;
                emit(tt, y, f0, y5, f1, h);
                ++next_sample;
            }
            t += h;
            y.swap(y5);
            f0.swap(f1);
            ++accepted;
        }
        const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, grow));
        if (h < 1e-12) fail(errc::bad_plan, "adaptive step size underflow");
        if (t >= plan.t1 && next_sample >= n_out) break;
    }
    traj.n_rhs_steps = accepted;
    return traj;
}

// Convenience overloads binding a parameter set to its rhs and layout names.
inline trajectory integrate(const model_params& p, std::span<const double> ic,
                            const integration_plan& plan) {
    return integrate(model_rhs{&p}, ic, plan, channel_names(p.setup));
}

inline trajectory integrate_adaptive(const model_params& p, std::span<const double> ic,
                                     const integration_plan& plan) {
    return integrate_adaptive(model_rhs{&p}, ic, plan, channel_names(p.setup));
}

} // namespace omsync
