#include "omsync/signal.hpp"

#include <algorithm>
#include <cmath>

#include "omsync/errors.hpp"
#include "omsync/units.hpp"

namespace omsync {

namespace {

double series_mean(std::span<const double> s) {
    double acc = 0.0;
    for (double x : s) acc += x;
    return acc / static_cast<double>(s.size());
}

} // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        fail(errc::validation_error, "fft size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 1.0 : -1.0) * two_pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<std::complex<double>> analytic_signal(std::span<const double> s) {
    if (s.size() < 2) fail(errc::empty_series, "analytic signal needs at least 2 samples");
    const double mean = series_mean(s);
    double peak = 0.0;
    for (double x : s) peak = std::max(peak, std::abs(x - mean));
    if (peak < 1e-12 * std::max(1.0, std::abs(mean)))
        fail(errc::constant_signal, "signal has no oscillating component");

    const std::size_t n = s.size();
    const std::size_t m = next_pow2(n);
    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) a[i] = s[i] - mean;

    fft_radix2(a, false);
    // One-sided spectrum: keep DC and Nyquist, double positive bins, zero the rest.
    for (std::size_t k = 1; k < m / 2; ++k) a[k] *= 2.0;
    for (std::size_t k = m / 2 + 1; k < m; ++k) a[k] = {0.0, 0.0};
    fft_radix2(a, true);

    a.resize(n);
    return a;
}

std::vector<double> hilbert_dft(std::span<const double> s) {
    const auto z = analytic_signal(s);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].imag();
    return out;
}

std::vector<double> hilbert_pv_direct(std::span<const double> s, double dt) {
    if (!(dt > 0.0)) fail(errc::non_positive_input, "dt must be > 0");
    if (s.size() < 2) fail(errc::empty_series, "need at least 2 samples");
    const std::size_t n = s.size();
    const double mean = series_mean(s);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue; // singular sample excluded (principal value)
            const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            acc += w * (s[j] - mean) / (static_cast<double>(i) - static_cast<double>(j));
        }
        out[i] = acc / pi; // dt cancels: (t_i - t_j) = (i - j) dt, weight = w dt
    }
    return out;
}

double hilbert_pv_direct(std::span<const double> s, double dt, std::size_t index) {
    if (!(dt > 0.0)) fail(errc::non_positive_input, "dt must be > 0");
    if (s.size() < 2) fail(errc::empty_series, "need at least 2 samples");
    const std::size_t n = s.size();
    const auto margin = static_cast<std::size_t>(
        std::ceil(phase_series::edge_fraction * static_cast<double>(n)));
    if (index >= n || index < margin || index + margin >= n)
        fail(errc::edge_index, "index must sit at least 5% of the length from either end");
    const double mean = series_mean(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == index) continue;
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        acc += w * (s[j] - mean) / (static_cast<double>(index) - static_cast<double>(j));
    }
    return acc / pi;
}

std::vector<double> unwrap_phase(std::span<const double> wrapped) {
    if (wrapped.empty()) fail(errc::empty_series, "cannot unwrap an empty series");
    std::vector<double> out(wrapped.size());
    out[0] = wrapped[0];
    // Track the branch count as an integer so out[i] - wrapped[i] is a single
    // product 2*pi*n (an exact multiple up to one rounding), not a drifting sum.
    long n = 0;
    for (std::size_t i = 1; i < wrapped.size(); ++i) {
        const double d = wrapped[i] - wrapped[i - 1];
        // Choose k so that d - 2*pi*k lies in (-pi, pi].
        long k = std::lround(std::floor((d + pi) / two_pi));
        if (d - two_pi * static_cast<double>(k) <= -pi) --k;
        n -= k;
        out[i] = wrapped[i] + two_pi * static_cast<double>(n);
    }
    return out;
}

phase_series instantaneous_phase(std::span<const double> s) {
    const auto z = analytic_signal(s);
    std::vector<double> wrapped(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) wrapped[i] = std::atan2(z[i].imag(), z[i].real());

    phase_series ps;
    ps.phase = unwrap_phase(wrapped);
    const auto margin = static_cast<std::size_t>(
        std::ceil(phase_series::edge_fraction * static_cast<double>(s.size())));
    ps.interior_begin = margin;
    ps.interior_end = (s.size() > margin) ? s.size() - margin : 0;
    if (ps.interior_end <= ps.interior_begin)
        fail(errc::window_too_short, "series too short for edge margins");
    return ps;
}

double mean_abs(std::span<const double> times, std::span<const double> s) {
    if (times.size() != s.size()) fail(errc::grid_mismatch, "times and series sizes differ");
    if (times.size() < 2) fail(errc::empty_series, "need at least 2 samples");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) fail(errc::non_uniform_sampling, "times must be strictly increasing");
        acc += 0.5 * dt * (std::abs(s[i]) + std::abs(s[i + 1]));
    }
    return acc / (times.back() - times.front());
}

} // namespace omsync
