#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace omsync {

// Hilbert-transform phase extraction and small signal utilities.
//
// The analytic signal of a real series s(t) is z(t) = s_d(t) + i*H[s_d](t),
// where s_d is the mean-subtracted series and H the Hilbert transform
//     H[s](t) = (1/pi) PV integral s(tau)/(t - tau) dtau.
// Concretely H[cos] = sin and H[sin] = -cos, so arg z advances by the tone
// frequency, and applying H twice negates the series.

// In-place radix-2 FFT; size must be a power of two. inverse=true applies the
// unitary-inverse convention (divide by N).
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

// Analytic signal by the one-sided-spectrum method: subtract the mean, zero-pad
// to the next power of two, zero the negative-frequency bins, double the
// positive ones (DC and Nyquist kept single), transform back, truncate to the
// original length. Real part is the detrended series, imaginary part its
// Hilbert transform.
std::vector<std::complex<double>> analytic_signal(std::span<const double> s);

// Hilbert transform of the mean-subtracted series (imaginary part of the
// analytic signal).
std::vector<double> hilbert_dft(std::span<const double> s);

// Direct principal-value quadrature on a uniform grid with spacing dt:
// trapezoidal weights, singular sample skipped. O(N^2); used as an
// independent oracle for hilbert_dft, accurate away from the ends.
std::vector<double> hilbert_pv_direct(std::span<const double> s, double dt);

// Single-sample variant of the direct quadrature. The index must lie at least
// 5% of the series length away from either end, where the truncated
// principal-value integral is trustworthy; edge indices raise edge_index.
double hilbert_pv_direct(std::span<const double> s, double dt, std::size_t index);

// Unwrapped phase: out[0] = in[0]; each consecutive difference is shifted by a
// multiple of 2*pi into (-pi, pi].
std::vector<double> unwrap_phase(std::span<const double> wrapped);

// Continuous Hilbert phase of a real series with its edge-distortion margins.
// Samples with index < interior_begin or >= interior_end sit within the edge
// fraction (5% per side) where the finite-window transform is unreliable.
struct phase_series {
    std::vector<double> phase;   // unwrapped, radians
    std::size_t interior_begin = 0;
    std::size_t interior_end = 0;
    static constexpr double edge_fraction = 0.05;
};

phase_series instantaneous_phase(std::span<const double> s);

// Trapezoidal time average of |s| over [times.front(), times.back()].
double mean_abs(std::span<const double> times, std::span<const double> s);

} // namespace omsync
