#include "omsync/dynamics.hpp"

namespace omsync {

namespace {

// d(alpha)/dt for one cavity written in quadratures. With the instantaneous
// frequency w = delta + g*u,
//   d(re)/dt =  w*im - (gamma/2)*re + eps
//   d(im)/dt = -w*re - (gamma/2)*im
inline void cavity_rhs(const cavity_rates& c, double u, double re, double im,
                       double& dre, double& dim) {
    const double w = c.delta + c.g * u;
    dre = w * im - 0.5 * c.gamma * re + c.eps;
    dim = -w * re - 0.5 * c.gamma * im;
}

inline double mod2(double re, double im) { return re * re + im * im; }

void rhs_cs_a(const model_params& p, std::span<const double> y, std::span<double> dy) {
    const double u = y[6];
    cavity_rhs(p.cav[0], u, y[0], y[1], dy[0], dy[1]);
    cavity_rhs(p.cav[1], u, y[2], y[3], dy[2], dy[3]);
    cavity_rhs(p.cav[2], u, y[4], y[5], dy[4], dy[5]);
    const auto& m = p.mech[0];
    double force = p.cav[0].g * mod2(y[0], y[1]);
    if (p.include_weak_backaction)
        force += p.cav[1].g * mod2(y[2], y[3]) + p.cav[2].g * mod2(y[4], y[5]);
    dy[6] = y[7];
    dy[7] = -m.omega * m.omega * u - m.big_gamma * y[7] + 2.0 * m.omega * force;
}

void rhs_cs_b(const model_params& p, std::span<const double> y, std::span<double> dy) {
    // Strong branch: its own device, no back-reaction from the weak ones.
    const double us = y[2];
    cavity_rhs(p.cav[0], us, y[0], y[1], dy[0], dy[1]);
    const auto& ms = p.mech[0];
    dy[2] = y[3];
    dy[3] = -ms.omega * ms.omega * us - ms.big_gamma * y[3]
            + 2.0 * ms.omega * p.cav[0].g * mod2(y[0], y[1]);

    // Weak branches: self-pressure plus the spring toward the strong resonator.
    const double r = p.zpf_ratio;
    const double k[2] = {p.k1, p.k2};
    for (int j = 0; j < 2; ++j) {
        const int b = 4 + 4 * j;
        const auto& c = p.cav[static_cast<size_t>(1 + j)];
        const auto& m = p.mech[static_cast<size_t>(1 + j)];
        const double uj = y[b + 2];
        cavity_rhs(c, uj, y[b], y[b + 1], dy[b], dy[b + 1]);
        dy[b + 2] = y[b + 3];
        dy[b + 3] = -m.omega * m.omega * uj - m.big_gamma * y[b + 3]
                    + 2.0 * m.omega * c.g * mod2(y[b], y[b + 1])
                    + 2.0 * m.omega * k[j] * (us - r * uj);
    }
}

void rhs_ps_a(const model_params& p, std::span<const double> y, std::span<double> dy) {
    const double u = y[4];
    cavity_rhs(p.cav[0], u, y[0], y[1], dy[0], dy[1]);
    cavity_rhs(p.cav[1], u, y[2], y[3], dy[2], dy[3]);
    const auto& m = p.mech[0];
    // The strong mode dominates the force; the weak mode's pressure is only
    // included on request.
    double force = p.cav[0].g * mod2(y[0], y[1]);
    if (p.include_weak_backaction) force += p.cav[1].g * mod2(y[2], y[3]);
    dy[4] = y[5];
    dy[5] = -m.omega * m.omega * u - m.big_gamma * y[5] + 2.0 * m.omega * force;
}

void rhs_ps_b(const model_params& p, std::span<const double> y, std::span<double> dy) {
    const double us = y[2];
    cavity_rhs(p.cav[0], us, y[0], y[1], dy[0], dy[1]);
    const auto& ms = p.mech[0];
    dy[2] = y[3];
    dy[3] = -ms.omega * ms.omega * us - ms.big_gamma * y[3]
            + 2.0 * ms.omega * p.cav[0].g * mod2(y[0], y[1]);

    const double uw = y[6];
    const auto& cw = p.cav[1];
    const auto& mw = p.mech[1];
    cavity_rhs(cw, uw, y[4], y[5], dy[4], dy[5]);
    dy[6] = y[7];
    dy[7] = -mw.omega * mw.omega * uw - mw.big_gamma * y[7]
            + 2.0 * mw.omega * cw.g * mod2(y[4], y[5])
            + 2.0 * mw.omega * p.k1 * (us - p.zpf_ratio * uw);
}

} // namespace

void eval_rhs(const model_params& p, std::span<const double> y, std::span<double> dy) {
    const size_t n = static_cast<size_t>(p.dim());
    if (y.size() != n || dy.size() != n)
        fail(errc::layout_mismatch,
             std::string("state size ") + std::to_string(y.size()) + " vs layout " +
                 setup_name(p.setup) + " (" + std::to_string(n) + ")");
    switch (p.setup) {
    case setup_kind::cs_a: rhs_cs_a(p, y, dy); break;
    case setup_kind::cs_b: rhs_cs_b(p, y, dy); break;
    case setup_kind::ps_a: rhs_ps_a(p, y, dy); break;
    case setup_kind::ps_b: rhs_ps_b(p, y, dy); break;
    }
}

} // namespace omsync
