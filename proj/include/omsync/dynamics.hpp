#pragma once

#include <span>

#include "omsync/params.hpp"

namespace omsync {

// Right-hand sides of the four mean-field ODE systems in canonical units
// (time ns, rates rad/ns, u = x/x_zpf dimensionless, v = du/dt).
//
// Every cavity mode obeys
//     d(alpha)/dt = -i*delta*alpha - (gamma/2)*alpha - i*g*alpha*u + eps
// with u the displacement of the resonator that mode couples to, and every
// resonator obeys
//     du/dt = v
//     dv/dt = -omega^2*u - Gamma*v + 2*omega*(optical force) + spring terms
// where the optical force is the sum of g_m*|alpha_m|^2 over the cavity modes
// pressing on that resonator and the spring term (setups B) on the weak
// resonator j is 2*omega_j*k_j*(u_s - zpf_ratio*u_j), with the strong branch
// left free of any back-reaction (unidirectional drive chain).
//
// All functions are pure: no allocation, no hidden state, reentrant.

// Evaluate the derivative for the setup selected by p.setup.
// y and dy must both have length p.dim(); throws layout_mismatch otherwise.
void eval_rhs(const model_params& p, std::span<const double> y, std::span<double> dy);

// A bound (params, rhs) pair usable as the callable the integrator and the
// exponent estimators expect.
struct model_rhs {
    const model_params* params;
    void operator()(double /*t*/, std::span<const double> y, std::span<double> dy) const {
        eval_rhs(*params, y, dy);
    }
    int dim() const { return params->dim(); }
};

} // namespace omsync
