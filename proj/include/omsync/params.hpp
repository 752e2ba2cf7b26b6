#pragma once

#include <array>
#include <string>
#include <vector>

#include "omsync/errors.hpp"

namespace omsync {

// The four simulated topologies.
//
//   cs_a: one strongly-driven and two weakly-driven cavity modes sharing a
//         single mechanical resonator (complete-synchronization setup A).
//   cs_b: three separate optomechanical devices; the two weak ones couple to
//         the strong one through mechanical springs (setup B).
//   ps_a: one strong and one weak cavity sharing a resonator (phase-sync A).
//   ps_b: two separate devices, spring-coupled resonators (phase-sync B).
enum class setup_kind { cs_a, cs_b, ps_a, ps_b };

const char* setup_name(setup_kind setup);
setup_kind setup_from_name(const std::string& name);

// Per-cavity rates, all rad/ns. delta is the detuning (cavity resonance minus
// drive frequency, may take any sign), gamma the amplitude damping rate, g the
// single-photon optomechanical coupling, eps the drive strength.
struct cavity_rates {
    double delta = 0.0;
    double gamma = 0.0;
    double g = 0.0;
    double eps = 0.0;
};

// Per-resonator rates, rad/ns.
struct mech_rates {
    double omega = 0.0;
    double big_gamma = 0.0;
};

// Parameter set for one scenario. Which fields are live depends on `setup`:
//
//   cs_a: cav[0]=s, cav[1]=1, cav[2]=2; mech[0] shared.        state dim 8
//   cs_b: cav as above; mech[0]=s, mech[1]=1, mech[2]=2;       state dim 12
//         k1, k2 spring rates (contract requires k1 == k2).
//   ps_a: cav[0]=s, cav[1]=w; mech[0] shared.                  state dim 6
//   ps_b: cav[0]=s, cav[1]=w; mech[0]=s, mech[1]=w; k1 spring. state dim 8
//
// zpf_ratio is the weak/strong zero-point-spread ratio entering the spring
// term; every preset uses 1 (identical resonators).
//
// include_weak_backaction adds the weak cavities' radiation pressure to the
// *shared* resonator in the A setups. In the B setups each weak device always
// pushes its own resonator (that force is part of the canonical equations) and
// the strong branch is unidirectional, so the flag has no effect there.
struct model_params {
    setup_kind setup = setup_kind::cs_a;
    std::array<cavity_rates, 3> cav{};
    std::array<mech_rates, 3> mech{};
    double k1 = 0.0;
    double k2 = 0.0;
    double zpf_ratio = 1.0;
    bool include_weak_backaction = false;

    int n_cavities() const { return (setup == setup_kind::cs_a || setup == setup_kind::cs_b) ? 3 : 2; }
    int n_resonators() const { return (setup == setup_kind::cs_b) ? 3 : (setup == setup_kind::ps_b) ? 2 : 1; }
    int dim() const { return 2 * n_cavities() + 2 * n_resonators(); }
};

// State-vector layouts (index of each channel within the flat real vector):
//   cs_a: [re_alpha_s, im_alpha_s, re_alpha_1, im_alpha_1,
//          re_alpha_2, im_alpha_2, u, v]
//   cs_b: [re_alpha_s, im_alpha_s, u_s, v_s, re_alpha_1, im_alpha_1, u_1, v_1,
//          re_alpha_2, im_alpha_2, u_2, v_2]
//   ps_a: [re_alpha_s, im_alpha_s, re_alpha_w, im_alpha_w, u, v]
//   ps_b: [re_alpha_s, im_alpha_s, u_s, v_s, re_alpha_w, im_alpha_w, u_w, v_w]
const std::vector<std::string>& channel_names(setup_kind setup);

// Index of `name` in the layout; throws unknown_channel.
int channel_index(setup_kind setup, const std::string& name);

// Channel indices of the real/imag quadratures of cavity mode `mode`
// ("alpha_s", "alpha_1", "alpha_2", "alpha_w").
std::pair<int, int> cavity_channels(setup_kind setup, const std::string& mode);

// The four channels of the weakly-driven subsystem portrait
// (re, im, displacement, velocity) used by the exponent analyses.
std::vector<int> weak_portrait_channels(setup_kind setup);

// Validate positivity/layout invariants; throws non_positive_rate /
// validation_error with the offending field named.
void validate(const model_params& p);

} // namespace omsync
