#include "omsync/params.hpp"

#include <cmath>

namespace omsync {

const char* setup_name(setup_kind setup) {
    switch (setup) {
    case setup_kind::cs_a: return "CS_A";
    case setup_kind::cs_b: return "CS_B";
    case setup_kind::ps_a: return "PS_A";
    case setup_kind::ps_b: return "PS_B";
    }
    return "?";
}

setup_kind setup_from_name(const std::string& name) {
    if (name == "CS_A") return setup_kind::cs_a;
    if (name == "CS_B") return setup_kind::cs_b;
    if (name == "PS_A") return setup_kind::ps_a;
    if (name == "PS_B") return setup_kind::ps_b;
    fail(errc::validation_error, "unknown setup name '" + name + "'");
}

const std::vector<std::string>& channel_names(setup_kind setup) {
    static const std::vector<std::string> cs_a = {
        "re_alpha_s", "im_alpha_s", "re_alpha_1", "im_alpha_1",
        "re_alpha_2", "im_alpha_2", "u", "v"};
    static const std::vector<std::string> cs_b = {
        "re_alpha_s", "im_alpha_s", "u_s", "v_s",
        "re_alpha_1", "im_alpha_1", "u_1", "v_1",
        "re_alpha_2", "im_alpha_2", "u_2", "v_2"};
    static const std::vector<std::string> ps_a = {
        "re_alpha_s", "im_alpha_s", "re_alpha_w", "im_alpha_w", "u", "v"};
    static const std::vector<std::string> ps_b = {
        "re_alpha_s", "im_alpha_s", "u_s", "v_s",
        "re_alpha_w", "im_alpha_w", "u_w", "v_w"};
    switch (setup) {
    case setup_kind::cs_a: return cs_a;
    case setup_kind::cs_b: return cs_b;
    case setup_kind::ps_a: return ps_a;
    case setup_kind::ps_b: return ps_b;
    }
    return cs_a;
}

int channel_index(setup_kind setup, const std::string& name) {
    const auto& names = channel_names(setup);
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    fail(errc::unknown_channel,
         "no channel '" + name + "' in layout " + setup_name(setup));
}

std::pair<int, int> cavity_channels(setup_kind setup, const std::string& mode) {
    return {channel_index(setup, "re_" + mode), channel_index(setup, "im_" + mode)};
}

std::vector<int> weak_portrait_channels(setup_kind setup) {
    switch (setup) {
    case setup_kind::cs_a: return {2, 3, 6, 7};   // re_1, im_1, u, v
    case setup_kind::cs_b: return {4, 5, 6, 7};   // re_1, im_1, u_1, v_1
    case setup_kind::ps_a: return {2, 3, 4, 5};   // re_w, im_w, u, v
    case setup_kind::ps_b: return {4, 5, 6, 7};   // re_w, im_w, u_w, v_w
    }
    return {};
}

void validate(const model_params& p) {
    const int nc = p.n_cavities();
    for (int i = 0; i < nc; ++i) {
        const auto& c = p.cav[static_cast<size_t>(i)];
        if (!(c.gamma > 0.0))
            fail(errc::non_positive_rate, std::string("gamma of cavity ") + std::to_string(i));
        if (!(c.eps >= 0.0))
            fail(errc::non_positive_rate, std::string("eps of cavity ") + std::to_string(i));
        if (!std::isfinite(c.delta) || !std::isfinite(c.g))
            fail(errc::validation_error, "non-finite cavity rate");
    }
    const int nr = p.n_resonators();
    for (int i = 0; i < nr; ++i) {
        const auto& m = p.mech[static_cast<size_t>(i)];
        if (!(m.omega > 0.0))
            fail(errc::non_positive_rate, std::string("omega of resonator ") + std::to_string(i));
        if (!(m.big_gamma > 0.0))
            fail(errc::non_positive_rate, std::string("Gamma of resonator ") + std::to_string(i));
    }
    if (p.setup == setup_kind::cs_b && p.k1 != p.k2)
        fail(errc::validation_error, "CS_B requires k1 == k2");
    if (!(p.zpf_ratio > 0.0))
        fail(errc::non_positive_rate, "zpf_ratio");
}

} // namespace omsync
