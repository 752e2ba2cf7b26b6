#pragma once

#include <stdexcept>
#include <string>

namespace omsync {

// Every failure mode the library reports. One exception type carrying a code
// keeps call sites uniform and lets the CLI map analysis errors to exit codes.
enum class errc {
    layout_mismatch,
    non_finite_state,
    missing_parameter,
    non_positive_rate,
    non_positive_input,
    unknown_preset,
    unknown_channel,
    grid_mismatch,
    phase_too_small,
    constant_signal,
    non_uniform_sampling,
    edge_index,
    empty_trajectory,
    empty_series,
    window_too_short,
    degenerate_separation,
    bad_path,
    bad_plan,
    io_error,
    syntax_error,
    validation_error,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace omsync
