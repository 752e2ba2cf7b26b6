#include "omsync/errors.hpp"

namespace omsync {

const char* errc_name(errc code) {
    switch (code) {
    case errc::layout_mismatch: return "LayoutMismatch";
    case errc::non_finite_state: return "NonFiniteState";
    case errc::missing_parameter: return "MissingParameter";
    case errc::non_positive_rate: return "NonPositiveRate";
    case errc::non_positive_input: return "NonPositiveInput";
    case errc::unknown_preset: return "UnknownPreset";
    case errc::unknown_channel: return "UnknownChannel";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::phase_too_small: return "PhaseTooSmall";
    case errc::constant_signal: return "ConstantSignal";
    case errc::non_uniform_sampling: return "NonUniformSampling";
    case errc::edge_index: return "EdgeIndex";
    case errc::empty_trajectory: return "EmptyTrajectory";
    case errc::empty_series: return "EmptySeries";
    case errc::window_too_short: return "WindowTooShort";
    case errc::degenerate_separation: return "DegenerateSeparation";
    case errc::bad_path: return "BadPath";
    case errc::bad_plan: return "BadPlan";
    case errc::io_error: return "IoError";
    case errc::syntax_error: return "SyntaxError";
    case errc::validation_error: return "ValidationError";
    }
    return "UnknownError";
}

} // namespace omsync
