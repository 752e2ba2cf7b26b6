#pragma once

#include <string>

#include "omsync/scenario.hpp"

namespace omsync {

// JSON round-trip for scenario configurations and run reports.
//
// Rate fields end in _hz and accept either a plain number in Hz or a string
// with an explicit unit ("0.346 GHz", "346 MHz", "1.29 kHz", "22 Hz"); both
// spellings of the same frequency produce the same internal rad/ns value.
// serialize_config always emits plain Hz numbers. parse(serialize(c))
// reproduces c.

scenario_config parse_config(const std::string& text);

std::string serialize_config(const scenario_config& config);

// Report document for the CLI: config echo, analysis results, error records,
// and a manifest holding the volatile parts (timestamp, written files) so the
// rest of the document is deterministic.
std::string serialize_report(const scenario_report& rep, const std::string& timestamp);

std::string serialize_sweep_report(const sweep_report& rep, const std::string& timestamp);

} // namespace omsync
