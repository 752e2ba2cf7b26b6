#pragma once

#include <string>
#include <utility>
#include <vector>

#include "omsync/integrate.hpp"

namespace omsync {

// CSV export/import. Values are written with 17 significant digits (%.17g) so
// a re-parse reproduces every double bit-exactly; separators are commas, line
// endings LF regardless of platform.

using named_series = std::pair<std::string, std::vector<double>>;

// Header: t_ns plus the trajectory's channel names (or the given subset);
// one row per sample. An empty trajectory produces a header-only file.
void write_csv(const trajectory& traj, const std::string& path);
void write_csv(const trajectory& traj, const std::vector<std::string>& channels,
               const std::string& path);

// Arbitrary named columns of equal length.
void write_csv(const std::vector<named_series>& columns, const std::string& path);

struct csv_table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // one vector per header entry
};

csv_table read_csv(const std::string& path);

// Small helpers shared by the writers and the CLI.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace omsync
