#include "omsync/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "omsync/errors.hpp"

namespace omsync {

namespace {

void format_value(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!f) fail(errc::io_error, "cannot open '" + path + "' for writing");
    return f;
}

void write_rows(std::ofstream& f, const std::vector<std::string>& header,
                const std::vector<const std::vector<double>*>& cols, const std::string& path) {
    std::string line;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) line += ',';
        line += header[c];
    }
    line += '\n';
    f << line;

    const std::size_t n_rows = cols.empty() ? 0 : cols[0]->size();
    for (std::size_t r = 0; r < n_rows; ++r) {
        line.clear();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) line += ',';
            format_value(line, (*cols[c])[r]);
        }
        line += '\n';
        f << line;
    }
    if (!f) fail(errc::io_error, "write failed on '" + path + "'");
}

} // namespace

void write_csv(const trajectory& traj, const std::vector<std::string>& channels,
               const std::string& path) {
    std::vector<std::string> header{"t_ns"};
    std::vector<std::vector<double>> data;
    data.push_back(traj.times);
    const auto& selected = channels.empty() ? traj.channels : channels;
    for (const auto& name : selected) {
        header.push_back(name);
        data.push_back(traj.channel(name));
    }
    std::vector<const std::vector<double>*> cols;
    for (const auto& col : data) cols.push_back(&col);
    auto f = open_for_write(path);
    write_rows(f, header, cols, path);
}

void write_csv(const trajectory& traj, const std::string& path) {
    write_csv(traj, {}, path);
}

void write_csv(const std::vector<named_series>& columns, const std::string& path) {
    if (columns.empty()) fail(errc::empty_series, "no columns to write");
    std::vector<std::string> header;
    std::vector<const std::vector<double>*> cols;
    for (const auto& [name, values] : columns) {
        header.push_back(name);
        cols.push_back(&values);
        if (values.size() != columns.front().second.size())
            fail(errc::grid_mismatch, "CSV columns must have equal length");
    }
    auto f = open_for_write(path);
    write_rows(f, header, cols, path);
}

csv_table read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::io_error, "cannot open '" + path + "' for reading");

    csv_table table;
    std::string line;
    if (!std::getline(f, line)) fail(errc::io_error, "'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    table.columns.resize(table.header.size());

    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t col = 0;
        const char* p = line.c_str();
        while (true) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p)
                fail(errc::io_error, "'" + path + "': cannot parse value in row");
            if (col >= table.columns.size())
                fail(errc::io_error, "'" + path + "': row wider than header");
            table.columns[col].push_back(v);
            ++col;
            if (*end == ',') p = end + 1;
            else break;
        }
        if (col != table.header.size())
            fail(errc::io_error, "'" + path + "': row narrower than header");
    }
    return table;
}

void write_text_file(const std::string& path, const std::string& text) {
    auto f = open_for_write(path);
    f << text;
    if (!f) fail(errc::io_error, "write failed on '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::io_error, "cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace omsync
