#include "phaselink/io/columnar.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace phaselink {

std::string format_columnar(const ColumnSet& set)
{
    if (set.names.size() != set.columns.size() || set.columns.empty())
        throw std::invalid_argument("column names and data must pair up");
    const std::size_t rows = set.columns.front().size();
    for (const auto& col : set.columns)
        if (col.size() != rows)
            throw std::invalid_argument("columns must share one length");

    std::string out;
    out.reserve(rows * set.columns.size() * 24 + 64);
    out += '#';
    for (const auto& name : set.names) {
        out += ' ';
        out += name;
    }
    out += '\n';
    char buf[32];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < set.columns.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", set.columns[c][r]);
            if (c)
                out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_columnar(const std::string& path, const ColumnSet& set)
{
    std::string text = format_columnar(set);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("short write to '" + path + "'");
}

} // namespace phaselink
