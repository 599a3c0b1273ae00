#pragma once

#include <string>
#include <vector>

namespace phaselink {

/**
 * Whitespace-separated numeric text: one `#`-prefixed name row, then one line
 * per sample, full double round-trip precision. The boring format every
 * plotting tool reads.
 */
struct ColumnSet {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
};

std::string format_columnar(const ColumnSet& set);
void write_columnar(const std::string& path, const ColumnSet& set);

} // namespace phaselink
