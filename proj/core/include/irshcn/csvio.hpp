#pragma once

#include <string>
#include <vector>

namespace irshcn::csv {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const; // -1 if absent
};

// shortest round-trip decimal representation (reparses to the same bits)
std::string format_double(double v);
double parse_double(const std::string& cell, const std::string& where);

void write_csv(const Table& t, const std::string& path);
Table read_csv(const std::string& path);

} // namespace irshcn::csv
