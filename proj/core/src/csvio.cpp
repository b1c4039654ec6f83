#include "irshcn/csvio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "irshcn/errors.hpp"

namespace irshcn::csv {

int Table::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw ConfigError("not a number at " + where + ": \"" + cell + "\"");
    return v;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

void write_csv(const Table& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write \"" + path + "\"");
    for (size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw ConfigError("csv row width mismatch writing \"" + path + "\"");
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open \"" + path + "\"");
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty csv file \"" + path + "\"");
    t.columns = split_line(line);
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != t.columns.size())
            throw ConfigError("csv width mismatch at " + path + ":" + std::to_string(lineno));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

} // namespace irshcn::csv
