#include "slabdtn/table.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace slabdtn {

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument("Table: no column named '" + name + "'");
}

void Table::append_row(std::initializer_list<double> values) {
    if (values.size() != columns.size())
        throw std::invalid_argument("Table: row width does not match column count");
    rows.emplace_back(values);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const Table& table, std::ostream& os) {
    if (table.columns.empty())
        throw std::invalid_argument("write_csv: table has no columns");
    for (const std::string& c : table.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
}

Table read_csv(std::istream& is) {
    Table table;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            table.comments.push_back(line.substr(start));
            continue;
        }
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!header_seen) {
            table.columns = std::move(cells);
            header_seen = true;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw std::runtime_error("read_csv: ragged row: " + line);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) {
            char* end = nullptr;
            row.push_back(std::strtod(c.c_str(), &end));
            if (end == c.c_str())
                throw std::runtime_error("read_csv: non-numeric cell: " + c);
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("read_csv: missing header");
    return table;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("rename to " + path + " failed: " + ec.message());
    }
}

}  // namespace slabdtn
