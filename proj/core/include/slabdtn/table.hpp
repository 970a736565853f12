#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slabdtn {

/// A plain numeric table with named columns, the common currency of every
/// CSV the tools emit. Floats are printed with 17 significant digits so a
/// write/read round trip is bit exact.
struct Table {
    std::vector<std::string> comments;  // emitted as leading '# ' lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const;  // throws if absent
    void append_row(std::initializer_list<double> values);
};

void write_csv(const Table& table, std::ostream& os);
Table read_csv(std::istream& is);

std::string format_double(double v);  // %.17g

/// Write `content` to `path` atomically (temp file in the same directory,
/// then rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace slabdtn
