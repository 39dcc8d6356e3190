#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fairbias::csv {

using Row = std::vector<std::string>;

/// Calls `on_row(line_number, fields)` for every record after the header.
/// Quoted fields may contain the delimiter and doubled quotes. Returns the
/// header. Throws InputError when the file cannot be opened and Error naming
/// the line when a record has the wrong field count.
Row for_each_row(const std::string& path, char delimiter,
                 const std::function<void(std::size_t, Row&)>& on_row);

struct Table {
    Row header;
    std::vector<Row> rows;

    /// Index of a named column; throws naming the column when absent.
    std::size_t column(const std::string& name) const;
};

Table read(const std::string& path, char delimiter = ',');

/// Split one physical line. Exposed for tests.
Row split_line(const std::string& line, char delimiter);

std::string quote(const std::string& field, char delimiter = ',');

}  // namespace fairbias::csv
