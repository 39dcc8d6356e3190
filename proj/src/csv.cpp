#include "fairbias/csv.hpp"

#include <fstream>

#include "fairbias/types.hpp"

namespace fairbias::csv {

Row split_line(const std::string& line, char delimiter) {
    Row out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter) {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    if (quoted) throw Error("unterminated quoted field");
    out.push_back(std::move(field));
    return out;
}

Row for_each_row(const std::string& path, char delimiter,
                 const std::function<void(std::size_t, Row&)>& on_row) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(path + ": empty file");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    Row header = split_line(line, delimiter);
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line == "\r") continue;
        Row row;
        try {
            row = split_line(line, delimiter);
        } catch (const Error& e) {
            throw Error(path + ": line " + std::to_string(number) + ": " + e.what());
        }
        if (row.size() != header.size())
            throw Error(path + ": line " + std::to_string(number) + ": expected " +
                        std::to_string(header.size()) + " fields, found " +
                        std::to_string(row.size()));
        on_row(number, row);
    }
    return header;
}

Table read(const std::string& path, char delimiter) {
    Table t;
    t.header = for_each_row(path, delimiter, [&](std::size_t, Row& row) { t.rows.push_back(std::move(row)); });
    return t;
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw Error("missing column '" + name + "'");
}

std::string quote(const std::string& field, char delimiter) {
    if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace fairbias::csv
