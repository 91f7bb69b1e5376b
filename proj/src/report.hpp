#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace mlde3::report {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Index of a column; throws invalid_argument when absent.
    std::size_t column(const std::string& c) const;
};

std::string to_csv(const Table& t);
std::string to_markdown(const Table& t);
nlohmann::json to_json(const Table& t);

// Header line plus rows; fields may be double-quoted.
Table parse_csv(const std::string& text, const std::string& name);
Table read_csv(const std::string& path, const std::string& name);

// $MLDE3_DATA_DIR, else the data directory of the source tree.
std::string data_dir();
void set_data_dir(const std::string& dir);

// data_dir()/<name>.csv
Table load_golden(const std::string& name);

struct Mismatch {
    std::string table, row, column;
    std::string expected, actual;  // "<absent>" for missing or extra rows
};

std::string to_string(const Mismatch& m);

// Rows are matched on `key`; `columns` are compared as strings. Duplicate keys
// are compared as multisets of their compared columns.
std::vector<Mismatch> compare(const Table& expected, const Table& actual, const std::vector<std::string>& key,
                              const std::vector<std::string>& columns);

}  // namespace mlde3::report
