#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opqsl::runner {

/// Column-major numeric table with '#' metadata, written as CSV.
struct Table {
    std::string file_name;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // data[c][row]

    void add_column(std::string name, std::vector<double> values);
    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

/// Thrown when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_csv(const Table& t);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Inverse of to_csv, used for round-trip checks.
Table parse_csv(const std::string& text);

}  // namespace opqsl::runner
