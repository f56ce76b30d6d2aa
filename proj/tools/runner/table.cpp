#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "format.hpp"

namespace opqsl::runner {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void Table::add_column(std::string name, std::vector<double> values) {
    if (!data.empty() && values.size() != rows()) {
        throw std::invalid_argument("Table: column " + name + " has the wrong length");
    }
    columns.push_back(std::move(name));
    data.push_back(std::move(values));
}

void Table::add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }

void Table::add_meta(std::string key, double value) { add_meta(std::move(key), format_number(value)); }

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.metadata) out += "# " + k + "=" + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.data.size(); ++c) {
            if (c) out += ',';
            out += format_number(t.data[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw IoError("failed writing " + path.string());
}

namespace {

double parse_cell(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("parse_csv: bad cell '" + s + "'");
    return x;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("parse_csv: metadata line without '='");
            t.add_meta(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!header) {
            t.columns = split(line);
            t.data.assign(t.columns.size(), {});
            header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != t.columns.size()) throw std::invalid_argument("parse_csv: ragged row");
        for (std::size_t c = 0; c < cells.size(); ++c) t.data[c].push_back(parse_cell(cells[c]));
    }
    return t;
}

}  // namespace opqsl::runner
