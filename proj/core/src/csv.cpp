#include "cucgarch/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cucgarch {

void ReturnPanel::validate() const {
    const auto T = values.rows();
    const auto d = values.cols();
    if (d < 1 || T < 1) throw DataError("panel is empty");
    if (static_cast<Eigen::Index>(labels.size()) != d)
        throw DataError("label count does not match column count");
    if (!timestamps.empty() && static_cast<Eigen::Index>(timestamps.size()) != T)
        throw DataError("timestamp count does not match row count");
    if (T < d + 2)
        throw DataError("too few rows: need at least d + 2 = " + std::to_string(d + 2) +
                        ", got " + std::to_string(T));
    if (!values.allFinite()) throw DataError("panel contains non-finite entries");
}

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool looks_like_date(const std::string& cell) {
    const std::string t = trim(cell);
    if (t.size() < 10) return false;
    auto digit = [&](size_t i) { return std::isdigit(static_cast<unsigned char>(t[i])); };
    return digit(0) && digit(1) && digit(2) && digit(3) && t[4] == '-' &&
           digit(5) && digit(6) && t[7] == '-' && digit(8) && digit(9);
}

}  // namespace

ReturnPanel load_returns(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split_line(line, opts.separator));
    }
    if (rows.empty()) throw DataError("empty file: " + path);

    // Header detection: any non-numeric, non-date cell in the first row.
    bool has_header = false;
    for (const auto& cell : rows.front()) {
        double v;
        if (!parse_double(cell, v) && !looks_like_date(cell)) {
            has_header = true;
            break;
        }
    }

    std::size_t first_data = has_header ? 1 : 0;
    if (first_data >= rows.size()) throw DataError("no data rows in " + path);

    const bool has_dates = looks_like_date(rows[first_data].front());
    const std::size_t ncols = rows[first_data].size();
    const std::size_t d = ncols - (has_dates ? 1 : 0);
    if (d == 0) throw DataError("no numeric columns in " + path);

    ReturnPanel panel;
    const std::size_t T = rows.size() - first_data;
    panel.values.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(d));
    if (has_dates) panel.timestamps.reserve(T);

    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != ncols)
            throw DataError("ragged row " + std::to_string(r + 1) + ": expected " +
                            std::to_string(ncols) + " cells, got " + std::to_string(row.size()));
        std::size_t offset = 0;
        if (has_dates) {
            panel.timestamps.push_back(trim(row[0]));
            offset = 1;
        }
        for (std::size_t c = 0; c < d; ++c) {
            double v;
            if (!parse_double(row[c + offset], v))
                throw DataError("non-numeric cell at row " + std::to_string(r + 1) +
                                ", column " + std::to_string(c + offset + 1) + ": '" +
                                trim(row[c + offset]) + "'");
            panel.values(static_cast<Eigen::Index>(r - first_data),
                         static_cast<Eigen::Index>(c)) = v;
        }
    }

    if (has_header) {
        std::size_t offset = has_dates ? 1 : 0;
        for (std::size_t c = 0; c < d; ++c) panel.labels.push_back(trim(rows[0][c + offset]));
    } else {
        for (std::size_t c = 0; c < d; ++c) panel.labels.push_back("col_" + std::to_string(c + 1));
    }

    panel.validate();
    return panel;
}

namespace {

void write_csv(std::ostream& out, const Matrix& values,
               const std::vector<std::string>& columns,
               const std::vector<std::string>& row_tags,
               const std::string& tag_name = "date") {
    const bool tagged = !row_tags.empty();
    if (tagged) out << tag_name << ",";
    for (Eigen::Index c = 0; c < values.cols(); ++c)
        out << columns[static_cast<std::size_t>(c)] << (c + 1 < values.cols() ? "," : "\n");
    out.precision(17);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        if (tagged) out << row_tags[static_cast<std::size_t>(r)] << ",";
        for (Eigen::Index c = 0; c < values.cols(); ++c)
            out << values(r, c) << (c + 1 < values.cols() ? "," : "\n");
    }
}

}  // namespace

void save_panel(const ReturnPanel& panel, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    write_csv(out, panel.values, panel.labels, panel.timestamps);
}

void save_table(const Matrix& values, const std::vector<std::string>& columns,
                const std::vector<std::string>& row_tags, const std::string& path,
                const std::string& tag_name) {
    if (static_cast<Eigen::Index>(columns.size()) != values.cols())
        throw DimensionError("column name count does not match table width");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    write_csv(out, values, columns, row_tags, tag_name);
}

}  // namespace cucgarch
