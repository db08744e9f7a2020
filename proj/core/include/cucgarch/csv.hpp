#pragma once

#include "cucgarch/types.hpp"

#include <string>
#include <vector>

namespace cucgarch {

struct CsvOptions {
    char separator = ',';
};

/// Reads a return panel from CSV. The header row is optional (detected when
/// the first row has any non-numeric cell) and the first column may hold
/// ISO-8601 dates, which become the panel timestamps. Errors name the
/// offending row and column.
ReturnPanel load_returns(const std::string& path, const CsvOptions& opts = {});

/// Writes a panel back out, with a header and the timestamp column when present.
void save_panel(const ReturnPanel& panel, const std::string& path);

/// Writes a plain numeric table with the given column names; row tags (e.g.
/// timestamps) become a leading column named tag_name when non-empty.
void save_table(const Matrix& values, const std::vector<std::string>& columns,
                const std::vector<std::string>& row_tags, const std::string& path,
                const std::string& tag_name = "date");

}  // namespace cucgarch
