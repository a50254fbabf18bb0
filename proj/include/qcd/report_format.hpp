#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace qcd {

using Json = nlohmann::ordered_json;

/// JSON text with every floating-point number printed with 17 significant
/// digits; non-finite numbers become null.
std::string dump_json(const Json& value, int indent = 2);

/// Column-oriented result; cells are JSON scalars (integer, float, string).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

std::string format_cell(const Json& cell);

/// CSV with a header row; `preamble` lines are written first, each prefixed
/// with "# ".
void write_csv(std::ostream& out, const Table& table,
               const std::vector<std::string>& preamble = {});

}  // namespace qcd
