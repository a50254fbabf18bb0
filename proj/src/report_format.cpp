#include "qcd/report_format.hpp"

#include <cmath>
#include <ostream>

#include "qcd/deterministic_fn.hpp"

namespace qcd {

namespace {

void dump_into(std::string& out, const Json& value, int indent, int depth) {
    const auto newline = [&](int level) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * level), ' ');
        }
    };
    switch (value.type()) {
        case Json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                out += Json(key).dump();
                out += indent >= 0 ? ": " : ":";
                dump_into(out, item, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : value) {
                if (!first) {
                    out += indent >= 0 ? ", " : ",";
                }
                first = false;
                dump_into(out, item, -1, depth + 1);
            }
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = value.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += value.dump();
    }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
    std::string out;
    dump_into(out, value, indent, 0);
    return out;
}

std::string format_cell(const Json& cell) {
    if (cell.is_number_float()) {
        return format_double(cell.get<double>());
    }
    if (cell.is_string()) {
        return cell.get<std::string>();
    }
    return cell.dump();
}

void write_csv(std::ostream& out, const Table& table, const std::vector<std::string>& preamble) {
    for (const auto& line : preamble) {
        out << "# " << line << '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_cell(row[c]);
        }
        out << '\n';
    }
}

}  // namespace qcd
