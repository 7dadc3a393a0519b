#include <cmath>
#include <cstdio>
#include <ostream>

#include "exciton/cli.hpp"
#include "exciton/errors.hpp"

namespace exciton::cli {

std::string format_number(double v)
{
    if (!std::isfinite(v)) {
        throw AccuracyError("refusing to write a non-finite value");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

void write_csv(std::ostream& out, std::string_view metadata, const Table& table)
{
    std::string text = "# ";
    text += metadata;
    text += '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        text += c ? "," : "";
        text += table.columns[c];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            text += c ? "," : "";
            text += format_number(row[c]);
        }
        text += '\n';
    }
    out << text;
}

} // namespace exciton::cli
