#include "alphagate/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace alphagate::report {

std::optional<Format> parse_format(std::string_view text) {
    if (text == "tsv") return Format::Tsv;
    if (text == "pretty") return Format::Pretty;
    return std::nullopt;
}

namespace {

std::string printf_double(const char* spec, int digits, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, digits, value);
    return buf;
}

std::string cell_text(const Cell& cell, int precision, bool pretty) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                return std::to_string(v);
            } else {
                auto text = format_number(v, precision);
                if (pretty && std::isfinite(v)) text += " (~" + format_rounded(v) + ")";
                return text;
            }
        },
        cell);
}

} // namespace

std::string format_number(double value, int precision) {
    precision = std::clamp(precision, 1, 17);
    if (value != 0.0 && std::fabs(value) < 1e-4) {
        return printf_double("%.*e", precision - 1, value);
    }
    return printf_double("%.*f", precision, value);
}

std::string format_rounded(double value) {
    const double mag = std::fabs(value);
    std::string text;
    if (value != 0.0 && mag < 1e-3) {
        return printf_double("%.*e", 2, value);
    }
    text = printf_double("%.*f", mag < 0.1 ? 3 : 2, value);
    // ".64" rather than "0.64"
    if (text.rfind("0.", 0) == 0) text.erase(0, 1);
    else if (text.rfind("-0.", 0) == 0) text.erase(1, 1);
    return text;
}

std::string render(const Table& table, Format format, int precision) {
    const bool pretty = format == Format::Pretty;
    std::vector<std::vector<std::string>> lines;
    lines.push_back(table.columns);
    for (const auto& row : table.rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (const auto& cell : row) line.push_back(cell_text(cell, precision, pretty));
        lines.push_back(std::move(line));
    }

    std::string out;
    if (!pretty) {
        for (const auto& line : lines) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (i) out += '\t';
                out += line[i];
            }
            out += '\n';
        }
        return out;
    }

    std::vector<std::size_t> width(table.columns.size(), 0);
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < line.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], line[i].size());
        }
    }
    for (const auto& line : lines) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) text += "  ";
            text += line[i];
            if (i + 1 < line.size()) text.append(width[i] - line[i].size(), ' ');
        }
        text.erase(text.find_last_not_of(' ') + 1);
        out += text + '\n';
    }
    return out;
}

} // namespace alphagate::report
