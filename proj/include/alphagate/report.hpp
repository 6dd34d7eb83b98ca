#pragma once

// Tabular output shared by the CLI subcommands: TSV for machines, aligned
// text for people.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace alphagate::report {

enum class Format { Tsv, Pretty };

std::optional<Format> parse_format(std::string_view text);

using Cell = std::variant<std::monostate, std::string, double, std::uint64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Fixed-point with `precision` decimals; magnitudes below 1e-4 (other than
/// zero) switch to scientific notation with `precision` significant digits.
std::string format_number(double value, int precision);

/// Rounding at the precision results are usually printed at in prose:
/// 2 decimals from 0.1 up, 3 below, 3 significant digits under 0.001, and
/// no leading zero (".64", ".098", "2.99e-07").
std::string format_rounded(double value);

/// TSV: header line, then one line per row; empty cells stay empty.
/// Pretty: space-aligned columns, doubles shown as "full (~rounded)".
std::string render(const Table& table, Format format, int precision);

} // namespace alphagate::report
