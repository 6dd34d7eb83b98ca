#include "alphagate/errors.hpp"
#include "alphagate/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <string>

namespace alphagate::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
    throw ValidationError("InvalidBattery",
                          std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

TestBattery parse_battery_csv(std::istream& in, std::string_view source) {
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<BatteryEntry> entries;
    std::set<std::string> ids;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
        if (trim(line).empty()) continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            fail(source, line_no, "expected exactly two comma-separated fields");
        }
        const auto id = trim(line.substr(0, comma));
        const auto p_text = trim(line.substr(comma + 1));

        if (!header_seen) {
            if (id != "id" || p_text != "p") fail(source, line_no, "header must be 'id,p'");
            header_seen = true;
            continue;
        }
        if (id.empty()) fail(source, line_no, "empty id");
        if (!ids.insert(std::string(id)).second) {
            fail(source, line_no, "duplicate id '" + std::string(id) + "'");
        }
        double p = 0.0;
        const auto [end, ec] = std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
        if (ec != std::errc{} || end != p_text.data() + p_text.size()) {
            fail(source, line_no, "p value '" + std::string(p_text) + "' is not a number");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            fail(source, line_no, "p value for '" + std::string(id) + "' must lie in [0, 1]");
        }
        entries.push_back({HypothesisId(std::string(id)), p});
    }
    if (!header_seen) fail(source, line_no, "missing header 'id,p'");
    if (entries.empty()) fail(source, line_no, "battery has no rows");
    return TestBattery(std::move(entries));
}

TestBattery read_battery_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("InvalidBattery", path.string() + ": cannot open file");
    return parse_battery_csv(in, path.string());
}

} // namespace alphagate::io
