#include "alphagate/errors.hpp"
#include "alphagate/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace alphagate::io {

using nlohmann::json;

namespace {

// Maps every JSON pointer in an already-validated document to the line its
// value starts on. nlohmann/json keeps no source positions.
class LineIndex {
public:
    explicit LineIndex(std::string_view text) : text_(text) {
        skip_ws();
        if (pos_ < text_.size()) value("");
    }

    /// Line of `pointer`, falling back to its nearest recorded ancestor.
    std::size_t line_of(std::string pointer) const {
        for (;;) {
            if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
            if (pointer.empty()) return 1;
            pointer.erase(pointer.rfind('/'));
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') ++line_;
            if (c != ' ' && c != '\t' && c != '\r' && c != '\n') break;
            ++pos_;
        }
    }

    std::string string_token() {
        std::string out;
        ++pos_; // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') {
                out += text_[pos_++];
            }
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void value(const std::string& pointer) {
        skip_ws();
        lines_.emplace(pointer, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip_ws();
            if (text_[pos_] == '}') { ++pos_; return; }
            for (;;) {
                skip_ws();
                const std::size_t key_line = line_;
                const auto key = pointer + "/" + escape(string_token());
                skip_ws();
                ++pos_; // ':'
                value(key);
                lines_[key] = key_line;
                skip_ws();
                if (text_[pos_++] == '}') return;
            }
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            if (text_[pos_] == ']') { ++pos_; return; }
            for (std::size_t i = 0;; ++i) {
                value(pointer + "/" + std::to_string(i));
                skip_ws();
                if (text_[pos_++] == ']') return;
            }
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                                              std::string_view::npos) {
                ++pos_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

class Reader {
public:
    Reader(std::string_view source, const LineIndex& index) : source_(source), index_(index) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
        throw ValidationError("InvalidScenarioFile",
                              std::string(source_) + ":" + std::to_string(index_.line_of(pointer)) +
                                  ": " + (pointer.empty() ? "/" : pointer) + ": " + msg);
    }

    void expect_object(const json& j, const std::string& pointer,
                       std::initializer_list<std::string_view> allowed) const {
        if (!j.is_object()) fail(pointer, "expected an object");
        for (const auto& [key, _] : j.items()) {
            bool known = false;
            for (auto a : allowed) known = known || a == key;
            if (!known) fail(pointer + "/" + key, "unknown key '" + key + "'");
        }
    }

    const json& require(const json& obj, const std::string& pointer, const char* key) const {
        if (!obj.contains(key)) fail(pointer, std::string("missing required key '") + key + "'");
        return obj.at(key);
    }

    bool boolean(const json& obj, const std::string& pointer, const char* key) const {
        const auto& v = require(obj, pointer, key);
        if (!v.is_boolean()) fail(pointer + "/" + key, "expected true or false");
        return v.get<bool>();
    }

    double number(const json& v, const std::string& pointer) const {
        if (!v.is_number()) fail(pointer, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(pointer, "expected a finite number");
        return x;
    }

    std::uint64_t count(const json& v, const std::string& pointer) const {
        if (!v.is_number_unsigned()) fail(pointer, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::string text(const json& v, const std::string& pointer) const {
        if (!v.is_string()) fail(pointer, "expected a string");
        return v.get<std::string>();
    }

    HypothesisId id(const json& v, const std::string& pointer) const {
        auto s = text(v, pointer);
        if (s.empty()) fail(pointer, "hypothesis id must be non-empty");
        return HypothesisId(std::move(s));
    }

    TestingMode mode(const json& v, const std::string& pointer) const {
        const auto m = parse_testing_mode(text(v, pointer));
        if (!m) fail(pointer, "mode must be individual, disjunction or conjunction");
        return *m;
    }

    Method method(const json& v, const std::string& pointer) const {
        const auto m = parse_method(text(v, pointer));
        if (!m) fail(pointer, "method must be none, bonferroni, sidak, holm, hochberg or bh");
        return *m;
    }

private:
    std::string_view source_;
    const LineIndex& index_;
};

FamilySpec read_family(const Reader& r, const json& j, std::vector<Issue>& warnings) {
    const std::string at = "/family";
    r.expect_object(j, at, {"joint_id", "constituents", "mode", "exchangeable", "independent"});
    const auto& list = r.require(j, at, "constituents");
    if (!list.is_array()) r.fail(at + "/constituents", "expected an array of ids");
    std::vector<HypothesisId> constituents;
    for (std::size_t i = 0; i < list.size(); ++i) {
        constituents.push_back(r.id(list[i], at + "/constituents/" + std::to_string(i)));
    }
    FamilySpec spec{r.id(r.require(j, at, "joint_id"), at + "/joint_id"), std::move(constituents),
                    r.mode(r.require(j, at, "mode"), at + "/mode"),
                    r.boolean(j, at, "exchangeable"), r.boolean(j, at, "independent")};

    const auto report = validate_family(spec);
    if (!report.ok()) {
        const auto& e = report.errors.front();
        r.fail(e.code == "InvalidMode" ? at + "/mode" : at + "/constituents",
               e.code + ": " + e.message);
    }
    warnings.insert(warnings.end(), report.warnings.begin(), report.warnings.end());
    return spec;
}

AlphaConfig read_alpha(const Reader& r, const json& j) {
    const std::string at = "/alpha";
    r.expect_object(j, at, {"alpha_joint", "method", "mode"});
    const double a = r.number(r.require(j, at, "alpha_joint"), at + "/alpha_joint");
    const auto method = r.method(r.require(j, at, "method"), at + "/method");
    const auto mode = r.mode(r.require(j, at, "mode"), at + "/mode");
    if (!(a > 0.0 && a < 1.0)) r.fail(at + "/alpha_joint", "must lie in (0, 1)");
    try {
        return AlphaConfig(a, method, mode);
    } catch (const ValidationError& e) {
        r.fail(at + "/method", e.what());
    }
}

ClassificationInput read_classification(const Reader& r, const json& j) {
    const std::string at = "/classification";
    r.expect_object(j, at,
                    {"statistical_claim", "joint_inference", "all_constituents_required",
                     "exchangeable", "family_theoretically_relevant"});
    return {r.boolean(j, at, "statistical_claim"), r.boolean(j, at, "joint_inference"),
            r.boolean(j, at, "all_constituents_required"), r.boolean(j, at, "exchangeable"),
            r.boolean(j, at, "family_theoretically_relevant")};
}

sim::Scenario read_simulation(const Reader& r, const json& j, ScenarioFile& file) {
    const std::string at = "/simulation";
    r.expect_object(j, at,
                    {"k", "null_pattern", "deltas", "n", "design", "rho", "sides", "method", "reps",
                     "seed"});
    if (!file.family) r.fail(at, "a simulation needs a 'family' section");
    if (!file.alpha) r.fail(at, "a simulation needs an 'alpha' section");

    sim::Scenario s;
    const std::size_t k = file.family->k();
    if (j.contains("k") && r.count(j["k"], at + "/k") != k) {
        r.fail(at + "/k", "k must equal the number of family constituents (" + std::to_string(k) +
                              ")");
    }

    s.null_pattern.assign(k, true);
    if (j.contains("null_pattern")) {
        const auto& v = j["null_pattern"];
        const auto ptr = at + "/null_pattern";
        if (!v.is_array() || v.size() != k) {
            r.fail(ptr, "expected an array of " + std::to_string(k) + " booleans");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (!v[i].is_boolean()) r.fail(ptr + "/" + std::to_string(i), "expected true or false");
            s.null_pattern[i] = v[i].get<bool>();
        }
    }
    s.deltas.assign(k, 0.0);
    if (j.contains("deltas")) {
        const auto& v = j["deltas"];
        const auto ptr = at + "/deltas";
        if (!v.is_array() || v.size() != k) {
            r.fail(ptr, "expected an array of " + std::to_string(k) + " numbers");
        }
        for (std::size_t i = 0; i < k; ++i) {
            s.deltas[i] = r.number(v[i], ptr + "/" + std::to_string(i));
            if (s.null_pattern[i] && s.deltas[i] != 0.0) {
                r.fail(ptr + "/" + std::to_string(i), "delta must be 0 where the null is true");
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!s.null_pattern[i] && !j.contains("deltas")) {
            r.fail(at, "deltas are required when some nulls are false");
        }
    }

    s.n = r.count(r.require(j, at, "n"), at + "/n");
    if (s.n < 2) r.fail(at + "/n", "must be at least 2");

    const auto design = j.contains("design") ? r.text(j["design"], at + "/design")
                                             : std::string("independent");
    if (design == "independent") {
        s.design.kind = sim::DesignKind::Independent;
    } else if (design == "equicorrelated") {
        s.design.kind = sim::DesignKind::Equicorrelated;
        s.design.rho = r.number(r.require(j, at, "rho"), at + "/rho");
        if (!(s.design.rho >= 0.0 && s.design.rho < 1.0)) r.fail(at + "/rho", "must lie in [0, 1)");
    } else if (design == "shared_control") {
        s.design.kind = sim::DesignKind::SharedControl;
    } else {
        r.fail(at + "/design", "design must be independent, equicorrelated or shared_control");
    }
    if (j.contains("rho") && s.design.kind != sim::DesignKind::Equicorrelated) {
        r.fail(at + "/rho", "rho applies only to the equicorrelated design");
    }

    if (j.contains("sides")) {
        const auto sides = r.text(j["sides"], at + "/sides");
        if (sides == "one_sided") s.sides = Sides::OneSided;
        else if (sides == "two_sided") s.sides = Sides::TwoSided;
        else r.fail(at + "/sides", "sides must be one_sided or two_sided");
    }

    s.alpha_joint = file.alpha->alpha_joint();
    if (j.contains("method")) {
        s.method = r.method(j["method"], at + "/method");
    } else if (controls_fwer(file.alpha->method())) {
        s.method = file.alpha->method();
    } else {
        s.method = default_disjunction_method(file.family->independent);
    }
    if (!controls_fwer(s.method)) {
        r.fail(j.contains("method") ? at + "/method" : "/alpha/method",
               "the simulated disjunction needs bonferroni, sidak, holm or hochberg");
    }

    if (j.contains("reps")) {
        s.reps = r.count(j["reps"], at + "/reps");
        if (s.reps < 1 || s.reps > sim::kMaxReps) r.fail(at + "/reps", "must lie in [1, 10^8]");
    }
    if (j.contains("seed")) {
        s.seed = r.count(j["seed"], at + "/seed");
        file.seed_from_file = true;
    }
    return s;
}

} // namespace

Method default_disjunction_method(bool independent) noexcept {
    return independent ? Method::Sidak : Method::Bonferroni;
}

ScenarioFile parse_scenario_json(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) line += text[i] == '\n';
        throw ValidationError("InvalidScenarioFile", std::string(source) + ":" +
                                                         std::to_string(line) +
                                                         ": malformed JSON: " + e.what());
    }
    const LineIndex index(text);
    const Reader r(source, index);
    r.expect_object(doc, "", {"family", "alpha", "simulation", "classification"});

    ScenarioFile file;
    if (doc.contains("family")) file.family = read_family(r, doc["family"], file.warnings);
    if (doc.contains("alpha")) file.alpha = read_alpha(r, doc["alpha"]);
    if (file.family && file.alpha && file.family->mode != file.alpha->mode()) {
        r.fail("/alpha/mode", "alpha mode must match the family mode ('" +
                                  std::string(to_string(file.family->mode)) + "')");
    }
    if (doc.contains("classification")) {
        file.classification = read_classification(r, doc["classification"]);
    }
    if (doc.contains("simulation")) file.simulation = read_simulation(r, doc["simulation"], file);
    return file;
}

ScenarioFile read_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("InvalidScenarioFile", path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str(), path.string());
}

} // namespace alphagate::io
