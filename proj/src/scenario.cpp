#include "hardchoice/scenario.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hardchoice/errors.hpp"

namespace hardchoice {

std::string format_decimal(double value) {
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (ec != std::errc()) throw Error(ErrorKind::Io, "cannot format number");
    return std::string(buf.data(), end);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

void validate_scenario(const Scenario& s) {
    auto semantic = [](const std::string& msg) { throw Error(ErrorKind::SemanticError, msg); };
    try {
        validate_problem(s.problem);
        validate_tolerances(s.tolerances);
        context_affinity(s.context_tag);
        if (s.gate1) validate_gate_model(*s.gate1);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SemanticError) throw;
        semantic(e.what());
    }
    if (s.jury.dimension() != s.problem.dimension()) {
        semantic("jury dimension " + std::to_string(s.jury.dimension()) + " differs from " +
                 std::to_string(s.problem.dimension()) + " objectives");
    }
    if (s.reference_model && s.reference_model->dimension() != s.problem.dimension()) {
        semantic("reference model dimension differs from the objective count");
    }
    for (const auto& [pair, relation] : s.ground_truth) {
        if (pair.first == pair.second) semantic("ground truth pairs an option with itself: " + pair.first);
        for (const auto* name : {&pair.first, &pair.second}) {
            bool known = false;
            for (const auto& o : s.problem.options) known = known || o.name == *name;
            if (!known) semantic("ground truth names unknown option '" + *name + "'");
        }
        if (s.ground_truth.contains({pair.second, pair.first})) {
            semantic("ground truth lists pair (" + pair.first + ", " + pair.second + ") in both orders");
        }
    }
}

Scenario canonical_scenario() {
    Instance canon = canonical_instance();
    Scenario s{std::move(canon.problem), std::move(canon.jury), {}, "career", {}, std::nullopt, std::nullopt};
    s.tolerances.tau = 0.5;
    s.tolerances.delta = 0.01;
    s.reference_model = ScalarisedModel({0.5, 0.5});
    return s;
}

namespace {

enum class Section { None, Objectives, Options, Jury, Tolerances, Context, GroundTruth, ReferenceModel, Gate1 };

constexpr std::array<std::pair<std::string_view, Section>, 8> kSections{{
    {"objectives", Section::Objectives},
    {"options", Section::Options},
    {"jury", Section::Jury},
    {"tolerances", Section::Tolerances},
    {"context", Section::Context},
    {"ground_truth", Section::GroundTruth},
    {"reference_model", Section::ReferenceModel},
    {"gate1", Section::Gate1},
}};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_name_char(char c) {
    return !is_space(c) && c != ',' && c != '=' && c != '[' && c != ']' && c != '#' && c != '\n';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(line_, pos_ + 1, message); }
    // Points at the start of the most recent name.
    [[noreturn]] void fail_token(const std::string& message) const {
        throw SyntaxError(line_, token_start_ + 1, message);
    }

    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing text");
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string name(std::string_view what) {
        skip_ws();
        const std::size_t start = pos_;
        token_start_ = start;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        if (pos_ == start) fail("expected " + std::string(what));
        return std::string(text_.substr(start, pos_ - start));
    }

    // -?digits(.digits)?
    double number() {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        if (p < text_.size() && text_[p] == '-') ++p;
        const std::size_t int_start = p;
        while (p < text_.size() && is_digit(text_[p])) ++p;
        if (p == int_start) fail("expected a decimal number");
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            const std::size_t frac_start = p;
            while (p < text_.size() && is_digit(text_[p])) ++p;
            if (p == frac_start) fail("expected digits after '.'");
        }
        if (p < text_.size() && is_name_char(text_[p])) {
            pos_ = p;
            fail("malformed number");
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, value, std::chars_format::fixed);
        if (ec != std::errc() || ptr != text_.data() + p) fail("number out of range");
        pos_ = p;
        return value;
    }

    std::vector<double> number_list() {
        std::vector<double> out{number()};
        while (accept(',')) out.push_back(number());
        return out;
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
    std::size_t token_start_ = 0;
};

struct RawJuror {
    std::string id;
    UtilityForm form;
    std::vector<double> weights;
    std::optional<double> epsilon;
    std::size_t line;
};

struct RawDocument {
    std::set<Section> seen;
    std::vector<Objective> objectives;
    std::vector<OptionPoint> options;
    std::vector<RawJuror> jurors;
    std::map<std::string, std::pair<double, std::size_t>> tolerances;
    std::optional<std::string> context;
    std::vector<std::tuple<std::string, std::string, Relation, std::size_t>> ground_truth;
    std::optional<std::tuple<UtilityForm, std::vector<double>, std::size_t>> reference;
    std::map<std::string, std::pair<double, std::size_t>> gate1;
};

UtilityForm parse_form(LineCursor& cur) {
    const std::string word = cur.name("a utility form");
    auto form = utility_form_from_string(word);
    if (!form) cur.fail_token("unknown utility form '" + word + "' (expected linear or cobb_douglas)");
    return *form;
}

void parse_keyed(LineCursor& cur, std::map<std::string, std::pair<double, std::size_t>>& into,
                 std::initializer_list<std::string_view> allowed) {
    const std::string key = cur.name("a key");
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) cur.fail_token("unknown key '" + key + "'");
    if (into.contains(key)) cur.fail("key '" + key + "' given twice");
    cur.expect('=');
    into[key] = {cur.number(), cur.line()};
    cur.expect_end();
}

RawDocument read_document(std::string_view text) {
    RawDocument doc;
    Section section = Section::None;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(begin, end - begin);
        ++line_no;
        begin = end + 1;

        LineCursor cur(line, line_no);
        if (cur.at_end() || cur.accept('#')) continue;

        if (cur.accept('[')) {
            const std::string header = cur.name("a section name");
            cur.expect(']');
            cur.expect_end();
            auto it = std::find_if(kSections.begin(), kSections.end(),
                                   [&](const auto& entry) { return entry.first == header; });
            if (it == kSections.end()) cur.fail_token("unknown section '" + header + "'");
            if (!doc.seen.insert(it->second).second) cur.fail("section '" + header + "' appears twice");
            section = it->second;
            continue;
        }

        switch (section) {
            case Section::None: cur.fail("entry outside of any section");
            case Section::Objectives:
                doc.objectives.push_back({cur.name("an objective name")});
                cur.expect_end();
                break;
            case Section::Options: {
                OptionPoint option{cur.name("an option name"), {}};
                cur.expect('=');
                option.scores = cur.number_list();
                cur.expect_end();
                doc.options.push_back(std::move(option));
                break;
            }
            case Section::Jury: {
                RawJuror juror{cur.name("a juror id"), UtilityForm::Linear, {}, std::nullopt, line_no};
                juror.form = parse_form(cur);
                juror.weights = cur.number_list();
                if (!cur.at_end()) {
                    const std::string key = cur.name("'epsilon'");
                    if (key != "epsilon") cur.fail_token("expected 'epsilon', found '" + key + "'");
                    cur.expect('=');
                    juror.epsilon = cur.number();
                }
                cur.expect_end();
                doc.jurors.push_back(std::move(juror));
                break;
            }
            case Section::Tolerances:
                parse_keyed(cur, doc.tolerances, {"epsilon_default", "tau", "delta"});
                break;
            case Section::Context:
                if (doc.context) cur.fail("context holds a single tag");
                doc.context = cur.name("a context tag");
                cur.expect_end();
                break;
            case Section::GroundTruth: {
                std::string first = cur.name("an option name");
                std::string second = cur.name("an option name");
                const std::string word = cur.name("a relation");
                auto relation = relation_from_string(word);
                if (!relation) cur.fail_token("unknown relation '" + word + "'");
                cur.expect_end();
                doc.ground_truth.emplace_back(std::move(first), std::move(second), *relation, line_no);
                break;
            }
            case Section::ReferenceModel: {
                if (doc.reference) cur.fail("reference_model holds a single model");
                UtilityForm form = parse_form(cur);
                std::vector<double> weights = cur.number_list();
                cur.expect_end();
                doc.reference.emplace(form, std::move(weights), line_no);
                break;
            }
            case Section::Gate1:
                parse_keyed(cur, doc.gate1, {"w_affinity", "w_dispersion", "w_disagreement", "bias", "threshold"});
                break;
        }
    }
    return doc;
}

[[noreturn]] void semantic_at(std::size_t line, const std::string& message) {
    throw Error(ErrorKind::SemanticError, "line " + std::to_string(line) + ": " + message);
}

GateOneModel build_gate_model(const RawDocument& doc) {
    GateOneModel model;
    auto get = [&](const char* key, double& into, bool required) {
        auto it = doc.gate1.find(key);
        if (it == doc.gate1.end()) {
            if (required) throw Error(ErrorKind::SemanticError, std::string("gate1 block lacks '") + key + "'");
            return;
        }
        into = it->second.first;
    };
    get("w_affinity", model.w_affinity, true);
    get("w_dispersion", model.w_dispersion, true);
    get("w_disagreement", model.w_disagreement, true);
    get("bias", model.bias, true);
    get("threshold", model.threshold, false);
    validate_gate_model(model);
    return model;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    RawDocument doc = read_document(text);
    for (auto required : {Section::Objectives, Section::Options, Section::Jury, Section::Context}) {
        if (!doc.seen.contains(required)) {
            auto it = std::find_if(kSections.begin(), kSections.end(),
                                   [&](const auto& entry) { return entry.second == required; });
            throw SyntaxError(1, 1, "missing [" + std::string(it->first) + "] section");
        }
    }
    if (!doc.context) throw Error(ErrorKind::SemanticError, "[context] section is empty");

    Tolerances tolerances;
    if (auto it = doc.tolerances.find("epsilon_default"); it != doc.tolerances.end()) {
        tolerances.epsilon_default = it->second.first;
    }
    if (auto it = doc.tolerances.find("tau"); it != doc.tolerances.end()) tolerances.tau = it->second.first;
    if (auto it = doc.tolerances.find("delta"); it != doc.tolerances.end()) tolerances.delta = it->second.first;

    std::vector<Juror> jurors;
    for (const auto& raw : doc.jurors) {
        try {
            jurors.emplace_back(raw.id, raw.weights, raw.form, raw.epsilon.value_or(tolerances.epsilon_default));
        } catch (const Error& e) {
            semantic_at(raw.line, e.what());
        }
    }
    if (jurors.empty()) throw Error(ErrorKind::SemanticError, "[jury] section is empty");

    std::optional<ScalarisedModel> reference;
    if (doc.reference) {
        auto& [form, weights, line] = *doc.reference;
        try {
            reference.emplace(weights, form);
        } catch (const Error& e) {
            semantic_at(line, e.what());
        }
    }

    std::map<OptionPair, Relation> truth;
    for (auto& [first, second, relation, line] : doc.ground_truth) {
        if (!truth.emplace(OptionPair{first, second}, relation).second) {
            semantic_at(line, "ground truth pair (" + first + ", " + second + ") given twice");
        }
    }

    std::optional<GateOneModel> gate1;
    if (doc.seen.contains(Section::Gate1)) gate1 = build_gate_model(doc);

    try {
        Scenario scenario{ChoiceProblem{std::move(doc.objectives), std::move(doc.options)},
                          Jury(std::move(jurors)),
                          tolerances,
                          *doc.context,
                          std::move(truth),
                          std::move(reference),
                          gate1};
        validate_scenario(scenario);
        return scenario;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SemanticError) throw;
        throw Error(ErrorKind::SemanticError, e.what());
    }
}

namespace {

void write_list(std::ostringstream& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << format_decimal(values[i]);
}

void write_gate(std::ostringstream& out, const GateOneModel& m) {
    out << "[gate1]\n";
    out << "w_affinity = " << format_decimal(m.w_affinity) << '\n';
    out << "w_dispersion = " << format_decimal(m.w_dispersion) << '\n';
    out << "w_disagreement = " << format_decimal(m.w_disagreement) << '\n';
    out << "bias = " << format_decimal(m.bias) << '\n';
    out << "threshold = " << format_decimal(m.threshold) << '\n';
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "# hardchoice scenario\n";
    out << "[objectives]\n";
    for (const auto& objective : s.problem.objectives) out << objective.name << '\n';

    out << "\n[options]\n";
    for (const auto& option : s.problem.options) {
        out << option.name << " = ";
        write_list(out, option.scores);
        out << '\n';
    }

    out << "\n[jury]\n";
    for (const auto& juror : s.jury) {
        out << juror.id() << ' ' << to_string(juror.form()) << ' ';
        write_list(out, juror.weights());
        out << " epsilon = " << format_decimal(juror.epsilon()) << '\n';
    }

    out << "\n[tolerances]\n";
    out << "epsilon_default = " << format_decimal(s.tolerances.epsilon_default) << '\n';
    if (s.tolerances.tau) out << "tau = " << format_decimal(*s.tolerances.tau) << '\n';
    out << "delta = " << format_decimal(s.tolerances.delta) << '\n';

    out << "\n[context]\n" << s.context_tag << '\n';

    if (!s.ground_truth.empty()) {
        out << "\n[ground_truth]\n";
        for (const auto& [pair, relation] : s.ground_truth) {
            out << pair.first << ' ' << pair.second << ' ' << to_string(relation) << '\n';
        }
    }
    if (s.reference_model) {
        out << "\n[reference_model]\n" << to_string(s.reference_model->form()) << ' ';
        write_list(out, s.reference_model->weights());
        out << '\n';
    }
    if (s.gate1) {
        out << '\n';
        write_gate(out, *s.gate1);
    }
    return out.str();
}

GateOneModel parse_gate_model(std::string_view text) {
    RawDocument doc = read_document(text);
    if (!doc.seen.contains(Section::Gate1)) throw SyntaxError(1, 1, "missing [gate1] section");
    if (doc.seen.size() != 1) throw Error(ErrorKind::SemanticError, "a model file holds only a [gate1] section");
    return build_gate_model(doc);
}

std::string serialize_gate_model(const GateOneModel& model) {
    std::ostringstream out;
    out << "# hardchoice gate-1 model\n";
    write_gate(out, model);
    return out.str();
}

}  // namespace hardchoice
