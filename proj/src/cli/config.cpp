#include "fpp/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fpp/errors.hpp"

namespace fpp::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Line index

namespace {

class LineScanner {
public:
    LineScanner(std::string_view text, std::map<std::string, int>& lines) : text_(text), lines_(lines) {}

    void scan()
    {
        skip_ws();
        value("");
    }

private:
    void skip_ws()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') ++line_;
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
            ++pos_;
        }
    }

    std::string string_token()
    {
        std::string out;
        ++pos_; // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void value(const std::string& pointer)
    {
        if (pos_ >= text_.size()) return;
        lines_.emplace(pointer, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            for (;;) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == '}') break;
                if (text_[pos_] != '"') return;
                const std::string key = string_token();
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ':') ++pos_;
                skip_ws();
                value(pointer + "/" + escape(key));
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
            }
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            for (std::size_t i = 0;; ++i) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == ']') break;
                value(pointer + "/" + std::to_string(i));
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
            }
            ++pos_;
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) ++pos_;
        }
    }

    std::string_view text_;
    std::map<std::string, int>& lines_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

} // namespace

JsonLineIndex::JsonLineIndex(std::string_view text) { LineScanner(text, lines_).scan(); }

int JsonLineIndex::line_of(std::string pointer) const
{
    for (;;) {
        if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
        if (pointer.empty()) return 1;
        pointer.erase(pointer.rfind('/'));
    }
}

// ---------------------------------------------------------------------------
// Kinds

const std::vector<std::string>& experiment_kinds()
{
    static const std::vector<std::string> kinds{"time-constant", "directions", "shape", "law-split",    "measure",
                                                "positivity",    "tails",      "ld",    "m-invariance", "point-to-line"};
    return kinds;
}

std::string kind_name(const ExperimentParams& params) { return experiment_kinds()[params.index()]; }

bool needs_M(const ExperimentParams& params)
{
    return !std::holds_alternative<LawSplitParams>(params) && !std::holds_alternative<TailsParams>(params) &&
           !std::holds_alternative<MInvarianceParams>(params);
}

double ExperimentConfig::p_c() const
{
    if (dimension == 2) return 0.5;
    return p_c_given.value_or(0.0);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Reader {
public:
    Reader(const json& root, const JsonLineIndex& index, std::string source)
        : root_(root), index_(index), source_(std::move(source))
    {
    }

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        throw ConfigError(pointer, message, source_ + ":" + std::to_string(index_.line_of(pointer)));
    }

    const json& at(const std::string& pointer) const { return root_.at(json::json_pointer(pointer)); }
    bool has(const std::string& pointer) const { return root_.contains(json::json_pointer(pointer)); }

    void only_keys(const std::string& pointer, std::initializer_list<const char*> keys) const
    {
        const json& obj = at(pointer);
        if (!obj.is_object()) fail(pointer, "expected an object");
        for (const auto& [key, value] : obj.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
                fail(pointer + "/" + key, "unknown field '" + key + "'");
        }
    }

    const json& require(const std::string& pointer) const
    {
        if (!has(pointer)) {
            const std::string parent = pointer.substr(0, pointer.rfind('/'));
            fail(parent, "missing required field '" + pointer.substr(pointer.rfind('/') + 1) + "'");
        }
        return at(pointer);
    }

    double number(const std::string& pointer) const
    {
        const json& v = require(pointer);
        if (!v.is_number()) fail(pointer, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(pointer, "expected a finite number");
        return d;
    }
    double number_or(const std::string& pointer, double fallback) const { return has(pointer) ? number(pointer) : fallback; }

    std::optional<double> optional_number(const std::string& pointer) const
    {
        return has(pointer) ? std::optional<double>(number(pointer)) : std::nullopt;
    }

    int integer(const std::string& pointer) const
    {
        const json& v = require(pointer);
        if (!v.is_number_integer()) fail(pointer, "expected an integer");
        const auto i = v.get<std::int64_t>();
        if (i < -1000000000 || i > 1000000000) fail(pointer, "integer out of range");
        return static_cast<int>(i);
    }
    int integer_or(const std::string& pointer, int fallback) const { return has(pointer) ? integer(pointer) : fallback; }

    int positive(const std::string& pointer) const
    {
        const int i = integer(pointer);
        if (i < 1) fail(pointer, "expected a positive integer");
        return i;
    }
    int reps(const std::string& pointer) const
    {
        const int i = integer(pointer);
        if (i < 2) fail(pointer, "at least 2 replications are required");
        return i;
    }

    std::string string(const std::string& pointer) const
    {
        const json& v = require(pointer);
        if (!v.is_string()) fail(pointer, "expected a string");
        return v.get<std::string>();
    }

    bool boolean_or(const std::string& pointer, bool fallback) const
    {
        if (!has(pointer)) return fallback;
        const json& v = at(pointer);
        if (!v.is_boolean()) fail(pointer, "expected true or false");
        return v.get<bool>();
    }

    std::size_t array_size(const std::string& pointer, bool allow_empty = false) const
    {
        const json& v = require(pointer);
        if (!v.is_array()) fail(pointer, "expected an array");
        if (!allow_empty && v.empty()) fail(pointer, "expected a non-empty array");
        return v.size();
    }

    std::vector<int> int_grid(const std::string& pointer) const
    {
        std::vector<int> out;
        const std::size_t n = array_size(pointer);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string p = pointer + "/" + std::to_string(i);
            out.push_back(positive(p));
            if (i > 0 && out[i] <= out[i - 1]) fail(p, "grid must be strictly increasing");
        }
        return out;
    }

    std::vector<double> real_grid(const std::string& pointer, bool positive_values = true) const
    {
        std::vector<double> out;
        const std::size_t n = array_size(pointer);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string p = pointer + "/" + std::to_string(i);
            out.push_back(number(p));
            if (positive_values && !(out[i] > 0.0)) fail(p, "expected a positive number");
            if (i > 0 && out[i] <= out[i - 1]) fail(p, "grid must be strictly increasing");
        }
        return out;
    }

    std::vector<double> reals(const std::string& pointer) const
    {
        std::vector<double> out;
        const std::size_t n = array_size(pointer);
        for (std::size_t i = 0; i < n; ++i) out.push_back(number(pointer + "/" + std::to_string(i)));
        return out;
    }

    LatticePoint point(const std::string& pointer, int dimension) const
    {
        const std::size_t n = array_size(pointer);
        if (static_cast<int>(n) != dimension)
            fail(pointer, "expected " + std::to_string(dimension) + " coordinates, got " + std::to_string(n));
        std::vector<int> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(integer(pointer + "/" + std::to_string(i)));
        LatticePoint p(c);
        if (p == LatticePoint::origin(dimension)) fail(pointer, "direction must be nonzero");
        return p;
    }
    LatticePoint direction_or_e1(const std::string& pointer, int dimension) const
    {
        return has(pointer) ? point(pointer, dimension) : LatticePoint::unit(dimension, 0);
    }

private:
    const json& root_;
    const JsonLineIndex& index_;
    std::string source_;
};

ReferenceSpec read_reference(const Reader& r, const std::string& p, int dimension)
{
    ReferenceSpec ref;
    if (!r.has(p)) return ref;
    r.only_keys(p, {"kind", "class_values", "n", "reps", "interpolation"});
    const std::string kind = r.string(p + "/kind");
    if (kind == "l1") {
        ref.kind = ReferenceSpec::Kind::l1;
    } else if (kind == "values") {
        ref.kind = ReferenceSpec::Kind::values;
        ref.class_values = r.reals(p + "/class_values");
        if (static_cast<int>(ref.class_values.size()) != dimension)
            r.fail(p + "/class_values", "expected one value per dimension");
        for (std::size_t i = 0; i < ref.class_values.size(); ++i)
            if (!(ref.class_values[i] > 0.0)) r.fail(p + "/class_values/" + std::to_string(i), "expected a positive number");
    } else if (kind == "profile") {
        ref.kind = ReferenceSpec::Kind::profile;
        ref.profile_n = r.has(p + "/n") ? r.positive(p + "/n") : ref.profile_n;
        ref.profile_reps = r.has(p + "/reps") ? r.reps(p + "/reps") : ref.profile_reps;
    } else {
        r.fail(p + "/kind", "unknown reference kind '" + kind + "' (expected l1, values or profile)");
    }
    if (r.has(p + "/interpolation")) {
        if (ref.kind == ReferenceSpec::Kind::l1) r.fail(p + "/interpolation", "the l1 reference is exact and takes no interpolation");
        const std::string how = r.string(p + "/interpolation");
        if (how != "radial" && how != "chamber-linear")
            r.fail(p + "/interpolation", "unknown interpolation '" + how + "' (expected radial or chamber-linear)");
        ref.chamber_linear = how == "chamber-linear";
    }
    return ref;
}

ThetaSpec read_theta(const Reader& r, const std::string& p)
{
    ThetaSpec t;
    if (!r.has(p)) return t;
    r.only_keys(p, {"half_width", "window_fraction", "reps"});
    if (r.has(p + "/half_width")) t.half_width = r.positive(p + "/half_width");
    t.window_fraction = r.number_or(p + "/window_fraction", t.window_fraction);
    if (!(t.window_fraction > 0.0 && t.window_fraction <= 1.0)) r.fail(p + "/window_fraction", "expected a value in (0, 1]");
    if (r.has(p + "/reps")) t.reps = r.reps(p + "/reps");
    return t;
}

FunctionSpec read_function(const Reader& r, const std::string& p, int dimension)
{
    r.only_keys(p, {"kind", "value", "powers", "center", "radius"});
    FunctionSpec f;
    const std::string kind = r.string(p + "/kind");
    if (kind == "constant") {
        f.kind = FunctionSpec::Kind::constant;
        f.value = r.number_or(p + "/value", 1.0);
    } else if (kind == "monomial") {
        f.kind = FunctionSpec::Kind::monomial;
        const std::size_t n = r.array_size(p + "/powers");
        if (static_cast<int>(n) != dimension) r.fail(p + "/powers", "expected one power per dimension");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string q = p + "/powers/" + std::to_string(i);
            f.powers.push_back(r.integer(q));
            if (f.powers.back() < 0) r.fail(q, "powers must be nonnegative");
        }
    } else if (kind == "bump") {
        f.kind = FunctionSpec::Kind::bump;
        f.center = r.reals(p + "/center");
        if (static_cast<int>(f.center.size()) != dimension) r.fail(p + "/center", "expected one coordinate per dimension");
        f.radius = r.number(p + "/radius");
        if (!(f.radius > 0.0)) r.fail(p + "/radius", "expected a positive number");
    } else if (kind == "zero") {
        f.kind = FunctionSpec::Kind::zero;
    } else {
        r.fail(p + "/kind", "unknown test function kind '" + kind + "'");
    }
    return f;
}

ExperimentParams read_experiment(const Reader& r, int d)
{
    const std::string e = "/experiment";
    if (!r.require(e).is_object()) r.fail(e, "expected an object");
    const std::string kind = r.string(e + "/kind");
    if (kind == "time-constant") {
        r.only_keys(e, {"kind", "direction", "n_grid", "reps"});
        return TimeConstantParams{r.direction_or_e1(e + "/direction", d), r.int_grid(e + "/n_grid"), r.reps(e + "/reps")};
    }
    if (kind == "directions") {
        r.only_keys(e, {"kind", "directions", "n", "reps"});
        DirectionsParams p;
        if (r.has(e + "/directions")) {
            const std::size_t n = r.array_size(e + "/directions");
            for (std::size_t i = 0; i < n; ++i) p.directions.push_back(r.point(e + "/directions/" + std::to_string(i), d));
        }
        p.n = r.positive(e + "/n");
        p.reps = r.reps(e + "/reps");
        return p;
    }
    if (kind == "shape") {
        r.only_keys(e, {"kind", "t_grid", "reps", "reference"});
        return ShapeParams{r.real_grid(e + "/t_grid"), r.reps(e + "/reps"), read_reference(r, e + "/reference", d)};
    }
    if (kind == "law-split") {
        r.only_keys(e, {"kind", "direction", "n", "reps", "theta"});
        LawSplitParams p{r.direction_or_e1(e + "/direction", d), r.positive(e + "/n"), r.reps(e + "/reps"), std::nullopt};
        if (r.has(e + "/theta")) p.theta = read_theta(r, e + "/theta");
        return p;
    }
    if (kind == "measure") {
        r.only_keys(e, {"kind", "t_grid", "reps", "functions", "reference", "theta"});
        MeasureParams p;
        p.t_grid = r.real_grid(e + "/t_grid");
        p.reps = r.reps(e + "/reps");
        const std::size_t n = r.array_size(e + "/functions");
        for (std::size_t i = 0; i < n; ++i) p.functions.push_back(read_function(r, e + "/functions/" + std::to_string(i), d));
        p.reference = read_reference(r, e + "/reference", d);
        p.theta = read_theta(r, e + "/theta");
        return p;
    }
    if (kind == "positivity") {
        r.only_keys(e, {"kind", "p_zero_grid", "n_grid", "reps"});
        PositivityParams p{r.real_grid(e + "/p_zero_grid", false), r.int_grid(e + "/n_grid"), r.reps(e + "/reps")};
        for (std::size_t i = 0; i < p.p_zero_grid.size(); ++i)
            if (!(p.p_zero_grid[i] >= 0.0 && p.p_zero_grid[i] <= 1.0))
                r.fail(e + "/p_zero_grid/" + std::to_string(i), "expected a probability");
        return p;
    }
    if (kind == "tails") {
        r.only_keys(e, {"kind", "event", "grid", "reps", "half_width", "window_fraction", "chem_factor"});
        TailsParams p;
        try {
            p.event = tail_event_from_string(r.string(e + "/event"));
        } catch (const DomainError&) {
            r.fail(e + "/event", "unknown event (expected finite_cluster, hole or chem)");
        }
        p.grid = r.int_grid(e + "/grid");
        p.reps = r.reps(e + "/reps");
        if (r.has(e + "/half_width")) p.half_width = r.positive(e + "/half_width");
        p.window_fraction = r.number_or(e + "/window_fraction", p.window_fraction);
        if (!(p.window_fraction > 0.0 && p.window_fraction <= 1.0))
            r.fail(e + "/window_fraction", "expected a value in (0, 1]");
        p.chem_factor = r.number_or(e + "/chem_factor", p.chem_factor);
        if (!(p.chem_factor > 0.0)) r.fail(e + "/chem_factor", "expected a positive number");
        if (p.event == TailEvent::chem) {
            if (p.half_width < 2 * p.grid.back()) r.fail(e + "/half_width", "chem probe needs half_width >= 2 * max grid value");
        } else if (static_cast<int>(std::floor(p.window_fraction * p.half_width)) + p.grid.back() > p.half_width) {
            r.fail(e + "/grid", "window half-width plus max r must not exceed half_width");
        }
        return p;
    }
    if (kind == "ld") {
        r.only_keys(e, {"kind", "n_grid", "reps", "epsilon", "epsilon_fraction", "mu_hat", "mu_n", "mu_reps"});
        LdParams p;
        p.n_grid = r.int_grid(e + "/n_grid");
        p.reps = r.reps(e + "/reps");
        p.epsilon = r.optional_number(e + "/epsilon");
        p.epsilon_fraction = r.optional_number(e + "/epsilon_fraction");
        if (p.epsilon.has_value() == p.epsilon_fraction.has_value())
            r.fail(e, "give exactly one of 'epsilon' and 'epsilon_fraction'");
        if (p.epsilon && !(*p.epsilon > 0.0)) r.fail(e + "/epsilon", "expected a positive number");
        if (p.epsilon_fraction && !(*p.epsilon_fraction > 0.0 && *p.epsilon_fraction < 1.0))
            r.fail(e + "/epsilon_fraction", "expected a value in (0, 1)");
        p.mu_hat = r.optional_number(e + "/mu_hat");
        if (p.mu_hat && !(*p.mu_hat > 0.0)) r.fail(e + "/mu_hat", "expected a positive number");
        if (p.epsilon && p.mu_hat && !(*p.epsilon < *p.mu_hat)) r.fail(e + "/epsilon", "epsilon must be below mu_hat");
        if (r.has(e + "/mu_n")) p.mu_n = r.positive(e + "/mu_n");
        if (r.has(e + "/mu_reps")) p.mu_reps = r.reps(e + "/mu_reps");
        return p;
    }
    if (kind == "m-invariance") {
        r.only_keys(e, {"kind", "M_values", "direction", "n", "reps"});
        return MInvarianceParams{r.real_grid(e + "/M_values"), r.direction_or_e1(e + "/direction", d), r.positive(e + "/n"),
                                 r.reps(e + "/reps")};
    }
    if (kind == "point-to-line") {
        r.only_keys(e, {"kind", "n_grid", "reps"});
        return PointToLineParams{r.int_grid(e + "/n_grid"), r.reps(e + "/reps")};
    }
    std::string known;
    for (const auto& k : experiment_kinds()) known += (known.empty() ? "" : ", ") + k;
    r.fail(e + "/kind", "unknown experiment kind '" + kind + "' (expected one of " + known + ")");
}

/// Largest finite support point of a law with bounded support, if any.
std::optional<double> bounded_support_max(const PassageLaw& law)
{
    if (law.p_finite() <= 0.0) return std::nullopt;
    double top = kInfinity;
    if (const auto* c = std::get_if<ConstantPart>(&law.finite_part())) top = c->value;
    else if (const auto* u = std::get_if<UniformPart>(&law.finite_part())) top = u->high;
    else if (const auto* a = std::get_if<AtomsPart>(&law.finite_part())) {
        top = 0.0;
        for (const auto& [v, w] : a->atoms) top = std::max(top, v);
    }
    top = std::min(top, law.cap());
    return top < kInfinity ? std::optional<double>(top) : std::nullopt;
}

} // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
        const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
        throw ConfigError("", std::string("invalid JSON: ") + e.what(), source + ":" + std::to_string(line));
    }
    const JsonLineIndex index(text);
    const Reader r(root, index, source);
    r.only_keys("", {"dimension", "p_c", "law", "M", "master_seed", "output_dir", "plots", "experiment"});

    ExperimentConfig c;
    c.dimension = r.integer_or("/dimension", 2);
    if (c.dimension < 2 || c.dimension > 6) r.fail("/dimension", "dimension must be between 2 and 6");
    c.p_c_given = r.optional_number("/p_c");
    if (c.dimension == 2 && c.p_c_given && *c.p_c_given != 0.5) r.fail("/p_c", "p_c is exactly 0.5 in dimension 2");
    if (c.dimension != 2) {
        if (!c.p_c_given) r.fail("", "missing required field 'p_c' (needed when dimension != 2)");
        if (!(*c.p_c_given > 0.0 && *c.p_c_given < 1.0)) r.fail("/p_c", "expected a value in (0, 1)");
    }
    try {
        c.law = law_from_json(r.require("/law"));
    } catch (const ConfigError& e) {
        r.fail(e.pointer(), e.reason());
    }
    c.M = r.optional_number("/M");
    if (c.M && !(*c.M > 0.0)) r.fail("/M", "expected a positive number");
    if (r.has("/master_seed")) {
        const json& s = r.at("/master_seed");
        if (!s.is_number_unsigned()) r.fail("/master_seed", "expected a nonnegative integer");
        c.master_seed = s.get<std::uint64_t>();
    }
    if (r.has("/output_dir")) c.output_dir = r.string("/output_dir");
    c.plots = r.boolean_or("/plots", true);
    c.experiment = read_experiment(r, c.dimension);
    if (needs_M(c.experiment) && !c.M) {
        c.M = bounded_support_max(c.law);
        if (!c.M) r.fail("", "missing required field 'M' (the law has unbounded finite support)");
    }
    return c;
}

ExperimentConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read config file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json point_json(const LatticePoint& p) { return p.coords(); }

const char* interpolation_name(const ReferenceSpec& r) { return r.chamber_linear ? "chamber-linear" : "radial"; }

json reference_json(const ReferenceSpec& r)
{
    switch (r.kind) {
    case ReferenceSpec::Kind::l1: return {{"kind", "l1"}};
    case ReferenceSpec::Kind::values:
        return {{"kind", "values"}, {"class_values", r.class_values}, {"interpolation", interpolation_name(r)}};
    case ReferenceSpec::Kind::profile:
        return {{"kind", "profile"}, {"n", r.profile_n}, {"reps", r.profile_reps}, {"interpolation", interpolation_name(r)}};
    }
    return {};
}

json theta_json(const ThetaSpec& t)
{
    return {{"half_width", t.half_width}, {"window_fraction", t.window_fraction}, {"reps", t.reps}};
}

json function_json(const FunctionSpec& f)
{
    switch (f.kind) {
    case FunctionSpec::Kind::constant: return {{"kind", "constant"}, {"value", f.value}};
    case FunctionSpec::Kind::monomial: return {{"kind", "monomial"}, {"powers", f.powers}};
    case FunctionSpec::Kind::bump: return {{"kind", "bump"}, {"center", f.center}, {"radius", f.radius}};
    case FunctionSpec::Kind::zero: return {{"kind", "zero"}};
    }
    return {};
}

struct ExperimentToJson {
    json operator()(const TimeConstantParams& p) const
    {
        return {{"direction", point_json(p.direction)}, {"n_grid", p.n_grid}, {"reps", p.reps}};
    }
    json operator()(const DirectionsParams& p) const
    {
        json j{{"n", p.n}, {"reps", p.reps}};
        if (!p.directions.empty()) {
            j["directions"] = json::array();
            for (const auto& x : p.directions) j["directions"].push_back(point_json(x));
        }
        return j;
    }
    json operator()(const ShapeParams& p) const
    {
        return {{"t_grid", p.t_grid}, {"reps", p.reps}, {"reference", reference_json(p.reference)}};
    }
    json operator()(const LawSplitParams& p) const
    {
        json j{{"direction", point_json(p.direction)}, {"n", p.n}, {"reps", p.reps}};
        if (p.theta) j["theta"] = theta_json(*p.theta);
        return j;
    }
    json operator()(const MeasureParams& p) const
    {
        json fs = json::array();
        for (const auto& f : p.functions) fs.push_back(function_json(f));
        return {{"t_grid", p.t_grid},
                {"reps", p.reps},
                {"functions", fs},
                {"reference", reference_json(p.reference)},
                {"theta", theta_json(p.theta)}};
    }
    json operator()(const PositivityParams& p) const
    {
        return {{"p_zero_grid", p.p_zero_grid}, {"n_grid", p.n_grid}, {"reps", p.reps}};
    }
    json operator()(const TailsParams& p) const
    {
        return {{"event", to_string(p.event)},   {"grid", p.grid},
                {"reps", p.reps},                {"half_width", p.half_width},
                {"window_fraction", p.window_fraction}, {"chem_factor", p.chem_factor}};
    }
    json operator()(const LdParams& p) const
    {
        json j{{"n_grid", p.n_grid}, {"reps", p.reps}, {"mu_n", p.mu_n}, {"mu_reps", p.mu_reps}};
        if (p.epsilon) j["epsilon"] = *p.epsilon;
        if (p.epsilon_fraction) j["epsilon_fraction"] = *p.epsilon_fraction;
        if (p.mu_hat) j["mu_hat"] = *p.mu_hat;
        return j;
    }
    json operator()(const MInvarianceParams& p) const
    {
        return {{"M_values", p.M_values}, {"direction", point_json(p.direction)}, {"n", p.n}, {"reps", p.reps}};
    }
    json operator()(const PointToLineParams& p) const { return {{"n_grid", p.n_grid}, {"reps", p.reps}}; }
};

} // namespace

json config_to_json(const ExperimentConfig& c)
{
    json j;
    j["dimension"] = c.dimension;
    if (c.p_c_given) j["p_c"] = *c.p_c_given;
    j["law"] = law_to_json(c.law);
    if (c.M) j["M"] = *c.M;
    j["master_seed"] = c.master_seed;
    if (c.output_dir) j["output_dir"] = *c.output_dir;
    j["plots"] = c.plots;
    json e = std::visit(ExperimentToJson{}, c.experiment);
    e["kind"] = kind_name(c.experiment);
    j["experiment"] = e;
    return j;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void require_supercritical_config(const PassageLaw& law, double p_c)
{
    if (!(1.0 - law.p_inf() > p_c)) {
        std::ostringstream ss;
        ss << "law is not supercritical: 1 - p_inf = " << 1.0 - law.p_inf() << " <= p_c = " << p_c;
        throw SupercriticalityError(ss.str());
    }
}

void require_M_config(const PassageLaw& law, double M, double p_c)
{
    if (!(law.cdf(M) > p_c)) {
        std::ostringstream ss;
        ss << "M = " << M << " is invalid: F([0,M]) = " << law.cdf(M) << " <= p_c = " << p_c;
        throw SupercriticalityError(ss.str());
    }
}

} // namespace

void validate_config(const ExperimentConfig& c)
{
    const double p_c = c.p_c();
    const auto& e = c.experiment;
    if (const auto* pos = std::get_if<PositivityParams>(&e)) {
        for (double p0 : pos->p_zero_grid) {
            if (p0 + c.law.p_inf() > 1.0)
                throw ConfigError("/experiment/p_zero_grid", "p_zero + p_inf exceeds 1 for p_zero = " + std::to_string(p0));
            const PassageLaw law(p0, c.law.p_inf(), c.law.finite_part(), c.law.cap());
            require_supercritical_config(law, p_c);
            require_M_config(law, *c.M, p_c);
        }
        return;
    }
    if (!std::holds_alternative<LawSplitParams>(e)) require_supercritical_config(c.law, p_c);
    if (needs_M(e)) require_M_config(c.law, *c.M, p_c);
    if (const auto* m = std::get_if<MInvarianceParams>(&e))
        for (double M : m->M_values) require_M_config(c.law, M, p_c);
    if (std::holds_alternative<ShapeParams>(e) || std::holds_alternative<MeasureParams>(e)) {
        if (!(c.law.p_zero() < p_c)) {
            std::ostringstream ss;
            ss << "limit shape is not compact: F({0}) = " << c.law.p_zero() << " >= p_c = " << p_c;
            throw SupercriticalityError(ss.str());
        }
    }
    if (std::holds_alternative<LdParams>(e) && std::abs(c.law.cdf(*c.M) + c.law.p_inf() - 1.0) > 1e-12)
        throw SupercriticalityError("lower-deviation probe needs F([0,M]) = F([0,inf)): the law has mass in (M, inf)");
}

} // namespace fpp::cli
