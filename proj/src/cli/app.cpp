#include "fpp/cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fpp/cli/config.hpp"
#include "fpp/cli/runner.hpp"
#include "fpp/errors.hpp"

namespace fpp::cli {

using nlohmann::json;

namespace {

/// Raw flag values of an experiment subcommand; unset flags keep the base config.
struct Flags {
    std::string config;
    std::string law;
    std::optional<double> p;
    std::optional<int> d;
    std::optional<double> p_c;
    std::optional<double> M;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::string n;
    std::string t;
    std::string r;
    std::string p_zero;
    std::string direction;
    std::string directions;
    std::string event;
    std::string M_list;
    std::string reference;
    std::optional<int> half_width;
    std::optional<double> window;
    std::optional<double> chem_factor;
    std::optional<double> epsilon;
    std::optional<double> epsilon_fraction;
    std::optional<double> mu_hat;
    std::optional<int> theta_L;
    std::optional<int> theta_reps;
    bool no_plots = false;
};

struct Common {
    std::optional<unsigned> threads;
    std::string out;
};

double round12(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& flag)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw ConfigError("", "cannot read '" + s + "' as a number", "--" + flag);
    return v;
}

int to_int(const std::string& s, const std::string& flag)
{
    const double v = to_double(s, flag);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("", "'" + s + "' is not an integer", "--" + flag);
    return static_cast<int>(v);
}

/// "4,8,16" or "2..12".
json int_list(const std::string& s, const std::string& flag)
{
    json out = json::array();
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const int a = to_int(s.substr(0, dots), flag), b = to_int(s.substr(dots + 2), flag);
        if (b < a) throw ConfigError("", "empty range '" + s + "'", "--" + flag);
        for (int i = a; i <= b; ++i) out.push_back(i);
        return out;
    }
    for (const auto& part : split(s, ',')) out.push_back(to_int(part, flag));
    return out;
}

json real_list(const std::string& s, const std::string& flag)
{
    json out = json::array();
    for (const auto& part : split(s, ',')) out.push_back(to_double(part, flag));
    return out;
}

/// "a:b:s" -> a, a+s, ..., b.
json real_range(const std::string& s, const std::string& flag)
{
    const auto parts = split(s, ':');
    if (parts.size() != 3) return real_list(s, flag);
    const double a = to_double(parts[0], flag), b = to_double(parts[1], flag), step = to_double(parts[2], flag);
    if (!(step > 0.0) || b < a) throw ConfigError("", "expected a:b:step with a <= b and step > 0", "--" + flag);
    json out = json::array();
    const long count = std::lround((b - a) / step);
    for (long k = 0; k <= count; ++k) out.push_back(round12(a + static_cast<double>(k) * step));
    return out;
}

json direction_json(const std::string& s, const std::string& flag)
{
    json out = json::array();
    for (const auto& part : split(s, ',')) out.push_back(to_int(part, flag));
    return out;
}

json law_json(const std::string& spec)
{
    const std::string text = std::ifstream(spec).good() ? read_text(spec) : spec;
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/law", std::string("invalid law JSON: ") + e.what(), "--law");
    }
}

void set_default(json& obj, const char* key, json value)
{
    if (!obj.contains(key)) obj[key] = std::move(value);
}

/// Builds the config document of an experiment subcommand.
json build_config(const std::string& kind, const Flags& f)
{
    json c = f.config.empty() ? json::object() : json::parse(read_text(f.config), nullptr, false);
    if (c.is_discarded() || !c.is_object()) throw ConfigError("", "base config is not a JSON object", f.config);
    if (f.d) c["dimension"] = *f.d;
    if (f.p_c) c["p_c"] = *f.p_c;
    if (!f.law.empty()) c["law"] = law_json(f.law);
    if (f.p) {
        if (!(*f.p > 0.0 && *f.p <= 1.0)) throw ConfigError("", "open probability must lie in (0, 1]", "--p");
        c["law"] = {{"p_zero", 0.0}, {"p_inf", round12(1.0 - *f.p)}, {"finite", {{"kind", "constant"}, {"value", 1.0}}}};
    }
    set_default(c, "law", {{"finite", {{"kind", "constant"}, {"value", 1.0}}}});
    if (f.M) c["M"] = *f.M;
    if (f.seed) c["master_seed"] = *f.seed;
    if (f.no_plots) c["plots"] = false;

    json e = c.contains("experiment") && c["experiment"].is_object() ? c["experiment"] : json::object();
    if (e.value("kind", kind) != kind) e = json::object();
    e["kind"] = kind;
    if (f.reps) e["reps"] = *f.reps;
    const bool single_n = kind == "directions" || kind == "law-split" || kind == "m-invariance";
    if (!f.n.empty()) e[single_n ? "n" : "n_grid"] = single_n ? json(to_int(f.n, "n")) : int_list(f.n, "n");
    if (!f.t.empty()) e["t_grid"] = real_list(f.t, "t");
    if (!f.r.empty()) e["grid"] = int_list(f.r, "r");
    if (!f.p_zero.empty()) e["p_zero_grid"] = real_range(f.p_zero, "p-zero");
    if (!f.direction.empty()) e["direction"] = direction_json(f.direction, "direction");
    if (!f.directions.empty()) {
        e["directions"] = json::array();
        for (const auto& d : split(f.directions, ';')) e["directions"].push_back(direction_json(d, "directions"));
    }
    if (!f.event.empty()) e["event"] = f.event;
    if (!f.M_list.empty()) e["M_values"] = real_list(f.M_list, "M-list");
    if (!f.reference.empty()) e["reference"] = {{"kind", f.reference}};
    if (f.half_width) e["half_width"] = *f.half_width;
    if (f.window) e["window_fraction"] = *f.window;
    if (f.chem_factor) e["chem_factor"] = *f.chem_factor;
    if (f.epsilon) e["epsilon"] = *f.epsilon;
    if (f.epsilon_fraction) e["epsilon_fraction"] = *f.epsilon_fraction;
    if (f.mu_hat) e["mu_hat"] = *f.mu_hat;
    if (f.theta_L || f.theta_reps) {
        json th = e.value("theta", json::object());
        if (f.theta_L) th["half_width"] = *f.theta_L;
        if (f.theta_reps) th["reps"] = *f.theta_reps;
        e["theta"] = th;
    }

    // defaults that keep a bare subcommand quick
    set_default(e, "reps", kind == "tails" ? 1000 : 20);
    if (kind == "time-constant" || kind == "ld" || kind == "point-to-line") set_default(e, "n_grid", {8, 16, 32});
    if (kind == "positivity") {
        set_default(e, "n_grid", {16, 32});
        set_default(e, "p_zero_grid", {0.2, 0.4, 0.6});
    }
    if (single_n) set_default(e, "n", 16);
    if (kind == "shape" || kind == "measure") set_default(e, "t_grid", {20, 40});
    if (kind == "measure") set_default(e, "functions", json::array({{{"kind", "constant"}, {"value", 1.0}}}));
    if (kind == "tails") {
        set_default(e, "event", "hole");
        set_default(e, "grid", e.value("event", "hole") == "chem" ? json{1, 2, 3, 4} : json{2, 4, 6, 8});
    }
    if (kind == "ld" && !e.contains("epsilon")) set_default(e, "epsilon_fraction", 0.5);
    if (kind == "m-invariance" && !e.contains("M_values")) e["M_values"] = {c.value("M", 1.0)};
    c["experiment"] = e;
    return c;
}

std::string output_dir(const Common& common, const ExperimentConfig& config)
{
    if (!common.out.empty()) return common.out;
    if (const char* env = std::getenv("FPP_OUTPUT_DIR"); env && *env) return env;
    if (config.output_dir) return *config.output_dir;
    return "fpp_out/" + kind_name(config.experiment);
}

unsigned thread_count(const Common& common)
{
    if (common.threads) return std::max(1u, *common.threads);
    if (const char* env = std::getenv("FPP_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw ConfigError("", "FPP_THREADS must be a positive integer", "environment");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int execute(const ExperimentConfig& config, const Common& common, std::ostream& out, std::ostream& err)
{
    const RunOutput result = run_experiment(config, RunSettings{thread_count(common)});
    const std::string dir = output_dir(common, config);
    write_outputs(dir, result);
    for (const auto& w : result.manifest["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
    out << "wrote " << result.files.size() + 1 << " files to " << dir << '\n';
    return kExitOk;
}

void add_common(CLI::App* sub, Common& common)
{
    sub->add_option("--threads", common.threads, "worker threads (default: FPP_THREADS or all cores)");
    sub->add_option("--out", common.out, "output directory (default: FPP_OUTPUT_DIR, config output_dir, fpp_out/<kind>)");
}

void add_experiment_flags(CLI::App* sub, Flags& f, const std::string& kind)
{
    sub->add_option("--config", f.config, "base config file; flags override its fields");
    sub->add_option("--law", f.law, "law JSON file or inline JSON");
    sub->add_option("--p", f.p, "open-edge probability: law (1-p) delta_inf + p delta_1");
    sub->add_option("--d", f.d, "dimension");
    sub->add_option("--p-c", f.p_c, "critical probability (fixed at 0.5 in d = 2)");
    sub->add_option("--M", f.M, "regularization level M");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--reps", f.reps, "replications per grid point");
    sub->add_flag("--no-plots", f.no_plots, "skip SVG output");
    if (kind == "time-constant" || kind == "ld" || kind == "point-to-line" || kind == "positivity")
        sub->add_option("--n", f.n, "n grid: 8,16,32 or 8..12");
    if (kind == "directions" || kind == "law-split" || kind == "m-invariance") sub->add_option("--n", f.n, "n");
    if (kind == "time-constant" || kind == "law-split" || kind == "m-invariance")
        sub->add_option("--direction", f.direction, "direction x, e.g. 1,1");
    if (kind == "directions") sub->add_option("--directions", f.directions, "directions, e.g. '1,0;1,1'");
    if (kind == "shape" || kind == "measure") {
        sub->add_option("--t", f.t, "t grid: 40,80");
        sub->add_option("--reference", f.reference, "reference ball: l1 or profile");
    }
    if (kind == "law-split" || kind == "measure") {
        sub->add_option("--theta-L", f.theta_L, "box half-width of the density estimate");
        sub->add_option("--theta-reps", f.theta_reps, "replications of the density estimate");
    }
    if (kind == "positivity") sub->add_option("--p-zero", f.p_zero, "p_zero grid: a:b:step or a,b,c");
    if (kind == "tails") {
        sub->add_option("--event", f.event, "finite_cluster, hole or chem");
        sub->add_option("--r", f.r, "grid: 2..12 or 2,4,8");
        sub->add_option("--L", f.half_width, "box half-width");
        sub->add_option("--window", f.window, "central window fraction");
        sub->add_option("--chem-factor", f.chem_factor, "chem threshold l = factor * ||y||_1");
    }
    if (kind == "ld") {
        sub->add_option("--epsilon", f.epsilon, "absolute epsilon");
        sub->add_option("--epsilon-fraction", f.epsilon_fraction, "epsilon as a fraction of mu_hat");
        sub->add_option("--mu-hat", f.mu_hat, "time constant along e_1 (estimated when absent)");
    }
    if (kind == "m-invariance") sub->add_option("--M-list", f.M_list, "M values: 2.5,4");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"First passage percolation experiments", "fpp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Common common;
    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run an experiment config file");
    run->add_option("config", config_path, "config file")->required();
    add_common(run, common);

    CLI::App* check = app.add_subcommand("check", "validate a config file without running it");
    std::string check_path;
    check->add_option("config", check_path, "config file")->required();

    Flags flags;
    std::vector<std::pair<CLI::App*, std::string>> experiment_subs;
    for (const auto& kind : experiment_kinds()) {
        CLI::App* sub = app.add_subcommand(kind, "run a " + kind + " experiment from flags");
        add_experiment_flags(sub, flags, kind);
        add_common(sub, common);
        experiment_subs.emplace_back(sub, kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return execute(parse_config_file(config_path), common, out, err);
        if (*check) {
            const ExperimentConfig c = parse_config_file(check_path);
            validate_config(c);
            out << "ok: " << kind_name(c.experiment) << '\n';
            return kExitOk;
        }
        for (const auto& [sub, kind] : experiment_subs) {
            if (!*sub) continue;
            const json doc = build_config(kind, flags);
            return execute(parse_config(doc.dump(2), "<" + kind + " flags>"), common, out, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SupercriticalityError& e) {
        err << "refused: " << e.what() << '\n';
        return kExitSupercriticality;
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitConfig;
}

} // namespace fpp::cli
