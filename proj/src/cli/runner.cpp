#include "fpp/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "fpp/cli/output.hpp"
#include "fpp/errors.hpp"
#include "fpp/random.hpp"

#ifndef FPP_VERSION
#define FPP_VERSION "0.0.0"
#endif

namespace fpp::cli {

using nlohmann::json;

std::string tool_version() { return FPP_VERSION; }

namespace {

json summary_json(const Summary& s)
{
    return {{"mean", s.mean}, {"std_error", s.std_error}, {"ci_low", s.ci_low()}, {"ci_high", s.ci_high()}, {"count", s.count}};
}

json fit_json(const LinearFit& f)
{
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"points", f.points}};
}

std::string point_label(const LatticePoint& x)
{
    std::string s;
    for (int i = 0; i < x.dimension(); ++i) s += (i ? ";" : "") + std::to_string(x[i]);
    return s;
}

std::vector<std::uint64_t> replication_seeds(std::uint64_t master, std::uint64_t stream, int reps)
{
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(reps));
    for (std::size_t r = 0; r < seeds.size(); ++r) seeds[r] = derive_seed(master, stream, r);
    return seeds;
}

double log_or_nan(double v) { return v > 0.0 ? std::log(v) : std::nan(""); }

TestFunction make_function(const FunctionSpec& f)
{
    switch (f.kind) {
    case FunctionSpec::Kind::constant: {
        TestFunction fn = TestFunction::constant_on_box(f.value, kInfinity);
        fn.name = "constant";
        return fn;
    }
    case FunctionSpec::Kind::monomial: return TestFunction::monomial(f.powers);
    case FunctionSpec::Kind::bump: return TestFunction::bump(f.center, f.radius);
    case FunctionSpec::Kind::zero: return TestFunction::zero();
    }
    return TestFunction::zero();
}

/// Everything one experiment contributes to the run.
struct Collector {
    std::vector<std::pair<std::string, std::string>> files;
    json seeds = json::array();
    json results = json::object();
    json warnings = json::array();
    bool plots = true;

    void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
    void plot(std::string name, std::string content)
    {
        if (plots) add(std::move(name), std::move(content));
    }
    void warn(const std::string& w) { warnings.push_back(w); }
    void seed_block(json label, const std::vector<std::uint64_t>& s)
    {
        seeds.push_back({{"for", std::move(label)}, {"replications", s}});
    }
};

class Runner {
public:
    Runner(const ExperimentConfig& c, const RunSettings& s, Collector& out) : c_(c), out_(out)
    {
        opts_.dimension = c.dimension;
        opts_.p_c = c.p_c();
        opts_.master_seed = c.master_seed;
        opts_.threads = s.threads;
    }

    void operator()(const TimeConstantParams& p)
    {
        const EstimateSeries s = time_constant_series(c_.law, *c_.M, p.direction, p.n_grid, p.reps, opts_);
        CsvTable csv({"n", "mean", "std_error", "ci_low", "ci_high", "envelope", "reps", "boundary_touches", "nonspanning"});
        PlotSeries mean{"mean", {}, {}, {}}, env{"envelope", {}, {}, {}};
        for (const auto& pt : s.points) {
            const auto& m = pt.summary;
            csv.row().cell(static_cast<int>(pt.index)).cell(m.mean).cell(m.std_error).cell(m.ci_low()).cell(m.ci_high());
            csv.cell(pt.envelope).cell(m.count).cell(pt.boundary_touches).cell(pt.nonspanning);
            mean.x.push_back(pt.index);
            mean.y.push_back(m.mean);
            mean.error.push_back(1.96 * m.std_error);
            env.x.push_back(pt.index);
            env.y.push_back(pt.envelope);
            out_.seed_block({{"n", static_cast<int>(pt.index)}}, pt.seeds);
            series_warnings(pt);
        }
        out_.results["direction"] = p.direction.coords();
        out_.results["final"] = summary_json(s.last().summary);
        out_.results["final_envelope"] = s.last().envelope;
        out_.add("time_constant.csv", csv.str());
        out_.plot("time_constant.svg", series_svg("T~(0, n x)/n, x = (" + point_label(p.direction) + ")", "n",
                                                  "T~/n", {mean, env}));
    }

    void operator()(const DirectionsParams& p)
    {
        const auto dirs = p.directions.empty() ? symmetry_class_directions(c_.dimension) : p.directions;
        const auto profile = direction_profile(c_.law, *c_.M, dirs, p.n, p.reps, opts_);
        std::vector<std::string> header;
        for (int i = 0; i < c_.dimension; ++i) header.push_back("x" + std::to_string(i + 1));
        for (const char* h : {"mean", "std_error", "ci_low", "ci_high", "reps"}) header.emplace_back(h);
        CsvTable csv(header);
        PlotSeries series{"mean", {}, {}, {}};
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const auto& d = profile[i];
            csv.row();
            for (int a = 0; a < c_.dimension; ++a) csv.cell(d.direction[a]);
            csv.cell(d.summary.mean).cell(d.summary.std_error).cell(d.summary.ci_low()).cell(d.summary.ci_high());
            csv.cell(d.summary.count);
            series.x.push_back(static_cast<double>(i));
            series.y.push_back(d.summary.mean);
            series.error.push_back(1.96 * d.summary.std_error);
            out_.seed_block({{"direction", d.direction.coords()}, {"n", p.n}},
                            replication_seeds(c_.master_seed, direction_stream(d.direction, p.n), p.reps));
        }
        if (p.directions.empty())
            out_.results["reference_class_values"] = ReferenceBall::from_profile(profile, c_.dimension).class_values();
        out_.add("directions.csv", csv.str());
        out_.plot("directions.svg", series_svg("T~(0, n x)/n by direction, n = " + std::to_string(p.n), "direction index",
                                               "T~/n", {series}));
    }

    void operator()(const ShapeParams& p)
    {
        const ReferenceBall ref = reference(p.reference);
        CsvTable csv({"t", "symdiff_tilde_mean", "symdiff_tilde_se", "symdiff_star_mean", "symdiff_star_se",
                      "volume_tilde_mean", "volume_tilde_se", "volume_star_mean", "volume_star_se", "reference_volume",
                      "half_width", "reps", "nonspanning"});
        PlotSeries tilde{"B~_t", {}, {}, {}}, star{"B*_t", {}, {}, {}};
        for (double t : p.t_grid) {
            const ShapeStatistics s = shape_estimate(c_.law, *c_.M, t, p.reps, ref, opts_);
            csv.row().cell(t).cell(s.symdiff_tilde.mean).cell(s.symdiff_tilde.std_error).cell(s.symdiff_star.mean);
            csv.cell(s.symdiff_star.std_error).cell(s.volume_tilde.mean).cell(s.volume_tilde.std_error);
            csv.cell(s.volume_star.mean).cell(s.volume_star.std_error).cell(ref.volume()).cell(s.half_width);
            csv.cell(s.symdiff_tilde.count).cell(s.nonspanning);
            tilde.x.push_back(t);
            tilde.y.push_back(s.symdiff_tilde.mean);
            tilde.error.push_back(1.96 * s.symdiff_tilde.std_error);
            star.x.push_back(t);
            star.y.push_back(s.symdiff_star.mean);
            star.error.push_back(1.96 * s.symdiff_star.std_error);
            out_.seed_block({{"t", t}}, s.seeds);
            if (s.nonspanning > 0)
                out_.warn("t=" + format_number(t) + ": " + std::to_string(s.nonspanning) + " of " +
                          std::to_string(p.reps) + " replications had a non-spanning C_M proxy");
            if (c_.dimension == 2)
                out_.plot("shape_t" + format_number(t) + ".svg",
                          shape_svg("B~_t / t (replication 0) vs reference, t = " + format_number(t),
                                    Box(2, s.half_width), s.first_tilde_members, t, ref));
        }
        out_.results["reference_class_values"] = ref.class_values();
        out_.results["reference_volume"] = ref.volume();
        out_.add("shape.csv", csv.str());
        out_.plot("shape.svg", series_svg("Symmetric difference with the reference ball", "t", "|S/t triangle K|",
                                          {tilde, star}));
    }

    void operator()(const LawSplitParams& p)
    {
        std::optional<ThetaEstimate> theta;
        if (p.theta) {
            theta = estimate_theta(c_.law, p.theta->half_width, p.theta->window_fraction, p.theta->reps, opts_);
            out_.seed_block({{"theta_half_width", p.theta->half_width}}, theta->seeds);
        }
        const LawSplit s = law_convergence_probe(c_.law, c_.M.value_or(kInfinity), p.direction, p.n, p.reps, theta, opts_);
        out_.seed_block({{"n", p.n}}, s.seeds);
        const double nan = std::nan("");
        CsvTable csv({"n", "finite_fraction", "finite_se", "conditional_mean", "conditional_se", "conditional_count",
                      "theta", "theta_se", "theta_squared", "combined_se", "deviation"});
        csv.row().cell(p.n).cell(s.finite_indicator.mean).cell(s.finite_indicator.std_error).cell(s.conditional.mean);
        csv.cell(s.conditional.std_error).cell(s.conditional.count);
        csv.cell(theta ? theta->summary.mean : nan).cell(theta ? theta->summary.std_error : nan);
        csv.cell(theta ? s.theta_squared : nan).cell(theta ? s.combined_stderr : nan).cell(theta ? s.deviation : nan);
        out_.results["finite_fraction"] = summary_json(s.finite_indicator);
        out_.results["conditional"] = summary_json(s.conditional);
        if (theta) {
            out_.results["theta"] = summary_json(theta->summary);
            out_.results["within_3_combined_se"] = s.deviation <= 3 * s.combined_stderr;
            if (theta->nonspanning > 0)
                out_.warn(std::to_string(theta->nonspanning) + " theta replications had a non-spanning proxy");
        }
        out_.add("law_split.csv", csv.str());
    }

    void operator()(const MeasureParams& p)
    {
        const ReferenceBall ref = reference(p.reference);
        const ThetaEstimate theta = estimate_theta(c_.law, p.theta.half_width, p.theta.window_fraction, p.theta.reps, opts_);
        out_.seed_block({{"theta_half_width", p.theta.half_width}}, theta.seeds);
        std::vector<TestFunction> fns;
        for (const auto& f : p.functions) fns.push_back(make_function(f));
        CsvTable csv({"t", "function", "empirical_mean", "empirical_se", "target", "discrepancy", "std_error", "kept_reps",
                      "reps"});
        std::vector<PlotSeries> plots(fns.size());
        for (std::size_t i = 0; i < fns.size(); ++i) plots[i].label = std::to_string(i) + ":" + fns[i].name;
        for (double t : p.t_grid) {
            const MeasureCheck m = empirical_measure_check(c_.law, *c_.M, t, fns, p.reps, ref, theta.summary, opts_);
            out_.seed_block({{"t", t}}, m.seeds);
            for (std::size_t i = 0; i < m.rows.size(); ++i) {
                const auto& r = m.rows[i];
                csv.row().cell(t).cell(r.name).cell(r.empirical.mean).cell(r.empirical.std_error).cell(r.target);
                csv.cell(r.discrepancy).cell(r.std_error).cell(m.kept_reps).cell(m.reps);
                plots[i].x.push_back(t);
                plots[i].y.push_back(r.discrepancy);
                plots[i].error.push_back(1.96 * r.std_error);
            }
            if (m.kept_reps < 2) out_.warn("t=" + format_number(t) + ": fewer than 2 replications had 0 in the C_inf proxy");
        }
        out_.results["theta"] = summary_json(theta.summary);
        out_.results["reference_volume"] = ref.volume();
        out_.results["reference_class_values"] = ref.class_values();
        out_.add("measure.csv", csv.str());
        out_.plot("measure.svg", series_svg("Empirical measure discrepancy", "t", "|mu_t(f) - theta int_K f|", plots));
    }

    void operator()(const PositivityParams& p)
    {
        const auto scan = positivity_scan(c_.law.finite_part(), c_.law.p_inf(), p.p_zero_grid, *c_.M, p.n_grid, p.reps, opts_);
        CsvTable csv({"p_zero", "n", "mean", "std_error", "ci_low", "ci_high", "envelope", "reps"});
        std::vector<PlotSeries> plots(p.n_grid.size());
        for (std::size_t j = 0; j < p.n_grid.size(); ++j) plots[j].label = "n=" + std::to_string(p.n_grid[j]);
        for (const auto& pt : scan) {
            for (std::size_t j = 0; j < pt.series.points.size(); ++j) {
                const auto& sp = pt.series.points[j];
                csv.row().cell(pt.p_zero).cell(static_cast<int>(sp.index)).cell(sp.summary.mean).cell(sp.summary.std_error);
                csv.cell(sp.summary.ci_low()).cell(sp.summary.ci_high()).cell(sp.envelope).cell(sp.summary.count);
                plots[j].x.push_back(pt.p_zero);
                plots[j].y.push_back(sp.summary.mean);
                plots[j].error.push_back(1.96 * sp.summary.std_error);
            }
        }
        for (const auto& sp : scan.front().series.points)
            out_.seed_block({{"n", static_cast<int>(sp.index)}, {"shared_by_every_p_zero", true}}, sp.seeds);
        out_.add("positivity.csv", csv.str());
        out_.plot("positivity.svg", series_svg("Time constant along e_1 vs p_zero", "p_zero", "T~(0, n e_1)/n", plots));
    }

    void operator()(const TailsParams& p)
    {
        TailProbeSettings s;
        s.event = p.event;
        s.grid = p.grid;
        s.reps = p.reps;
        s.half_width = p.half_width;
        s.window_fraction = p.window_fraction;
        s.chem_factor = p.chem_factor;
        const ProbeOptions po{opts_.dimension, opts_.p_c, opts_.master_seed, opts_.threads};
        const TailProbeResult r = tail_probe(c_.law, s, po);
        CsvTable csv({"parameter", "frequency", "std_error", "log_frequency", "reps"});
        PlotSeries series{"log frequency", {}, {}, {}};
        for (const auto& pt : r.points) {
            csv.row().cell(pt.parameter).cell(pt.frequency).cell(pt.std_error).cell(log_or_nan(pt.frequency)).cell(pt.reps);
            if (pt.frequency > 0) {
                series.x.push_back(pt.parameter);
                series.y.push_back(std::log(pt.frequency));
            }
        }
        out_.seed_block({{"event", to_string(p.event)}}, r.replication_seeds);
        out_.results["log_fit"] = fit_json(r.log_fit);
        out_.results["nonspanning_reps"] = r.nonspanning_reps;
        if (r.nonspanning_reps > 0)
            out_.warn(std::to_string(r.nonspanning_reps) + " of " + std::to_string(p.reps) +
                      " replications had no spanning finite-time cluster");
        if (r.log_fit.points < static_cast<int>(r.points.size()))
            out_.warn("log fit used " + std::to_string(r.log_fit.points) + " of " + std::to_string(r.points.size()) +
                      " grid points (zero frequencies dropped)");
        out_.add("tails.csv", csv.str());
        out_.plot("tails.svg", series_svg("Tail frequency: " + to_string(p.event), p.event == TailEvent::chem ? "||y||_1" : "r",
                                          "log frequency", {series}));
    }

    void operator()(const LdParams& p)
    {
        double mu_hat = 0.0;
        if (p.mu_hat) {
            mu_hat = *p.mu_hat;
        } else {
            const LatticePoint e1 = LatticePoint::unit(c_.dimension, 0);
            const EstimateSeries s = time_constant_series(c_.law, *c_.M, e1, {p.mu_n}, p.mu_reps, opts_);
            mu_hat = s.last().summary.mean;
            out_.seed_block({{"mu_hat_n", p.mu_n}}, s.last().seeds);
            out_.results["mu_hat_estimate"] = summary_json(s.last().summary);
        }
        const double eps = p.epsilon ? *p.epsilon : *p.epsilon_fraction * mu_hat;
        const LdResult r = ld_probe(c_.law, *c_.M, eps, p.n_grid, p.reps, mu_hat, opts_);
        CsvTable csv({"n", "frequency", "std_error", "log_frequency", "reps"});
        PlotSeries series{"frequency", {}, {}, {}};
        for (const auto& pt : r.points) {
            csv.row().cell(pt.n).cell(pt.frequency.mean).cell(pt.frequency.std_error).cell(log_or_nan(pt.frequency.mean));
            csv.cell(pt.frequency.count);
            series.x.push_back(pt.n);
            series.y.push_back(pt.frequency.mean);
            series.error.push_back(1.96 * pt.frequency.std_error);
            out_.seed_block({{"n", pt.n}}, pt.seeds);
        }
        out_.results["mu_hat"] = mu_hat;
        out_.results["epsilon"] = eps;
        out_.results["threshold_factor"] = r.threshold_factor;
        out_.results["log_fit"] = fit_json(r.log_fit);
        out_.add("ld.csv", csv.str());
        out_.plot("ld.svg", series_svg("P[0 in C_M, T(0, H_n) < (mu - eps) n]", "n", "frequency", {series}));
    }

    void operator()(const MInvarianceParams& p)
    {
        const MInvariance m = m_invariance_check(c_.law, p.M_values, p.direction, p.n, p.reps, opts_);
        CsvTable csv({"M", "mean", "std_error", "ci_low", "ci_high", "reps"});
        PlotSeries series{"mean", {}, {}, {}};
        for (std::size_t i = 0; i < m.M_values.size(); ++i) {
            const auto& s = m.estimates[i];
            csv.row().cell(m.M_values[i]).cell(s.mean).cell(s.std_error).cell(s.ci_low()).cell(s.ci_high()).cell(s.count);
            series.x.push_back(m.M_values[i]);
            series.y.push_back(s.mean);
            series.error.push_back(1.96 * s.std_error);
        }
        json overlap = json::array();
        for (const auto& row : m.overlap) overlap.push_back(row);
        out_.results["overlap"] = overlap;
        out_.results["all_overlap"] = m.all_overlap;
        out_.seed_block({{"n", p.n}, {"shared_by_every_M", true}}, m.seeds);
        out_.add("m_invariance.csv", csv.str());
        out_.plot("m_invariance.svg", series_svg("T~(0, n x)/n for several M, n = " + std::to_string(p.n), "M", "T~/n", {series}));
    }

    void operator()(const PointToLineParams& p)
    {
        const auto rows = point_to_line_comparison(c_.law, *c_.M, p.n_grid, p.reps, opts_);
        CsvTable csv({"n", "line_mean", "line_se", "point_mean", "point_se", "gap_mean", "gap_se", "violations", "reps"});
        PlotSeries line{"T~(0, H_n)/n", {}, {}, {}}, point{"T~(0, n e_1)/n", {}, {}, {}};
        int violations = 0;
        for (const auto& r : rows) {
            csv.row().cell(r.n).cell(r.line.mean).cell(r.line.std_error).cell(r.point.mean).cell(r.point.std_error);
            csv.cell(r.gap.mean).cell(r.gap.std_error).cell(r.violations).cell(r.line.count);
            line.x.push_back(r.n);
            line.y.push_back(r.line.mean);
            line.error.push_back(1.96 * r.line.std_error);
            point.x.push_back(r.n);
            point.y.push_back(r.point.mean);
            point.error.push_back(1.96 * r.point.std_error);
            violations += r.violations;
            out_.seed_block({{"n", r.n}}, r.seeds);
        }
        out_.results["violations"] = violations;
        out_.add("point_to_line.csv", csv.str());
        out_.plot("point_to_line.svg", series_svg("Point-to-line vs point-to-point", "n", "time / n", {line, point}));
    }

private:
    static ReferenceBall::Interpolation interpolation(const ReferenceSpec& r)
    {
        return r.chamber_linear ? ReferenceBall::Interpolation::chamber_linear : ReferenceBall::Interpolation::radial;
    }

    ReferenceBall reference(const ReferenceSpec& r)
    {
        switch (r.kind) {
        case ReferenceSpec::Kind::l1: return ReferenceBall::l1(c_.dimension);
        case ReferenceSpec::Kind::values: return ReferenceBall(r.class_values, interpolation(r));
        case ReferenceSpec::Kind::profile: {
            const auto dirs = symmetry_class_directions(c_.dimension);
            const auto profile = direction_profile(c_.law, *c_.M, dirs, r.profile_n, r.profile_reps, opts_);
            for (const auto& d : profile)
                out_.seed_block({{"reference_direction", d.direction.coords()}, {"n", r.profile_n}},
                                replication_seeds(c_.master_seed, direction_stream(d.direction, r.profile_n), r.profile_reps));
            return ReferenceBall::from_profile(profile, c_.dimension, interpolation(r));
        }
        }
        return ReferenceBall::l1(c_.dimension);
    }

    void series_warnings(const SeriesPoint& pt)
    {
        const std::string n = std::to_string(static_cast<int>(pt.index));
        if (pt.boundary_touches > 0)
            out_.warn("n=" + n + ": " + std::to_string(pt.boundary_touches) + " geodesics entered the boundary layer");
        if (pt.nonspanning > 0)
            out_.warn("n=" + n + ": " + std::to_string(pt.nonspanning) + " replications had a non-spanning C_M proxy");
    }

    const ExperimentConfig& c_;
    Collector& out_;
    EstimatorOptions opts_;
};

} // namespace

RunOutput run_experiment(const ExperimentConfig& config, const RunSettings& settings)
{
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    Collector col;
    col.plots = config.plots;
    Runner runner(config, settings, col);
    std::visit(runner, config.experiment);

    RunOutput out;
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json& m = out.manifest;
    m["tool"] = "fpp";
    m["version"] = tool_version();
    m["config"] = config_to_json(config);
    m["kind"] = kind_name(config.experiment);
    m["law_hash"] = config.law.content_hash();
    m["p_c"] = config.p_c();
    m["seed_rule"] = "seed(stream, r) = hash_pair(hash_pair(master_seed, stream), r); hash_pair = splitmix64 mixing";
    m["seeds"] = col.seeds;
    m["results"] = col.results;
    m["warnings"] = col.warnings;
    json names = json::array();
    for (const auto& [name, content] : col.files) names.push_back(name);
    names.push_back("manifest.json");
    m["files"] = names;
    out.files = std::move(col.files);
    out.files.emplace_back("manifest.json", m.dump(2) + "\n");
    return out;
}

void write_outputs(const std::filesystem::path& dir, const RunOutput& output)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& content) {
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << content;
        f.close();
        if (!f) throw IoError("cannot write " + path.string());
    };
    for (const auto& [name, content] : output.files) write(name, content);
    char buf[64];
    std::snprintf(buf, sizeof buf, "wall_clock_seconds %.3f\n", output.wall_seconds);
    write("timing.txt", buf);
}

} // namespace fpp::cli
