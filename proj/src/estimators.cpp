#include "fpp/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "fpp/parallel.hpp"
#include "fpp/random.hpp"

namespace fpp {
namespace {

constexpr std::uint64_t kShapeStream = 0x5348415045ULL;
constexpr std::uint64_t kThetaStream = 0x5448455441ULL;
constexpr std::uint64_t kMeasureStream = 0x4d45415355ULL;
constexpr std::uint64_t kLdStream = 0x4c44ULL;

void require_reps(int reps)
{
    if (reps < 2) throw DomainError("at least 2 replications are required");
}

void require_increasing(const std::vector<int>& grid, const char* what)
{
    if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
    if (grid.front() < 1) throw DomainError(std::string(what) + " grid must be positive");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw DomainError(std::string(what) + " grid must be strictly increasing");
}

void require_direction(const LatticePoint& x, int dimension)
{
    if (x.dimension() != dimension) throw DomainError("direction has the wrong dimension");
    if (norm(x, Norm::one) == 0.0) throw DomainError("direction must be nonzero");
}

std::vector<std::uint64_t> stream_seeds(std::uint64_t master, std::uint64_t stream, int reps)
{
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(reps));
    for (std::size_t r = 0; r < seeds.size(); ++r) seeds[r] = derive_seed(master, stream, r);
    return seeds;
}

std::uint64_t real_stream(std::uint64_t tag, double value) { return hash_pair(tag, std::bit_cast<std::uint64_t>(value)); }

std::vector<double> cell_midpoint(const std::vector<int>& z, double t)
{
    std::vector<double> m(z.size());
    for (std::size_t a = 0; a < z.size(); ++a) m[a] = (z[a] + 0.5) / t;
    return m;
}

// Calls f(z) for every z in [-R, R]^d, lexicographic order.
template <class F>
void for_each_cell(int dimension, int R, F&& f)
{
    std::vector<int> z(dimension, -R);
    while (true) {
        f(z);
        int a = dimension - 1;
        while (a >= 0 && z[a] == R) z[a--] = -R;
        if (a < 0) return;
        ++z[a];
    }
}

} // namespace

std::uint64_t direction_stream(const LatticePoint& x, int n)
{
    std::uint64_t h = hash_pair(0xD1EC7104ULL, static_cast<std::uint64_t>(n));
    for (int c : x.coords()) h = hash_pair(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + (1LL << 31)));
    return h;
}

int point_estimate_half_width(const LatticePoint& x, int n) { return 2 * n * static_cast<int>(norm(x, Norm::one)); }

TildeSample sample_tilde_time(const PassageLaw& law, double M, const LatticePoint& x, int n, std::uint64_t seed, int dimension)
{
    const Box box(dimension, point_estimate_half_width(x, n));
    const EdgeField field = EdgeField::generate(box, law, seed);
    const ClusterLabeling lab(field, ThresholdSpec::at_most(M));
    const auto from = nearest_proxy_vertex(lab, box.origin_index());
    const auto to = nearest_proxy_vertex(lab, box.index(x * n));
    if (!from || !to) throw DomainError("empty C_M proxy: cannot regularise");
    SearchOptions opts;
    const std::size_t target = *to;
    opts.stop_when = [target](std::size_t v) { return v == target; };
    opts.boundary_layer = std::max(1, box.half_width() / 10);
    const std::size_t src[] = {*from};
    const SearchResult r = dijkstra(field, src, opts);
    return {r.times[target] / n, r.stopped_geodesic_touched_boundary, lab.spanning()};
}

EstimateSeries time_constant_series(const PassageLaw& law, double M, const LatticePoint& x, const std::vector<int>& n_grid,
                                    int reps, const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    require_direction(x, options.dimension);
    require_increasing(n_grid, "n");
    require_reps(reps);

    EstimateSeries series;
    double envelope = kInfinity;
    for (int n : n_grid) {
        SeriesPoint point;
        point.index = n;
        point.seeds = stream_seeds(options.master_seed, direction_stream(x, n), reps);
        std::vector<TildeSample> samples(point.seeds.size());
        parallel_for(samples.size(), options.threads, [&](std::size_t r) {
            samples[r] = sample_tilde_time(law, M, x, n, point.seeds[r], options.dimension);
        });
        std::vector<double> values;
        for (const auto& s : samples) {
            values.push_back(s.scaled_time);
            point.boundary_touches += s.touched_boundary;
            point.nonspanning += !s.spanning;
        }
        point.summary = summarize(values);
        envelope = std::min(envelope, point.summary.mean);
        point.envelope = envelope;
        series.points.push_back(std::move(point));
    }
    return series;
}

std::vector<DirectionEstimate> direction_profile(const PassageLaw& law, double M, const std::vector<LatticePoint>& directions,
                                                 int n, int reps, const EstimatorOptions& options)
{
    if (directions.empty()) throw DomainError("direction profile needs at least one direction");
    std::vector<DirectionEstimate> out;
    for (const auto& x : directions) {
        const EstimateSeries s = time_constant_series(law, M, x, {n}, reps, options);
        out.push_back({x, s.last().summary});
    }
    return out;
}

std::vector<LatticePoint> symmetry_class_directions(int dimension)
{
    std::vector<LatticePoint> out;
    std::vector<int> c(dimension, -1);
    while (true) {
        if (std::any_of(c.begin(), c.end(), [](int v) { return v != 0; })) out.emplace_back(c);
        int a = dimension - 1;
        while (a >= 0 && c[a] == 1) c[a--] = -1;
        if (a < 0) break;
        ++c[a];
    }
    return out;
}

ReferenceBall::ReferenceBall(std::vector<double> class_values, Interpolation interpolation)
    : values_(std::move(class_values)), interpolation_(interpolation)
{
    if (values_.size() < 2) throw DomainError("reference ball needs one gauge value per symmetry class (d >= 2)");
    for (double g : values_)
        if (!(g > 0.0 && std::isfinite(g))) throw DomainError("reference gauge values must be positive and finite");
}

ReferenceBall ReferenceBall::l1(int dimension)
{
    std::vector<double> v(dimension);
    std::iota(v.begin(), v.end(), 1.0);
    return ReferenceBall(std::move(v), Interpolation::chamber_linear);
}

ReferenceBall ReferenceBall::from_profile(const std::vector<DirectionEstimate>& profile, int dimension,
                                          Interpolation interpolation)
{
    std::vector<double> sum(dimension, 0.0);
    std::vector<int> count(dimension, 0);
    for (const auto& e : profile) {
        int nonzero = 0;
        bool unit = true;
        for (int c : e.direction.coords()) {
            nonzero += c != 0;
            unit = unit && std::abs(c) <= 1;
        }
        if (!unit || nonzero == 0) continue;
        sum[nonzero - 1] += e.summary.mean;
        ++count[nonzero - 1];
    }
    for (int k = 0; k < dimension; ++k) {
        if (count[k] == 0) throw DomainError("profile lacks a direction with " + std::to_string(k + 1) + " nonzero coordinates");
        sum[k] /= count[k];
    }
    return ReferenceBall(std::move(sum), interpolation);
}

double ReferenceBall::gauge(std::span<const double> x) const
{
    std::vector<double> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::abs(x[i]);
    std::sort(a.begin(), a.end(), std::greater<>());
    if (interpolation_ == Interpolation::chamber_linear) {
        double g = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double next = k + 1 < a.size() ? a[k + 1] : 0.0;
            g += (a[k] - next) * values_[k];
        }
        return g;
    }
    double norm2 = 0.0, weight = 0.0, radius = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double next = k + 1 < a.size() ? a[k + 1] : 0.0;
        const double len = std::sqrt(static_cast<double>(k + 1)); // |v_k|_2
        const double w = (a[k] - next) * len;
        weight += w;
        radius += w * len / values_[k];
        norm2 += a[k] * a[k];
    }
    if (weight == 0.0) return 0.0;
    return std::sqrt(norm2) / (radius / weight);
}

double ReferenceBall::volume() const
{
    const int d = dimension();
    double v = std::ldexp(1.0, d);
    if (interpolation_ == Interpolation::chamber_linear) {
        for (double g : values_) v /= g;
        return v;
    }
    // y = sum_k sigma_k v_k with sigma the gaps of d-1 sorted uniforms
    const int m = d - 1;
    const int per_axis = std::max(2, static_cast<int>(std::floor(std::pow(65536.0, 1.0 / m))));
    std::vector<int> idx(m, 0);
    std::vector<double> u(m), y(d);
    double sum = 0.0;
    std::size_t nodes = 0;
    while (true) {
        for (int i = 0; i < m; ++i) u[i] = (idx[i] + 0.5) / per_axis;
        std::sort(u.begin(), u.end());
        // y_(j) = sum_{k >= j} sigma_k = 1 - u_(j-1), with u_(0) = 0
        for (int j = 0; j < d; ++j) y[j] = 1.0 - (j == 0 ? 0.0 : u[j - 1]);
        sum += std::pow(gauge(y), -d);
        ++nodes;
        int i = 0;
        while (i < m && ++idx[i] == per_axis) idx[i++] = 0;
        if (i == m) break;
    }
    return v * sum / static_cast<double>(nodes);
}

double ReferenceBall::extent() const
{
    if (interpolation_ == Interpolation::chamber_linear) return 1.0 / *std::min_element(values_.begin(), values_.end());
    double r = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) r = std::max(r, std::sqrt(static_cast<double>(k + 1)) / values_[k]);
    return r;
}

double symmetric_difference(const Box& box, std::span<const std::size_t> members, double t, const ReferenceBall& reference)
{
    if (!(t > 0.0)) throw DomainError("scale t must be positive");
    std::vector<char> in_set(box.vertex_count(), 0);
    for (std::size_t v : members) in_set[v] = 1;
    const int R = std::max(box.half_width(), static_cast<int>(std::ceil(t * reference.extent())) + 1);
    std::size_t mismatched = 0;
    for_each_cell(box.dimension(), R, [&](const std::vector<int>& z) {
        const LatticePoint p(z);
        const bool a = box.contains(p) && in_set[box.index(p)];
        const bool b = reference.contains(cell_midpoint(z, t));
        mismatched += a != b;
    });
    return static_cast<double>(mismatched) / std::pow(t, box.dimension());
}

void require_positive_time_constant(const PassageLaw& law, double p_c)
{
    if (!(law.p_zero() < p_c))
        throw SupercriticalityError("F({0}) = " + std::to_string(law.p_zero()) + " >= p_c: the time constant vanishes and the limit shape is not compact");
}

ShapeStatistics shape_estimate(const PassageLaw& law, double M, double t, int reps, const ReferenceBall& reference,
                               const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    require_positive_time_constant(law, options.p_c);
    require_reps(reps);
    if (!(t > 0.0)) throw DomainError("shape scale t must be positive");
    if (reference.dimension() != options.dimension) throw DomainError("reference ball dimension mismatch");

    ShapeStatistics out;
    out.t = t;
    out.half_width = static_cast<int>(std::ceil(2.0 * t));
    out.seeds = stream_seeds(options.master_seed, real_stream(kShapeStream, t), reps);
    const Box box(options.dimension, out.half_width);
    const double scale = std::pow(t, options.dimension);

    struct Sample {
        double sd_tilde, sd_star, vol_tilde, vol_star;
        bool spanning;
        std::vector<std::size_t> members;
    };
    std::vector<Sample> samples(out.seeds.size());
    parallel_for(samples.size(), options.threads, [&](std::size_t r) {
        const RegularizedContext ctx(EdgeField::generate(box, law, out.seeds[r]), M, options.p_c);
        const auto sets = ctx.regularized_reached_sets(t);
        Sample& s = samples[r];
        s.sd_tilde = symmetric_difference(box, sets.tilde.vertices(), t, reference);
        s.sd_star = symmetric_difference(box, sets.star.vertices(), t, reference);
        s.vol_tilde = static_cast<double>(sets.tilde.size()) / scale;
        s.vol_star = static_cast<double>(sets.star.size()) / scale;
        s.spanning = ctx.labeling_M().spanning();
        if (r == 0) s.members = sets.tilde.vertices();
    });
    std::vector<double> a, b, c, d;
    for (const auto& s : samples) {
        a.push_back(s.sd_tilde);
        b.push_back(s.sd_star);
        c.push_back(s.vol_tilde);
        d.push_back(s.vol_star);
        out.nonspanning += !s.spanning;
    }
    out.symdiff_tilde = summarize(a);
    out.symdiff_star = summarize(b);
    out.volume_tilde = summarize(c);
    out.volume_star = summarize(d);
    out.first_tilde_members = std::move(samples[0].members);
    return out;
}

ThetaEstimate estimate_theta(const PassageLaw& law, int half_width, double window_fraction, int reps, const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_reps(reps);
    ThetaEstimate out;
    out.half_width = half_width;
    out.window_fraction = window_fraction;
    const Box box(options.dimension, half_width);
    const auto seeds = stream_seeds(options.master_seed, hash_pair(kThetaStream, static_cast<std::uint64_t>(half_width)), reps);
    std::vector<double> values(seeds.size());
    std::vector<char> empty(seeds.size()), spanning(seeds.size());
    parallel_for(seeds.size(), options.threads, [&](std::size_t r) {
        const ClusterLabeling lab(EdgeField::generate(box, law, seeds[r]), ThresholdSpec::finite());
        const DensityValue d = density_theta(lab, window_fraction);
        values[r] = d.value;
        empty[r] = d.proxy_empty;
        spanning[r] = lab.spanning();
    });
    out.summary = summarize(values);
    for (std::size_t r = 0; r < seeds.size(); ++r) {
        out.proxy_empty += empty[r];
        out.nonspanning += !spanning[r];
    }
    out.seeds = seeds;
    return out;
}

LawSplit law_convergence_probe(const PassageLaw& law, [[maybe_unused]] double M, const LatticePoint& x, int n, int reps,
                               const std::optional<ThetaEstimate>& theta, const EstimatorOptions& options)
{
    require_direction(x, options.dimension);
    require_reps(reps);
    if (n < 1) throw DomainError("n must be positive");
    LawSplit out;
    out.seeds = stream_seeds(options.master_seed, direction_stream(x, n), reps);
    const Box box(options.dimension, point_estimate_half_width(x, n));
    std::vector<double> times(out.seeds.size());
    parallel_for(times.size(), options.threads, [&](std::size_t r) {
        const EdgeField field = EdgeField::generate(box, law, out.seeds[r]);
        times[r] = point_time(field, LatticePoint::origin(options.dimension), x * n).value();
    });
    std::vector<double> indicator, conditional;
    for (double t : times) {
        indicator.push_back(t < kInfinity ? 1.0 : 0.0);
        if (t < kInfinity) conditional.push_back(t / n);
    }
    out.finite_indicator = summarize(indicator);
    out.conditional = summarize(conditional);
    if (theta) {
        out.theta = theta;
        const double th = theta->summary.mean;
        out.theta_squared = th * th;
        const double se_sq = 2.0 * th * theta->summary.std_error;
        out.combined_stderr = std::sqrt(out.finite_indicator.std_error * out.finite_indicator.std_error + se_sq * se_sq);
        out.deviation = std::abs(out.finite_indicator.mean - out.theta_squared);
    }
    return out;
}

TestFunction TestFunction::constant_on_box(double value, double half_width)
{
    return {"box", [value, half_width](std::span<const double> x) {
                for (double c : x)
                    if (std::abs(c) > half_width) return 0.0;
                return value;
            }};
}

TestFunction TestFunction::monomial(std::vector<int> powers)
{
    std::string name = "monomial";
    for (int p : powers) name += "_" + std::to_string(p);
    return {name, [powers](std::span<const double> x) {
                double v = 1.0;
                for (std::size_t i = 0; i < powers.size() && i < x.size(); ++i) v *= std::pow(x[i], powers[i]);
                return v;
            }};
}

TestFunction TestFunction::bump(std::vector<double> center, double radius)
{
    return {"bump", [center, radius](std::span<const double> x) {
                double r2 = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double c = i < center.size() ? center[i] : 0.0;
                    r2 += (x[i] - c) * (x[i] - c);
                }
                r2 /= radius * radius;
                return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
            }};
}

double integrate_over_ball(const ReferenceBall& ball, const TestFunction& f, double t)
{
    if (!(t > 0.0)) throw DomainError("quadrature resolution must be positive");
    const int R = static_cast<int>(std::ceil(t * ball.extent())) + 1;
    double sum = 0.0;
    for_each_cell(ball.dimension(), R, [&](const std::vector<int>& z) {
        const auto m = cell_midpoint(z, t);
        if (ball.contains(m)) sum += f.f(m);
    });
    return sum / std::pow(t, ball.dimension());
}

MeasureCheck empirical_measure_check(const PassageLaw& law, double M, double t, const std::vector<TestFunction>& functions,
                                     int reps, const ReferenceBall& reference, const Summary& theta,
                                     const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    require_positive_time_constant(law, options.p_c);
    require_reps(reps);
    if (!(t > 0.0)) throw DomainError("scale t must be positive");
    MeasureCheck out;
    out.t = t;
    out.reps = reps;
    const Box box(options.dimension, static_cast<int>(std::ceil(2.0 * t)));
    const auto seeds = stream_seeds(options.master_seed, real_stream(kMeasureStream, t), reps);
    const double scale = std::pow(t, options.dimension);
    std::vector<std::vector<double>> sums(seeds.size());
    std::vector<char> kept(seeds.size(), 0);
    parallel_for(seeds.size(), options.threads, [&](std::size_t r) {
        const EdgeField field = EdgeField::generate(box, law, seeds[r]);
        const ClusterLabeling lab(field, ThresholdSpec::finite());
        if (!lab.in_proxy(box.origin_index())) return;
        kept[r] = 1;
        SearchOptions opts;
        opts.time_limit = t;
        const std::size_t src[] = {box.origin_index()};
        const SearchResult res = dijkstra(field, src, opts);
        std::vector<double> acc(functions.size(), 0.0);
        std::vector<double> x(options.dimension);
        for (std::size_t v = 0; v < res.times.size(); ++v) {
            if (!(res.times[v] <= t)) continue;
            for (int a = 0; a < options.dimension; ++a) x[a] = box.coord(v, a) / t;
            for (std::size_t i = 0; i < functions.size(); ++i) acc[i] += functions[i].f(x);
        }
        for (double& s : acc) s /= scale;
        sums[r] = std::move(acc);
    });
    for (char k : kept) out.kept_reps += k;
    out.seeds = seeds;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        std::vector<double> values;
        for (std::size_t r = 0; r < seeds.size(); ++r)
            if (kept[r]) values.push_back(sums[r][i]);
        MeasureDiscrepancy row;
        row.name = functions[i].name;
        row.empirical = summarize(values);
        const double integral = integrate_over_ball(reference, functions[i], t);
        row.target = theta.mean * integral;
        row.discrepancy = std::abs(row.empirical.mean - row.target);
        const double se_target = theta.std_error * std::abs(integral);
        row.std_error = std::sqrt(row.empirical.std_error * row.empirical.std_error + se_target * se_target);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<PositivityPoint> positivity_scan(const FinitePart& finite, double p_inf, const std::vector<double>& p_zero_grid,
                                             double M, const std::vector<int>& n_grid, int reps, const EstimatorOptions& options)
{
    if (p_zero_grid.empty()) throw DomainError("p_zero grid is empty");
    for (std::size_t i = 1; i < p_zero_grid.size(); ++i)
        if (!(p_zero_grid[i] > p_zero_grid[i - 1])) throw DomainError("p_zero grid must be strictly increasing");
    std::vector<PassageLaw> laws;
    for (double p0 : p_zero_grid) {
        laws.emplace_back(p0, p_inf, finite);
        require_supercritical(laws.back(), options.p_c);
        require_valid_M(laws.back(), M, options.p_c);
    }
    std::vector<PositivityPoint> out;
    const LatticePoint e1 = LatticePoint::unit(options.dimension, 0);
    for (std::size_t i = 0; i < laws.size(); ++i)
        out.push_back({p_zero_grid[i], time_constant_series(laws[i], M, e1, n_grid, reps, options)});
    return out;
}

LdResult ld_probe(const PassageLaw& law, double M, double epsilon, const std::vector<int>& n_grid, int reps, double mu_hat,
                  const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    if (std::abs(law.cdf(M) + law.p_inf() - 1.0) > 1e-12)
        throw SupercriticalityError("lower-deviation probe needs F([0,M]) = F([0,inf)): the law has mass in (M, inf)");
    if (!(epsilon > 0.0) || !(epsilon < mu_hat))
        throw DomainError("lower-deviation threshold mu_hat - epsilon must be positive with epsilon > 0");
    require_increasing(n_grid, "n");
    require_reps(reps);
    LdResult out;
    out.threshold_factor = mu_hat - epsilon;
    std::vector<double> params, freqs;
    for (int n : n_grid) {
        const Box box(options.dimension, 2 * n);
        const auto seeds = stream_seeds(options.master_seed, hash_pair(kLdStream, static_cast<std::uint64_t>(n)), reps);
        std::vector<double> hits(seeds.size());
        parallel_for(seeds.size(), options.threads, [&](std::size_t r) {
            const EdgeField field = EdgeField::generate(box, law, seeds[r]);
            const ClusterLabeling lab(field, ThresholdSpec::at_most(M));
            if (!lab.in_proxy(box.origin_index())) return;
            const double t = point_to_line(field, LatticePoint::origin(options.dimension), n).value();
            hits[r] = t < out.threshold_factor * n ? 1.0 : 0.0;
        });
        out.points.push_back({n, summarize(hits), seeds});
        params.push_back(n);
        freqs.push_back(out.points.back().frequency.mean);
    }
    out.log_fit = log_linear_fit(params, freqs);
    return out;
}

MInvariance m_invariance_check(const PassageLaw& law, const std::vector<double>& M_values, const LatticePoint& x, int n,
                               int reps, const EstimatorOptions& options)
{
    if (M_values.empty()) throw DomainError("M list is empty");
    for (double M : M_values) require_valid_M(law, M, options.p_c);
    MInvariance out;
    out.M_values = M_values;
    for (double M : M_values) {
        const EstimateSeries s = time_constant_series(law, M, x, {n}, reps, options);
        out.estimates.push_back(s.last().summary);
        out.seeds = s.last().seeds;
    }
    const std::size_t k = M_values.size();
    out.overlap.assign(k, std::vector<bool>(k, true));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            out.overlap[i][j] = intervals_overlap(out.estimates[i], out.estimates[j]);
            out.all_overlap = out.all_overlap && out.overlap[i][j];
        }
    return out;
}

std::vector<PointToLinePoint> point_to_line_comparison(const PassageLaw& law, double M, const std::vector<int>& n_grid,
                                                       int reps, const EstimatorOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    require_increasing(n_grid, "n");
    require_reps(reps);
    const LatticePoint e1 = LatticePoint::unit(options.dimension, 0);
    std::vector<PointToLinePoint> out;
    for (int n : n_grid) {
        const Box box(options.dimension, point_estimate_half_width(e1, n));
        const auto seeds = stream_seeds(options.master_seed, direction_stream(e1, n), reps);
        std::vector<double> line(seeds.size()), point(seeds.size());
        parallel_for(seeds.size(), options.threads, [&](std::size_t r) {
            const EdgeField field = EdgeField::generate(box, law, seeds[r]);
            const ClusterLabeling lab(field, ThresholdSpec::at_most(M));
            const auto proj = proxy_projection_map(lab);
            if (proj.empty()) throw DomainError("empty C_M proxy: cannot regularise");
            std::vector<char> on_line(box.vertex_count(), 0);
            for (std::size_t v : hyperplane_vertices(Hyperplane{n}, box)) on_line[proj[v]] = 1;
            const std::size_t target = proj[box.index(e1 * n)];
            std::optional<std::size_t> first_line;
            SearchOptions opts;
            opts.stop_when = [&](std::size_t v) {
                if (on_line[v] && !first_line) first_line = v;
                return v == target;
            };
            const std::size_t src[] = {proj[box.origin_index()]};
            const SearchResult res = dijkstra(field, src, opts);
            line[r] = res.times[*first_line] / n;
            point[r] = res.times[target] / n;
        });
        PointToLinePoint p;
        p.n = n;
        p.line = summarize(line);
        p.point = summarize(point);
        std::vector<double> gap(seeds.size());
        for (std::size_t r = 0; r < seeds.size(); ++r) {
            gap[r] = point[r] - line[r];
            p.violations += line[r] > point[r];
        }
        p.gap = summarize(gap);
        p.seeds = seeds;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace fpp
