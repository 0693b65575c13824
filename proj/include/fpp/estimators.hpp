#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpp/regularize.hpp"
#include "fpp/stats.hpp"

namespace fpp {

/// Settings shared by every Monte Carlo estimator. Replication r of stream s
/// uses the field seed derive_seed(master_seed, s, r); results are aggregated
/// in replication order, so output does not depend on `threads`.
struct EstimatorOptions {
    int dimension = 2;
    double p_c = 0.5;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
};

struct SeriesPoint {
    double index = 0.0;
    Summary summary;
    double envelope = 0.0; // min over m <= index of the mean at m
    std::vector<std::uint64_t> seeds;
    int boundary_touches = 0; // replications whose geodesic entered the boundary layer (width L/10)
    int nonspanning = 0;      // replications whose C_M proxy did not span the box
};

struct EstimateSeries {
    std::vector<SeriesPoint> points;
    const SeriesPoint& last() const { return points.back(); }
};

/// Stream id of the fields used for T~(0, n x): shared by every estimator that
/// evaluates the same (x, n), which couples them through common uniforms.
std::uint64_t direction_stream(const LatticePoint& x, int n);

/// Box half-width 2 n ||x||_1 used for point estimates.
int point_estimate_half_width(const LatticePoint& x, int n);

struct TildeSample {
    double scaled_time = 0.0; // T~(0, n x) / n
    bool touched_boundary = false;
    bool spanning = true;
};
/// One replication of T~(0, n x) / n on a fresh field with the given seed.
TildeSample sample_tilde_time(const PassageLaw& law, double M, const LatticePoint& x, int n, std::uint64_t seed,
                              int dimension);

/// Per-n mean and standard error of T~(0, n x) / n with the running
/// subadditive envelope.
EstimateSeries time_constant_series(const PassageLaw& law, double M, const LatticePoint& x, const std::vector<int>& n_grid,
                                    int reps, const EstimatorOptions& options);

struct DirectionEstimate {
    LatticePoint direction;
    Summary summary;
};
std::vector<DirectionEstimate> direction_profile(const PassageLaw& law, double M, const std::vector<LatticePoint>& directions,
                                                 int n, int reps, const EstimatorOptions& options);

/// The 3^d - 1 directions of {-1, 0, 1}^d \ {0}, lexicographic order.
std::vector<LatticePoint> symmetry_class_directions(int dimension);

/// Reference limit ball {x : g(x) <= 1}, symmetric under coordinate
/// permutations and reflections, built from gauge values g_k at the class
/// representatives v_k = (1, ..., 1, 0, ..., 0) (k ones). On the chamber
/// x_1 >= ... >= x_d >= 0 write x = sum_k s_k v_k with s_k = x_(k) - x_(k+1)
/// (|x| sorted decreasingly). The boundary passes through every v_k / g_k and
/// is interpolated in one of two ways:
///
///  - radial: the radius r_k = |v_k|_2 / g_k is interpolated linearly in the
///    barycentric weights lambda_k ~ s_k |v_k|_2 of the direction on the chord
///    simplex of the unit vectors v_k / |v_k|_2, and g(x) = |x|_2 / r(x).
///  - chamber_linear: g(x) = sum_k s_k g_k, a polytope. A norm is sublinear, so
///    this is the largest polytope through the class points that lies inside
///    every convex ball through them. With g_k = k it is exactly the l1 ball.
class ReferenceBall {
public:
    enum class Interpolation { radial, chamber_linear };

    explicit ReferenceBall(std::vector<double> class_values, Interpolation interpolation = Interpolation::radial);
    /// Exact l1 unit ball (chamber-linear with g_k = k).
    static ReferenceBall l1(int dimension);
    /// Averages the profile estimates over each symmetry class (number of nonzero coordinates).
    static ReferenceBall from_profile(const std::vector<DirectionEstimate>& profile, int dimension,
                                      Interpolation interpolation = Interpolation::radial);

    int dimension() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& class_values() const { return values_; }
    Interpolation interpolation() const { return interpolation_; }
    double gauge(std::span<const double> x) const;
    bool contains(std::span<const double> x) const { return gauge(x) <= 1.0; }
    /// Chamber-linear: exactly 2^d / prod_k g_k. Radial: 2^d E[g(y)^-d] with y
    /// uniform on the chamber simplex, by midpoint quadrature over the sorted
    /// uniforms (2^16 nodes).
    double volume() const;
    /// Upper bound on the sup-norm of the points of the ball: 1 / min_k g_k
    /// (chamber-linear, attained) or max_k r_k (radial).
    double extent() const;

private:
    std::vector<double> values_;
    Interpolation interpolation_;
};

/// |S/t triangle K| where S is fattened by unit cubes z + [0,1)^d and each
/// cube is assigned to K by its midpoint (resolution 1/t).
double symmetric_difference(const Box& box, std::span<const std::size_t> members, double t, const ReferenceBall& reference);

struct ShapeStatistics {
    double t = 0.0;
    Summary symdiff_tilde;
    Summary symdiff_star;
    Summary volume_tilde; // |B~_t| / t^d
    Summary volume_star;
    std::vector<std::uint64_t> seeds;
    int nonspanning = 0;
    std::vector<std::size_t> first_tilde_members; // replication 0, for plotting
    int half_width = 0;
};

/// Throws SupercriticalityError when F({0}) >= p_c (non-compact limit shape).
void require_positive_time_constant(const PassageLaw& law, double p_c);

ShapeStatistics shape_estimate(const PassageLaw& law, double M, double t, int reps, const ReferenceBall& reference,
                               const EstimatorOptions& options);

struct ThetaEstimate {
    Summary summary;
    int half_width = 0;
    double window_fraction = 0.5;
    int proxy_empty = 0;
    int nonspanning = 0;
    std::vector<std::uint64_t> seeds;
};
/// Replication mean of density_theta over fresh fields of half-width L.
ThetaEstimate estimate_theta(const PassageLaw& law, int half_width, double window_fraction, int reps,
                             const EstimatorOptions& options);

struct LawSplit {
    Summary finite_indicator;     // mean = fraction of replications with T(0, n x) < inf
    Summary conditional;          // T(0, n x) / n over the finite replications
    std::optional<ThetaEstimate> theta;
    double theta_squared = 0.0;
    double combined_stderr = 0.0; // sqrt(se_f^2 + (2 theta se_theta)^2)
    double deviation = 0.0;       // |finite_fraction - theta^2|
    std::vector<std::uint64_t> seeds;
};
/// Unregularized T(0, n x) split into {T < inf} and T / n on that event.
/// Accepts any law, including subcritical ones; M only identifies the run.
LawSplit law_convergence_probe(const PassageLaw& law, double M, const LatticePoint& x, int n, int reps,
                               const std::optional<ThetaEstimate>& theta, const EstimatorOptions& options);

struct TestFunction {
    std::string name;
    std::function<double(std::span<const double>)> f;

    static TestFunction constant_on_box(double value, double half_width);
    static TestFunction monomial(std::vector<int> powers);
    /// exp(1 - 1 / (1 - |x - c|^2 / r^2)) inside the ball, 0 outside.
    static TestFunction bump(std::vector<double> center, double radius);
    static TestFunction zero() { return {"zero", [](std::span<const double>) { return 0.0; }}; }
};

struct MeasureDiscrepancy {
    std::string name;
    Summary empirical;     // (1/t^d) sum over B_t^v of f(x/t), over the kept replications
    double target = 0.0;   // theta * integral of f over the reference ball
    double discrepancy = 0.0;
    double std_error = 0.0;
};
struct MeasureCheck {
    double t = 0.0;
    std::vector<MeasureDiscrepancy> rows;
    int kept_reps = 0; // replications with the origin in the C_inf proxy
    int reps = 0;
    std::vector<std::uint64_t> seeds;
};
/// Midpoint rule for the integral of f over the ball at resolution 1/t.
double integrate_over_ball(const ReferenceBall& ball, const TestFunction& f, double t);
MeasureCheck empirical_measure_check(const PassageLaw& law, double M, double t, const std::vector<TestFunction>& functions,
                                     int reps, const ReferenceBall& reference, const Summary& theta,
                                     const EstimatorOptions& options);

struct PositivityPoint {
    double p_zero = 0.0;
    EstimateSeries series;
};
/// Time constant along e_1 for the laws p_zero delta_0 + (1 - p_zero - p_inf) G + p_inf delta_inf.
/// Every grid point reuses the same field seeds, so the curve is pathwise coupled.
std::vector<PositivityPoint> positivity_scan(const FinitePart& finite, double p_inf, const std::vector<double>& p_zero_grid,
                                             double M, const std::vector<int>& n_grid, int reps,
                                             const EstimatorOptions& options);

struct LdPoint {
    int n = 0;
    Summary frequency;
    std::vector<std::uint64_t> seeds;
};
struct LdResult {
    double threshold_factor = 0.0; // mu_hat - epsilon
    std::vector<LdPoint> points;
    LinearFit log_fit;
};
/// Frequency of {0 in C_M proxy, T(0, H_n) < (mu_hat - epsilon) n}. Requires
/// F([0,M]) + p_inf = 1 and 0 < epsilon < mu_hat.
LdResult ld_probe(const PassageLaw& law, double M, double epsilon, const std::vector<int>& n_grid, int reps, double mu_hat,
                  const EstimatorOptions& options);

struct MInvariance {
    std::vector<double> M_values;
    std::vector<Summary> estimates;
    std::vector<std::vector<bool>> overlap; // pairwise 95% CI overlap
    bool all_overlap = true;
    std::vector<std::uint64_t> seeds; // shared by every M
};
MInvariance m_invariance_check(const PassageLaw& law, const std::vector<double>& M_values, const LatticePoint& x, int n,
                               int reps, const EstimatorOptions& options);

struct PointToLinePoint {
    int n = 0;
    Summary line;       // T~(0, H_n) / n
    Summary point;      // T~(0, n e_1) / n
    Summary gap;        // paired (point - line)
    int violations = 0; // replications with T~(0, H_n) > T~(0, n e_1)
    std::vector<std::uint64_t> seeds;
};
std::vector<PointToLinePoint> point_to_line_comparison(const PassageLaw& law, double M, const std::vector<int>& n_grid,
                                                       int reps, const EstimatorOptions& options);

} // namespace fpp
