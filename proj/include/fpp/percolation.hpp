#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpp/edge_field.hpp"
#include "fpp/stats.hpp"

namespace fpp {

/// Which edges are open: t(e) <= M, t(e) < inf, or t(e) = 0.
struct ThresholdSpec {
    enum class Kind { at_most, finite, zero };
    Kind kind = Kind::finite;
    double level = 0.0;

    static ThresholdSpec at_most(double m);
    static ThresholdSpec finite() { return {Kind::finite, 0.0}; }
    static ThresholdSpec zero() { return {Kind::zero, 0.0}; }

    bool open(double t) const noexcept
    {
        switch (kind) {
        case Kind::at_most: return t <= level;
        case Kind::finite: return t < kInfinity;
        case Kind::zero: return t == 0.0;
        }
        return false;
    }
    /// Probability that an edge is open under the law.
    double open_probability(const PassageLaw& law) const;
    bool operator==(const ThresholdSpec&) const = default;
};

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::uint32_t find(std::uint32_t x);
    void unite(std::uint32_t a, std::uint32_t b);

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

/// Open clusters of a thresholded field. Each cluster is represented by its
/// smallest (lexicographically first) vertex.
///
/// The infinite-cluster proxy is the open cluster touching all 2d faces of the
/// box (the one holding the smallest vertex if several do); failing that, the
/// largest cluster with at least one open edge, with `spanning` false.
class ClusterLabeling {
public:
    ClusterLabeling(const EdgeField& field, ThresholdSpec threshold);

    const Box& box() const { return box_; }
    ThresholdSpec threshold() const { return threshold_; }

    std::uint32_t root(std::size_t v) const { return root_[v]; }
    std::uint32_t cluster_size(std::size_t v) const { return size_[root_[v]]; }
    const std::vector<std::uint32_t>& roots() const { return root_; }

    bool has_proxy() const { return proxy_.has_value(); }
    std::optional<std::uint32_t> proxy_root() const { return proxy_; }
    std::vector<std::uint32_t> proxy_roots() const { return proxy_ ? std::vector<std::uint32_t>{*proxy_} : std::vector<std::uint32_t>{}; }
    bool in_proxy(std::size_t v) const { return proxy_ && root_[v] == *proxy_; }
    bool spanning() const { return spanning_; }
    /// Number of distinct clusters touching every face.
    int spanning_cluster_count() const { return spanning_count_; }

    /// Replace the proxy by the cluster containing v (v must be in an open cluster).
    void reassign_proxy(std::size_t v);

private:
    Box box_;
    ThresholdSpec threshold_;
    std::vector<std::uint32_t> root_;
    std::vector<std::uint32_t> size_; // indexed by root
    std::optional<std::uint32_t> proxy_;
    bool spanning_ = false;
    int spanning_count_ = 0;
};

ClusterLabeling label_clusters(const EdgeField& field, ThresholdSpec threshold);

struct DensityValue {
    double value = 0.0;
    bool proxy_empty = false;
};

/// Fraction of the central sub-box of half-width floor(window_fraction * L)
/// lying in the proxy cluster. Requires a labeling of the finite-time graph.
DensityValue density_theta(const ClusterLabeling& labeling, double window_fraction = 0.5);

/// Nearest proxy vertex in l1 distance, ties broken by lexicographic order.
/// Expands l1 shells around v and stops at the first shell holding a proxy vertex.
std::optional<std::size_t> nearest_proxy_vertex(const ClusterLabeling& labeling, std::size_t v);

/// nearest_proxy_vertex() for every vertex at once, by layered breadth-first
/// propagation: the lexicographically smallest nearest proxy vertex of v is the
/// smallest among those of its neighbours one layer closer. Empty proxy -> empty vector.
std::vector<std::uint32_t> proxy_projection_map(const ClusterLabeling& labeling);

/// l1 distance from every vertex to the nearest proxy vertex (-1 when the proxy is empty).
std::vector<int> proxy_distance_map(const ClusterLabeling& labeling);

/// Hop counts of open paths from source inside the box; -1 when unreachable.
/// Search stops expanding beyond max_hops when it is nonnegative.
std::vector<int> open_path_hops(const EdgeField& field, ThresholdSpec threshold, std::size_t source, int max_hops = -1);

/// Length of the shortest open path from x to y inside the box, nullopt for +inf.
std::optional<int> chemical_distance(const EdgeField& field, ThresholdSpec threshold, const LatticePoint& x, const LatticePoint& y);

enum class TailEvent { finite_cluster, hole, chem };
std::string to_string(TailEvent event);
TailEvent tail_event_from_string(const std::string& name);

struct ProbeOptions {
    int dimension = 2;
    double p_c = 0.5;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
};

struct TailProbeSettings {
    TailEvent event = TailEvent::hole;
    std::vector<int> grid;      // r for holes and finite clusters, ||y||_1 for chem
    int reps = 100;
    int half_width = 40;        // box L
    double window_fraction = 0.5;
    double chem_factor = 4.0;   // chem threshold l = chem_factor * ||y||_1
};

struct TailPoint {
    double parameter = 0.0;
    double frequency = 0.0;
    double std_error = 0.0;
    int reps = 0;
    std::uint64_t seed = 0;
};

struct TailProbeResult {
    std::vector<TailPoint> points;
    LinearFit log_fit;          // log(frequency) vs parameter over nonzero frequencies
    int nonspanning_reps = 0;
    std::vector<std::uint64_t> replication_seeds;
};

/// Monte Carlo frequency of a tail event of the finite-time percolation.
/// Holes and finite clusters average the event over every origin in the
/// central window of each field; chem averages over the 2d images +-k e_i of
/// the target from the box centre. The law must be supercritical.
TailProbeResult tail_probe(const PassageLaw& law, const TailProbeSettings& settings, const ProbeOptions& options);

struct PlaquettePoint {
    int K = 0;
    double frequency = 0.0;
    double std_error = 0.0;
    int reps = 0;
};

/// Frequency of max{ D_inf(0~, y~) : y in {0} x [0, delta K)^(d-1) } > alpha K,
/// tilde points taken in the t <= M proxy.
std::vector<PlaquettePoint> plaquette_distance_probe(const PassageLaw& law, double M, double delta, double alpha,
                                                     const std::vector<int>& K_list, int reps, const ProbeOptions& options);

/// Throws SupercriticalityError unless 1 - p_inf > p_c.
void require_supercritical(const PassageLaw& law, double p_c);
/// Throws SupercriticalityError unless F([0,M]) > p_c.
void require_valid_M(const PassageLaw& law, double M, double p_c);

} // namespace fpp
