#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fpp/edge_field.hpp"

namespace fpp {

/// Minimal passage times from a source set over the box graph.
class DistanceMap {
public:
    DistanceMap(Box box, std::vector<std::size_t> sources, std::vector<double> times, std::uint64_t field_seed)
        : box_(std::move(box)), sources_(std::move(sources)), times_(std::move(times)), field_seed_(field_seed)
    {
    }

    const Box& box() const { return box_; }
    const std::vector<std::size_t>& sources() const { return sources_; }
    std::uint64_t field_seed() const { return field_seed_; }

    ExtendedTime at(const LatticePoint& p) const { return at(box_.index(p)); }
    ExtendedTime at(std::size_t v) const { return times_[v] < kInfinity ? ExtendedTime(times_[v]) : ExtendedTime::infinity(); }
    double raw(std::size_t v) const { return times_[v]; }
    const std::vector<double>& raw_times() const { return times_; }

private:
    Box box_;
    std::vector<std::size_t> sources_;
    std::vector<double> times_;
    std::uint64_t field_seed_;
};

struct SearchOptions {
    /// Stop as soon as a vertex satisfying this predicate is settled.
    std::function<bool(std::size_t)> stop_when;
    /// Vertices farther than this are left at +inf.
    double time_limit = kInfinity;
    /// Track whether geodesics enter the layer of this width along the box boundary (< 0 disables).
    int boundary_layer = -1;
};

struct SearchResult {
    std::vector<double> times;          // exact for settled vertices, +inf beyond the limit
    std::optional<std::size_t> stopped_at;
    bool stopped_geodesic_touched_boundary = false;
    std::size_t settled = 0;
};

/// Dijkstra with a binary heap over nonnegative extended-real weights; +inf
/// edges are never relaxed and zero-weight edges need no special care.
SearchResult dijkstra(const EdgeField& field, std::span<const std::size_t> sources, const SearchOptions& options = {});

DistanceMap shortest_times(const EdgeField& field, const std::vector<LatticePoint>& sources);

/// T(x, y) inside the box.
ExtendedTime point_time(const EdgeField& field, const LatticePoint& x, const LatticePoint& y);

/// T(x, H_n) = min over the box points z with z_1 = n of T(x, z).
ExtendedTime point_to_line(const EdgeField& field, const LatticePoint& x, int n);

/// {v : T(sources, v) <= t}.
class ReachedSet {
public:
    ReachedSet(Box box, double threshold, std::vector<std::size_t> vertices)
        : box_(std::move(box)), threshold_(threshold), vertices_(std::move(vertices))
    {
    }
    double threshold() const { return threshold_; }
    const std::vector<std::size_t>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool contains(const LatticePoint& p) const;
    std::vector<LatticePoint> members() const;

private:
    Box box_;
    double threshold_;
    std::vector<std::size_t> vertices_; // increasing
};

ReachedSet reached_set(const DistanceMap& map, double t);

} // namespace fpp
