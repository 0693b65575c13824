#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "fpp/errors.hpp"

namespace fpp {

/// A point of Z^d. Comparison is lexicographic in the coordinates.
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::vector<int> coords) : coords_(std::move(coords)) {}
    LatticePoint(std::initializer_list<int> coords) : coords_(coords) {}

    static LatticePoint origin(int dimension) { return LatticePoint(std::vector<int>(dimension, 0)); }
    static LatticePoint unit(int dimension, int axis, int length = 1);

    int dimension() const { return static_cast<int>(coords_.size()); }
    int operator[](int i) const { return coords_[i]; }
    int& operator[](int i) { return coords_[i]; }
    const std::vector<int>& coords() const { return coords_; }

    LatticePoint operator+(const LatticePoint& o) const;
    LatticePoint operator-(const LatticePoint& o) const;
    LatticePoint operator*(int k) const;

    auto operator<=>(const LatticePoint&) const = default;
    bool operator==(const LatticePoint&) const = default;

    std::string to_string() const;

private:
    std::vector<int> coords_;
};

enum class Norm { one, two, inf };

double norm(const LatticePoint& p, Norm kind);
int l1_distance(const LatticePoint& a, const LatticePoint& b);

/// Nearest-neighbour edge in canonical form: base -> base + e_axis, axis in [0, d).
struct Edge {
    LatticePoint base;
    int axis = 0;

    /// Canonical form of the undirected edge {a, b}; throws if a, b are not neighbours.
    static Edge between(const LatticePoint& a, const LatticePoint& b);
    LatticePoint head() const { return base + LatticePoint::unit(base.dimension(), axis); }

    bool operator==(const Edge&) const = default;
};

/// The set {z : z_1 = level}.
struct Hyperplane {
    int level = 0;
};

/// The finite region [-L, L]^d. Vertices are indexed in lexicographic order
/// (first coordinate most significant), so index order equals point order.
class Box {
public:
    Box(int dimension, int half_width);

    int dimension() const { return dimension_; }
    int half_width() const { return half_width_; }
    int side() const { return 2 * half_width_ + 1; }
    std::size_t vertex_count() const { return vertex_count_; }
    /// d * (2L+1)^(d-1) * 2L
    std::size_t edge_count() const { return edges_per_axis_ * static_cast<std::size_t>(dimension_); }
    std::size_t stride(int axis) const { return strides_[axis]; }

    bool contains(const LatticePoint& p) const;
    std::size_t index(const LatticePoint& p) const;
    LatticePoint point(std::size_t vertex) const;
    int coord(std::size_t vertex, int axis) const
    {
        return static_cast<int>((vertex / strides_[axis]) % static_cast<std::size_t>(side())) - half_width_;
    }
    std::size_t origin_index() const { return (vertex_count_ - 1) / 2; }

    /// Canonical edge index, a bijection onto [0, edge_count()).
    std::size_t edge_index(const Edge& e) const;
    std::size_t edge_index(std::size_t base_vertex, int axis) const;
    Edge edge(std::size_t index) const;
    bool has_edge(std::size_t base_vertex, int axis) const { return coord(base_vertex, axis) < half_width_; }

    /// Calls f(neighbour, base_vertex, axis) for every in-box neighbour of v;
    /// (base_vertex, axis) is the canonical form of the connecting edge.
    template <class F>
    void for_each_neighbor(std::size_t v, F&& f) const
    {
        for (int a = 0; a < dimension_; ++a) {
            const int c = coord(v, a);
            const std::size_t s = strides_[a];
            if (c < half_width_) f(v + s, v, a);
            if (c > -half_width_) f(v - s, v - s, a);
        }
    }

    /// Bit 2a set when the vertex lies on face {x_a = -L}, bit 2a+1 for {x_a = +L}.
    unsigned face_mask(std::size_t v) const;
    /// Smallest distance from v to the box boundary, in lattice steps along an axis.
    int boundary_distance(std::size_t v) const;

    bool operator==(const Box& o) const { return dimension_ == o.dimension_ && half_width_ == o.half_width_; }

private:
    int dimension_;
    int half_width_;
    std::size_t vertex_count_;
    std::size_t edges_per_axis_;
    std::vector<std::size_t> strides_;
};

/// Lattice points of {y : ||y - center|| <= r} inside the box, lexicographic order.
std::vector<LatticePoint> ball_points(const LatticePoint& center, double r, Norm kind, const Box& box);

/// Box points with first coordinate equal to the hyperplane level, lexicographic order.
std::vector<LatticePoint> hyperplane_points(Hyperplane h, const Box& box);
std::vector<std::size_t> hyperplane_vertices(Hyperplane h, const Box& box);

} // namespace fpp
