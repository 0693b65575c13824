#include "fpp/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fpp {

LatticePoint LatticePoint::unit(int dimension, int axis, int length)
{
    std::vector<int> c(dimension, 0);
    c.at(axis) = length;
    return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const
{
    LatticePoint r = *this;
    for (int i = 0; i < dimension(); ++i) r.coords_[i] += o.coords_[i];
    return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const
{
    LatticePoint r = *this;
    for (int i = 0; i < dimension(); ++i) r.coords_[i] -= o.coords_[i];
    return r;
}

LatticePoint LatticePoint::operator*(int k) const
{
    LatticePoint r = *this;
    for (int& c : r.coords_) c *= k;
    return r;
}

std::string LatticePoint::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dimension(); ++i) os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
}

double norm(const LatticePoint& p, Norm kind)
{
    double acc = 0.0;
    for (int c : p.coords()) {
        const double a = std::abs(c);
        switch (kind) {
        case Norm::one: acc += a; break;
        case Norm::two: acc += a * a; break;
        case Norm::inf: acc = std::max(acc, a); break;
        }
    }
    return kind == Norm::two ? std::sqrt(acc) : acc;
}

int l1_distance(const LatticePoint& a, const LatticePoint& b)
{
    int s = 0;
    for (int i = 0; i < a.dimension(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

Edge Edge::between(const LatticePoint& a, const LatticePoint& b)
{
    if (a.dimension() != b.dimension() || l1_distance(a, b) != 1)
        throw DomainError("points " + a.to_string() + " and " + b.to_string() + " are not neighbours");
    for (int i = 0; i < a.dimension(); ++i) {
        if (a[i] != b[i]) return Edge{a[i] < b[i] ? a : b, i};
    }
    throw DomainError("unreachable");
}

Box::Box(int dimension, int half_width) : dimension_(dimension), half_width_(half_width)
{
    if (dimension < 2) throw DomainError("dimension must be at least 2");
    if (half_width < 1) throw DomainError("box half-width must be at least 1");
    const auto n = static_cast<std::size_t>(side());
    strides_.assign(dimension, 1);
    for (int a = dimension - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * n;
    vertex_count_ = strides_[0] * n;
    edges_per_axis_ = vertex_count_ / n * static_cast<std::size_t>(2 * half_width);
}

bool Box::contains(const LatticePoint& p) const
{
    if (p.dimension() != dimension_) return false;
    for (int c : p.coords())
        if (c < -half_width_ || c > half_width_) return false;
    return true;
}

std::size_t Box::index(const LatticePoint& p) const
{
    if (!contains(p)) throw DomainError("point " + p.to_string() + " outside box");
    std::size_t v = 0;
    for (int a = 0; a < dimension_; ++a) v += static_cast<std::size_t>(p[a] + half_width_) * strides_[a];
    return v;
}

LatticePoint Box::point(std::size_t vertex) const
{
    std::vector<int> c(dimension_);
    for (int a = 0; a < dimension_; ++a) c[a] = coord(vertex, a);
    return LatticePoint(std::move(c));
}

std::size_t Box::edge_index(std::size_t base_vertex, int axis) const
{
    // Mixed radix: 2L along the edge axis, 2L+1 elsewhere, first coordinate most significant.
    std::size_t rank = 0;
    for (int a = 0; a < dimension_; ++a) {
        const auto radix = static_cast<std::size_t>(a == axis ? 2 * half_width_ : side());
        rank = rank * radix + static_cast<std::size_t>(coord(base_vertex, a) + half_width_);
    }
    return static_cast<std::size_t>(axis) * edges_per_axis_ + rank;
}

std::size_t Box::edge_index(const Edge& e) const
{
    if (e.axis < 0 || e.axis >= dimension_ || !contains(e.base) || e.base[e.axis] >= half_width_)
        throw DomainError("edge outside box");
    return edge_index(index(e.base), e.axis);
}

Edge Box::edge(std::size_t index) const
{
    if (index >= edge_count()) throw DomainError("edge index out of range");
    const int axis = static_cast<int>(index / edges_per_axis_);
    std::size_t rank = index % edges_per_axis_;
    std::vector<int> c(dimension_);
    for (int a = dimension_ - 1; a >= 0; --a) {
        const auto radix = static_cast<std::size_t>(a == axis ? 2 * half_width_ : side());
        c[a] = static_cast<int>(rank % radix) - half_width_;
        rank /= radix;
    }
    return Edge{LatticePoint(std::move(c)), axis};
}

unsigned Box::face_mask(std::size_t v) const
{
    unsigned m = 0;
    for (int a = 0; a < dimension_; ++a) {
        const int c = coord(v, a);
        if (c == -half_width_) m |= 1u << (2 * a);
        if (c == half_width_) m |= 1u << (2 * a + 1);
    }
    return m;
}

int Box::boundary_distance(std::size_t v) const
{
    int best = half_width_;
    for (int a = 0; a < dimension_; ++a) best = std::min(best, half_width_ - std::abs(coord(v, a)));
    return best;
}

std::vector<LatticePoint> ball_points(const LatticePoint& center, double r, Norm kind, const Box& box)
{
    if (!box.contains(center)) throw DomainError("ball center outside box");
    if (!(r >= 0.0)) throw DomainError("ball radius must be nonnegative");
    std::vector<LatticePoint> out;
    const int reach = static_cast<int>(std::floor(r));
    // Odometer over the bounding cube, clipped to the box, in lexicographic order.
    const int d = box.dimension();
    std::vector<int> lo(d), hi(d);
    for (int a = 0; a < d; ++a) {
        lo[a] = std::max(-box.half_width(), center[a] - reach);
        hi[a] = std::min(box.half_width(), center[a] + reach);
    }
    std::vector<int> c = lo;
    while (true) {
        LatticePoint p(c);
        if (norm(p - center, kind) <= r) out.push_back(std::move(p));
        int a = d - 1;
        while (a >= 0 && c[a] == hi[a]) c[a--] = 0;
        if (a < 0) break;
        ++c[a];
        for (int b = a + 1; b < d; ++b) c[b] = lo[b];
    }
    return out;
}

std::vector<std::size_t> hyperplane_vertices(Hyperplane h, const Box& box)
{
    if (std::abs(h.level) > box.half_width()) throw DomainError("hyperplane level outside box");
    const std::size_t first = static_cast<std::size_t>(h.level + box.half_width()) * box.stride(0);
    std::vector<std::size_t> out(box.stride(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = first + i;
    return out;
}

std::vector<LatticePoint> hyperplane_points(Hyperplane h, const Box& box)
{
    std::vector<LatticePoint> out;
    for (std::size_t v : hyperplane_vertices(h, box)) out.push_back(box.point(v));
    return out;
}

} // namespace fpp
