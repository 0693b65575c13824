#pragma once

#include <cstdint>
#include <vector>

#include "fpp/geodesics.hpp"
#include "fpp/percolation.hpp"

namespace fpp {

/// A field together with the two proxy clusters used to regularise times:
/// C_M (edges with t <= M) and C_inf (edges with t < inf).
///
/// x~ is the l1-nearest vertex of the C_M proxy and x* that of the C_inf
/// proxy, ties going to the lexicographically smallest point. If the C_inf
/// proxy does not contain the C_M proxy (possible only on small or
/// non-spanning samples), the C_inf proxy is moved to the cluster that does and
/// proxy_reassigned() reports it.
class RegularizedContext {
public:
    RegularizedContext(EdgeField field, double M, double p_c);

    const EdgeField& field() const { return field_; }
    const Box& box() const { return field_.box(); }
    double M() const { return M_; }
    const ClusterLabeling& labeling_M() const { return labeling_M_; }
    const ClusterLabeling& labeling_inf() const { return labeling_inf_; }
    bool proxy_reassigned() const { return reassigned_; }

    std::size_t tilde_vertex(std::size_t v) const;
    std::size_t star_vertex(std::size_t v) const;
    LatticePoint tilde_point(const LatticePoint& x) const;
    LatticePoint star_point(const LatticePoint& x) const;

    /// T~(x, y) = T(x~, y~).
    ExtendedTime tilde_time(const LatticePoint& x, const LatticePoint& y) const;
    /// T*(x, y) = T(x*, y*).
    ExtendedTime star_time(const LatticePoint& x, const LatticePoint& y) const;
    /// T~(0, H_n) = min over x in H_n of T(0~, x~).
    ExtendedTime tilde_point_to_line(int n) const;

    struct ReachedPair {
        ReachedSet tilde; // {z : T~(0, z) <= t}
        ReachedSet star;  // {z : T*(0, z) <= t}
    };
    ReachedPair regularized_reached_sets(double t) const;

    /// T~(0, z) for every vertex z (+inf beyond time_limit).
    std::vector<double> tilde_times_from_origin(double time_limit = kInfinity) const;
    std::vector<double> star_times_from_origin(double time_limit = kInfinity) const;

private:
    std::vector<double> projected_times(const ClusterLabeling& lab, double time_limit) const;

    EdgeField field_;
    double M_;
    ClusterLabeling labeling_M_;
    ClusterLabeling labeling_inf_;
    bool reassigned_ = false;
};

} // namespace fpp
