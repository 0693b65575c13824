#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/passage_law.hpp"

namespace fpp {

/// i.i.d. passage times on the edges of a box. The time of edge e is
/// law.sample(to_unit(hash_pair(seed, canonical_index(e)))), so it depends only
/// on (seed, index, law). Immutable once built.
class EdgeField {
public:
    static EdgeField generate(const Box& box, const PassageLaw& law, std::uint64_t seed);
    /// Hand-built field; `time_of` is called once per edge in canonical index order.
    static EdgeField from_function(const Box& box, const PassageLaw& law, const std::function<double(const Edge&)>& time_of);

    const Box& box() const { return box_; }
    const PassageLaw& law() const { return law_; }
    std::uint64_t seed() const { return seed_; }

    ExtendedTime time_of(const Edge& e) const;
    ExtendedTime time_by_index(std::size_t canonical_index) const;
    /// Raw time of the edge base_vertex -> base_vertex + e_axis (+inf if absent).
    double time(std::size_t base_vertex, int axis) const noexcept
    {
        return times_[base_vertex * static_cast<std::size_t>(box_.dimension()) + static_cast<std::size_t>(axis)];
    }

    /// Edge times in canonical index order.
    std::vector<double> canonical_times() const;

    friend EdgeField map_times(const EdgeField& field, const LawTransform& transform);

private:
    EdgeField(Box box, PassageLaw law, std::uint64_t seed);

    Box box_;
    PassageLaw law_;
    std::uint64_t seed_;
    std::vector<double> times_; // vertex-major: slot v*d + axis
};

/// Pathwise image of the field under a law transform: same uniforms, edge-wise map.
EdgeField map_times(const EdgeField& field, const LawTransform& transform);

/// Debug dump: "FPPFIELD" magic, u32 version, u32 d, u32 L, u64 seed, u64 law
/// hash (first 8 bytes of the law content hash), u64 edge count, then one
/// little-endian IEEE-754 double per edge in canonical order, with +inf stored
/// as the largest finite double.
void write_field_dump(const EdgeField& field, std::ostream& out);

struct FieldDump {
    int dimension = 0;
    int half_width = 0;
    std::uint64_t seed = 0;
    std::uint64_t law_hash = 0;
    std::vector<double> times; // +inf restored
};
FieldDump read_field_dump(std::istream& in);
std::uint64_t law_hash64(const PassageLaw& law);

} // namespace fpp
