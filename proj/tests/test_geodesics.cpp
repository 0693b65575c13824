#include <doctest.h>

#include <random>

#include "fpp/geodesics.hpp"
#include "fpp/percolation.hpp"
#include "oracles.hpp"

using namespace fpp;

namespace {

bool same_time(double a, double b)
{
    if (a == kInfinity || b == kInfinity) return a == b;
    return a == doctest::Approx(b).epsilon(1e-12);
}

} // namespace

TEST_CASE("constant law gives l1 distances")
{
    const Box box(2, 6);
    const EdgeField ones = EdgeField::generate(box, PassageLaw::dirac(1.0), 1);
    const DistanceMap map = shortest_times(ones, {LatticePoint::origin(2)});
    for (std::size_t v = 0; v < box.vertex_count(); ++v)
        CHECK(map.at(v) == ExtendedTime(norm(box.point(v), Norm::one)));
    CHECK(point_time(ones, {0, 0}, {3, -2}) == ExtendedTime(5.0));

    const Box box3(3, 3);
    const EdgeField threes = EdgeField::generate(box3, PassageLaw::dirac(3.0), 1);
    CHECK(point_time(threes, {0, 0, 0}, {1, 2, -3}) == ExtendedTime(18.0));
}

TEST_CASE("passage times agree with exhaustive path enumeration")
{
    std::mt19937_64 rng(31);
    const Box box(2, 1); // 3x3 grid with 12 edges keeps enumeration cheap
    const PassageLaw law(0.2, 0.2, ConstantPart{1.0});
    const std::vector<double> values{0.0, 0.5, 1.0, 2.0, 3.5, kInfinity};
    for (int trial = 0; trial < 100; ++trial) {
        const EdgeField f = oracle::random_field(box, law, rng, values);
        const auto fw = oracle::all_pairs(f);
        for (std::size_t a = 0; a < box.vertex_count(); ++a) {
            const DistanceMap map = shortest_times(f, {box.point(a)});
            for (std::size_t b = 0; b < box.vertex_count(); ++b) {
                REQUIRE(same_time(map.raw(b), fw[a][b]));
                REQUIRE(same_time(oracle::min_path_time_exhaustive(f, a, b), fw[a][b]));
            }
        }
    }
}

TEST_CASE("larger random instances against Floyd-Warshall")
{
    std::mt19937_64 rng(32);
    const Box box(2, 2);
    const PassageLaw law(0.2, 0.2, ConstantPart{1.0});
    for (int trial = 0; trial < 100; ++trial) {
        const EdgeField f = oracle::random_field(box, law, rng, {0.0, 1.0, 1.5, 4.0, kInfinity});
        const auto fw = oracle::all_pairs(f);
        const std::size_t o = box.origin_index();
        const DistanceMap map = shortest_times(f, {box.point(o)});
        for (std::size_t b = 0; b < box.vertex_count(); ++b) {
            REQUIRE(same_time(map.raw(b), fw[o][b]));
            CHECK(same_time(point_time(f, box.point(o), box.point(b)).value(), fw[o][b]));
        }
        CHECK(same_time(oracle::min_path_time_exhaustive(f, o, 0), fw[o][0]));
    }
}

TEST_CASE("symmetry, triangle inequality and closed cuts")
{
    const Box box(2, 6);
    const PassageLaw law(0.2, 0.1, ExponentialPart{1.0});
    const EdgeField f = EdgeField::generate(box, law, 5);
    const auto pts = ball_points(LatticePoint::origin(2), 3, Norm::one, box);
    for (const auto& x : pts)
        for (const auto& y : pts) {
            const ExtendedTime xy = point_time(f, x, y);
            CHECK(same_time(xy.value(), point_time(f, y, x).value()));
            for (const auto& z : {LatticePoint{2, 2}, LatticePoint{-1, 3}})
                CHECK(xy.value() <= (point_time(f, x, z) + point_time(f, z, y)).value() + 1e-12);
        }

    const EdgeField cut = EdgeField::from_function(box, PassageLaw::dirac(1.0), [](const Edge& e) {
        return (e.axis == 0 && e.base[0] == 0) ? kInfinity : 1.0;
    });
    CHECK(!point_time(cut, {0, 0}, {1, 0}).is_finite());
    CHECK(!point_to_line(cut, {0, 0}, 3).is_finite());
}

TEST_CASE("times are bounded by M times the chemical distance in the M-open graph")
{
    const Box box(2, 8);
    const PassageLaw law(0.2, 0.1, UniformPart{0.0, 3.0});
    const double M = 2.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const EdgeField f = EdgeField::generate(box, law, seed);
        const DistanceMap map = shortest_times(f, {LatticePoint::origin(2)});
        const auto hops = open_path_hops(f, ThresholdSpec::at_most(M), box.origin_index());
        for (std::size_t v = 0; v < box.vertex_count(); ++v)
            if (hops[v] >= 0) CHECK(map.raw(v) <= M * hops[v] + 1e-12);
    }
}

TEST_CASE("passage times are monotone in the pathwise couplings")
{
    const Box box(2, 8);
    const PassageLaw law(0.2, 0.1, UniformPart{0.0, 3.0});
    const EdgeField f = EdgeField::generate(box, law, 8);
    const DistanceMap base = shortest_times(f, {LatticePoint::origin(2)});
    const DistanceMap lo = shortest_times(map_times(f, LawTransform::truncate_at(1.0)), {LatticePoint::origin(2)});
    const DistanceMap hi = shortest_times(map_times(f, LawTransform::three_level_at(2.0)), {LatticePoint::origin(2)});
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        CHECK(lo.raw(v) <= base.raw(v));
        CHECK(base.raw(v) <= hi.raw(v));
    }
}

TEST_CASE("point to line")
{
    const Box box(2, 6);
    CHECK(point_to_line(EdgeField::generate(box, PassageLaw::dirac(1.0), 1), {0, 0}, 4) == ExtendedTime(4.0));
    CHECK(point_to_line(EdgeField::generate(box, PassageLaw::dirac(2.0), 1), {0, 0}, 3) == ExtendedTime(6.0));

    const EdgeField f = EdgeField::generate(box, PassageLaw(0.2, 0.2, UniformPart{0.5, 2.0}), 4);
    const ExtendedTime line = point_to_line(f, LatticePoint::origin(2), 3);
    ExtendedTime best = ExtendedTime::infinity();
    for (const auto& z : hyperplane_points(Hyperplane{3}, box)) {
        const ExtendedTime t = point_time(f, LatticePoint::origin(2), z);
        CHECK(line <= t);
        best = std::min(best, t);
    }
    CHECK(line == best);
}

TEST_CASE("reached sets")
{
    const Box box(2, 5);
    const DistanceMap map = shortest_times(EdgeField::generate(box, PassageLaw::dirac(1.0), 1), {LatticePoint::origin(2)});
    const ReachedSet two = reached_set(map, 2.0);
    CHECK(two.size() == 13u);
    CHECK(two.contains({1, 1}));
    CHECK(!two.contains({2, 1}));
    CHECK(two.members() == ball_points(LatticePoint::origin(2), 2, Norm::one, box));
    CHECK(reached_set(map, 0.0).size() == 1u);

    const DistanceMap rnd = shortest_times(EdgeField::generate(box, PassageLaw(0.1, 0.2, ExponentialPart{1.0}), 2),
                                           {LatticePoint::origin(2)});
    std::size_t prev = 0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const ReachedSet r = reached_set(rnd, t);
        CHECK(r.size() >= prev);
        const ReachedSet half = reached_set(rnd, t / 2);
        for (std::size_t v : half.vertices()) CHECK(r.contains(box.point(v)));
        prev = r.size();
    }
}

TEST_CASE("search options")
{
    const Box box(2, 10);
    const EdgeField ones = EdgeField::generate(box, PassageLaw::dirac(1.0), 1);
    const std::size_t o = box.origin_index();
    SearchOptions limited;
    limited.time_limit = 3.0;
    const SearchResult r = dijkstra(ones, std::span<const std::size_t>(&o, 1), limited);
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        const int n = norm(box.point(v), Norm::one);
        if (n <= 3) CHECK(r.times[v] == n);
        else CHECK(r.times[v] == kInfinity);
    }

    SearchOptions stop;
    const std::size_t target = box.index({4, 0});
    stop.stop_when = [&](std::size_t v) { return v == target; };
    stop.boundary_layer = 1;
    const SearchResult s = dijkstra(ones, std::span<const std::size_t>(&o, 1), stop);
    CHECK(s.stopped_at == std::optional<std::size_t>(target));
    CHECK(s.times[target] == 4.0);
    CHECK(!s.stopped_geodesic_touched_boundary);
}
