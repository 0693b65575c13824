#include "fpp/geodesics.hpp"

#include <algorithm>
#include <queue>

namespace fpp {

SearchResult dijkstra(const EdgeField& field, std::span<const std::size_t> sources, const SearchOptions& options)
{
    if (sources.empty()) throw DomainError("shortest path search needs at least one source");
    const Box& box = field.box();
    SearchResult result;
    result.times.assign(box.vertex_count(), kInfinity);
    const bool track = options.boundary_layer >= 0;
    std::vector<char> touched(track ? box.vertex_count() : 0, 0);
    auto in_layer = [&](std::size_t v) { return box.boundary_distance(v) < options.boundary_layer; };

    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t s : sources) {
        if (s >= box.vertex_count()) throw DomainError("source outside box");
        result.times[s] = 0.0;
        if (track) touched[s] = in_layer(s);
        heap.emplace(0.0, static_cast<std::uint32_t>(s));
    }
    std::vector<char> settled(box.vertex_count(), 0);
    while (!heap.empty()) {
        const auto [t, v] = heap.top();
        heap.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        ++result.settled;
        if (options.stop_when && options.stop_when(v)) {
            result.stopped_at = v;
            if (track) result.stopped_geodesic_touched_boundary = touched[v];
            break;
        }
        box.for_each_neighbor(v, [&](std::size_t u, std::size_t base, int axis) {
            const double w = field.time(base, axis);
            if (!(w < kInfinity) || settled[u]) return;
            const double cand = t + w;
            if (cand < result.times[u] && cand <= options.time_limit) {
                result.times[u] = cand;
                if (track) touched[u] = touched[v] || in_layer(u);
                heap.emplace(cand, static_cast<std::uint32_t>(u));
            }
        });
    }
    return result;
}

DistanceMap shortest_times(const EdgeField& field, const std::vector<LatticePoint>& sources)
{
    if (sources.empty()) throw DomainError("shortest_times needs a nonempty source set");
    std::vector<std::size_t> ids;
    for (const auto& s : sources) ids.push_back(field.box().index(s));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    SearchResult r = dijkstra(field, ids);
    return DistanceMap(field.box(), std::move(ids), std::move(r.times), field.seed());
}

ExtendedTime point_time(const EdgeField& field, const LatticePoint& x, const LatticePoint& y)
{
    const std::size_t from = field.box().index(x);
    const std::size_t to = field.box().index(y);
    SearchOptions opts;
    opts.stop_when = [to](std::size_t v) { return v == to; };
    const std::size_t src[] = {from};
    const SearchResult r = dijkstra(field, src, opts);
    return r.stopped_at ? ExtendedTime(r.times[to]) : ExtendedTime::infinity();
}

ExtendedTime point_to_line(const EdgeField& field, const LatticePoint& x, int n)
{
    const Box& box = field.box();
    const std::size_t from = box.index(x);
    if (std::abs(n) > box.half_width()) throw DomainError("hyperplane level outside box");
    SearchOptions opts;
    opts.stop_when = [&box, n](std::size_t v) { return box.coord(v, 0) == n; };
    const std::size_t src[] = {from};
    const SearchResult r = dijkstra(field, src, opts);
    return r.stopped_at ? ExtendedTime(r.times[*r.stopped_at]) : ExtendedTime::infinity();
}

bool ReachedSet::contains(const LatticePoint& p) const
{
    if (!box_.contains(p)) return false;
    return std::binary_search(vertices_.begin(), vertices_.end(), box_.index(p));
}

std::vector<LatticePoint> ReachedSet::members() const
{
    std::vector<LatticePoint> out;
    out.reserve(vertices_.size());
    for (std::size_t v : vertices_) out.push_back(box_.point(v));
    return out;
}

ReachedSet reached_set(const DistanceMap& map, double t)
{
    if (!(t >= 0.0)) throw DomainError("reached set threshold must be nonnegative");
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < map.raw_times().size(); ++v)
        if (map.raw(v) <= t) vs.push_back(v);
    return ReachedSet(map.box(), t, std::move(vs));
}

} // namespace fpp
