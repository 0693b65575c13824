#include "fpp/regularize.hpp"

namespace fpp {

RegularizedContext::RegularizedContext(EdgeField field, double M, double p_c)
    : field_(std::move(field)), M_(M), labeling_M_(field_, ThresholdSpec::at_most(M)),
      labeling_inf_(field_, ThresholdSpec::finite())
{
    require_valid_M(field_.law(), M, p_c);
    if (labeling_M_.has_proxy()) {
        const std::size_t anchor = *labeling_M_.proxy_root();
        if (!labeling_inf_.in_proxy(anchor)) {
            labeling_inf_.reassign_proxy(anchor);
            reassigned_ = true;
        }
    }
}

namespace {

std::size_t project(const ClusterLabeling& lab, std::size_t v, const char* which)
{
    const auto p = nearest_proxy_vertex(lab, v);
    if (!p) throw DomainError(std::string("empty ") + which + " proxy cluster: no regularised point");
    return *p;
}

ExtendedTime time_between(const EdgeField& field, std::size_t from, std::size_t to)
{
    return point_time(field, field.box().point(from), field.box().point(to));
}

} // namespace

std::size_t RegularizedContext::tilde_vertex(std::size_t v) const { return project(labeling_M_, v, "C_M"); }
std::size_t RegularizedContext::star_vertex(std::size_t v) const { return project(labeling_inf_, v, "C_inf"); }

LatticePoint RegularizedContext::tilde_point(const LatticePoint& x) const { return box().point(tilde_vertex(box().index(x))); }
LatticePoint RegularizedContext::star_point(const LatticePoint& x) const { return box().point(star_vertex(box().index(x))); }

ExtendedTime RegularizedContext::tilde_time(const LatticePoint& x, const LatticePoint& y) const
{
    return time_between(field_, tilde_vertex(box().index(x)), tilde_vertex(box().index(y)));
}

ExtendedTime RegularizedContext::star_time(const LatticePoint& x, const LatticePoint& y) const
{
    return time_between(field_, star_vertex(box().index(x)), star_vertex(box().index(y)));
}

ExtendedTime RegularizedContext::tilde_point_to_line(int n) const
{
    const auto line = hyperplane_vertices(Hyperplane{n}, box());
    std::vector<char> target(box().vertex_count(), 0);
    for (std::size_t x : line) target[tilde_vertex(x)] = 1;
    SearchOptions opts;
    opts.stop_when = [&target](std::size_t v) { return target[v] != 0; };
    const std::size_t src[] = {tilde_vertex(box().origin_index())};
    const SearchResult r = dijkstra(field_, src, opts);
    return r.stopped_at ? ExtendedTime(r.times[*r.stopped_at]) : ExtendedTime::infinity();
}

std::vector<double> RegularizedContext::projected_times(const ClusterLabeling& lab, double time_limit) const
{
    const std::vector<std::uint32_t> proj = proxy_projection_map(lab);
    if (proj.empty()) throw DomainError("empty proxy cluster: no regularised times");
    SearchOptions opts;
    opts.time_limit = time_limit;
    const std::size_t src[] = {proj[box().origin_index()]};
    const SearchResult r = dijkstra(field_, src, opts);
    std::vector<double> out(box().vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = r.times[proj[v]];
    return out;
}

std::vector<double> RegularizedContext::tilde_times_from_origin(double time_limit) const
{
    return projected_times(labeling_M_, time_limit);
}

std::vector<double> RegularizedContext::star_times_from_origin(double time_limit) const
{
    return projected_times(labeling_inf_, time_limit);
}

RegularizedContext::ReachedPair RegularizedContext::regularized_reached_sets(double t) const
{
    if (!(t >= 0.0)) throw DomainError("reached set threshold must be nonnegative");
    auto members = [&](const std::vector<double>& times) {
        std::vector<std::size_t> vs;
        for (std::size_t v = 0; v < times.size(); ++v)
            if (times[v] <= t) vs.push_back(v);
        return ReachedSet(box(), t, std::move(vs));
    };
    return {members(tilde_times_from_origin(t)), members(star_times_from_origin(t))};
}

} // namespace fpp
