#include "fpp/percolation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>

#include "fpp/parallel.hpp"
#include "fpp/random.hpp"

namespace fpp {

ThresholdSpec ThresholdSpec::at_most(double m)
{
    if (!(m > 0.0)) throw DomainError("threshold level M must be positive");
    return {Kind::at_most, m};
}

double ThresholdSpec::open_probability(const PassageLaw& law) const
{
    switch (kind) {
    case Kind::at_most: return law.cdf(level);
    case Kind::finite: return 1.0 - law.p_inf();
    case Kind::zero: return law.p_zero();
    }
    return 0.0;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1)
{
    std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t DisjointSets::find(std::uint32_t x)
{
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void DisjointSets::unite(std::uint32_t a, std::uint32_t b)
{
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
}

ClusterLabeling::ClusterLabeling(const EdgeField& field, ThresholdSpec threshold)
    : box_(field.box()), threshold_(threshold)
{
    const std::size_t n = box_.vertex_count();
    const int d = box_.dimension();
    DisjointSets sets(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (int a = 0; a < d; ++a) {
            if (box_.has_edge(v, a) && threshold.open(field.time(v, a)))
                sets.unite(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v + box_.stride(a)));
        }
    }

    constexpr std::uint32_t kUnset = UINT32_MAX;
    std::vector<std::uint32_t> first(n, kUnset);
    root_.resize(n);
    size_.assign(n, 0);
    std::vector<unsigned> faces(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint32_t r = sets.find(static_cast<std::uint32_t>(v));
        if (first[r] == kUnset) first[r] = static_cast<std::uint32_t>(v);
        root_[v] = first[r];
        ++size_[root_[v]];
        if (box_.boundary_distance(v) == 0) faces[root_[v]] |= box_.face_mask(v);
    }

    const unsigned all_faces = (1u << (2 * d)) - 1u;
    std::optional<std::uint32_t> largest;
    for (std::size_t v = 0; v < n; ++v) {
        if (root_[v] != v) continue; // visit each cluster once, at its smallest vertex
        if (faces[v] == all_faces) {
            ++spanning_count_;
            if (!spanning_) {
                spanning_ = true;
                proxy_ = static_cast<std::uint32_t>(v);
            }
        }
        if (size_[v] >= 2 && (!largest || size_[v] > size_[*largest])) largest = static_cast<std::uint32_t>(v);
    }
    if (!spanning_) proxy_ = largest;
}

void ClusterLabeling::reassign_proxy(std::size_t v)
{
    if (cluster_size(v) < 2) throw DomainError("proxy must be an open cluster");
    proxy_ = root_[v];
}

ClusterLabeling label_clusters(const EdgeField& field, ThresholdSpec threshold) { return ClusterLabeling(field, threshold); }

DensityValue density_theta(const ClusterLabeling& labeling, double window_fraction)
{
    if (labeling.threshold().kind != ThresholdSpec::Kind::finite)
        throw DomainError("density_theta needs a labeling of the finite-time graph");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) throw DomainError("window fraction must lie in (0,1]");
    if (!labeling.has_proxy()) return {0.0, true};
    const Box& box = labeling.box();
    const int w = static_cast<int>(std::floor(window_fraction * box.half_width()));
    std::size_t inside = 0, total = 0;
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        bool in_window = true;
        for (int a = 0; a < box.dimension() && in_window; ++a) in_window = std::abs(box.coord(v, a)) <= w;
        if (!in_window) continue;
        ++total;
        if (labeling.in_proxy(v)) ++inside;
    }
    return {static_cast<double>(inside) / static_cast<double>(total), false};
}

namespace {

// Calls f(vertex) for every in-box vertex at l1 distance exactly r from v.
template <class F>
void for_each_on_shell(const Box& box, std::size_t v, int r, F&& f)
{
    const int d = box.dimension();
    std::vector<int> base(d);
    for (int a = 0; a < d; ++a) base[a] = box.coord(v, a);
    std::vector<int> offset(d, 0);
    const int L = box.half_width();
    auto rec = [&](auto&& self, int axis, int remaining) -> void {
        const int c = base[axis];
        if (axis == d - 1) {
            for (int o : {-remaining, remaining}) {
                if (c + o < -L || c + o > L) continue;
                offset[axis] = o;
                long long u = static_cast<long long>(v);
                for (int a = 0; a < d; ++a) u += static_cast<long long>(offset[a]) * static_cast<long long>(box.stride(a));
                f(static_cast<std::size_t>(u));
                if (remaining == 0) break;
            }
            return;
        }
        for (int o = -remaining; o <= remaining; ++o) {
            if (c + o < -L || c + o > L) continue;
            offset[axis] = o;
            self(self, axis + 1, remaining - std::abs(o));
        }
        offset[axis] = 0;
    };
    rec(rec, 0, r);
}

} // namespace

std::optional<std::size_t> nearest_proxy_vertex(const ClusterLabeling& labeling, std::size_t v)
{
    if (!labeling.has_proxy()) return std::nullopt;
    if (labeling.in_proxy(v)) return v;
    const Box& box = labeling.box();
    const int max_radius = 2 * box.half_width() * box.dimension();
    for (int r = 1; r <= max_radius; ++r) {
        std::optional<std::size_t> best;
        for_each_on_shell(box, v, r, [&](std::size_t u) {
            if (labeling.in_proxy(u) && (!best || u < *best)) best = u;
        });
        if (best) return best;
    }
    return std::nullopt;
}

std::vector<int> proxy_distance_map(const ClusterLabeling& labeling)
{
    const Box& box = labeling.box();
    std::vector<int> dist(box.vertex_count(), -1);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        if (labeling.in_proxy(v)) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        box.for_each_neighbor(v, [&](std::size_t u, std::size_t, int) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        });
    }
    return dist;
}

std::vector<std::uint32_t> proxy_projection_map(const ClusterLabeling& labeling)
{
    if (!labeling.has_proxy()) return {};
    const Box& box = labeling.box();
    std::vector<int> dist(box.vertex_count(), -1);
    std::vector<std::uint32_t> proj(box.vertex_count());
    std::vector<std::size_t> order;
    order.reserve(box.vertex_count());
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        if (labeling.in_proxy(v)) {
            dist[v] = 0;
            proj[v] = static_cast<std::uint32_t>(v);
            order.push_back(v);
        }
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        const std::size_t v = order[head];
        box.for_each_neighbor(v, [&](std::size_t u, std::size_t, int) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                order.push_back(u);
            }
        });
    }
    for (std::size_t v : order) {
        if (dist[v] == 0) continue;
        std::uint32_t best = UINT32_MAX;
        box.for_each_neighbor(v, [&](std::size_t u, std::size_t, int) {
            if (dist[u] == dist[v] - 1) best = std::min(best, proj[u]);
        });
        proj[v] = best;
    }
    return proj;
}

std::vector<int> open_path_hops(const EdgeField& field, ThresholdSpec threshold, std::size_t source, int max_hops)
{
    const Box& box = field.box();
    std::vector<int> hops(box.vertex_count(), -1);
    std::deque<std::size_t> queue{source};
    hops[source] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        if (max_hops >= 0 && hops[v] >= max_hops) continue;
        box.for_each_neighbor(v, [&](std::size_t u, std::size_t base, int axis) {
            if (hops[u] < 0 && threshold.open(field.time(base, axis))) {
                hops[u] = hops[v] + 1;
                queue.push_back(u);
            }
        });
    }
    return hops;
}

std::optional<int> chemical_distance(const EdgeField& field, ThresholdSpec threshold, const LatticePoint& x, const LatticePoint& y)
{
    const Box& box = field.box();
    if (!box.contains(x) || !box.contains(y)) throw DomainError("chemical distance endpoints must lie in the box");
    const int h = open_path_hops(field, threshold, box.index(x))[box.index(y)];
    if (h < 0) return std::nullopt;
    return h;
}

std::string to_string(TailEvent event)
{
    switch (event) {
    case TailEvent::finite_cluster: return "finite_cluster";
    case TailEvent::hole: return "hole";
    case TailEvent::chem: return "chem";
    }
    return "?";
}

TailEvent tail_event_from_string(const std::string& name)
{
    if (name == "finite_cluster" || name == "finite-cluster") return TailEvent::finite_cluster;
    if (name == "hole") return TailEvent::hole;
    if (name == "chem") return TailEvent::chem;
    throw DomainError("unknown tail event '" + name + "'");
}

void require_supercritical(const PassageLaw& law, double p_c)
{
    if (!(1.0 - law.p_inf() > p_c))
        throw SupercriticalityError("law is not supercritical: 1 - p_inf = " + std::to_string(1.0 - law.p_inf()) +
                                    " <= p_c = " + std::to_string(p_c));
}

void require_valid_M(const PassageLaw& law, double M, double p_c)
{
    if (!(M > 0.0) || !(law.cdf(M) > p_c))
        throw SupercriticalityError("invalid M = " + std::to_string(M) + ": F([0,M]) = " + std::to_string(law.cdf(M)) +
                                    " <= p_c = " + std::to_string(p_c));
}

namespace {

bool in_window(const Box& box, std::size_t v, int w)
{
    for (int a = 0; a < box.dimension(); ++a)
        if (std::abs(box.coord(v, a)) > w) return false;
    return true;
}

// Per-origin window frequencies of hole(r) and finite_cluster(r), one value per grid entry.
std::vector<double> window_tail_frequencies(const ClusterLabeling& lab, TailEvent event, const std::vector<int>& grid, int w)
{
    const Box& box = lab.box();
    const int d = box.dimension();
    const std::size_t n = box.vertex_count();
    std::vector<double> counts(grid.size(), 0.0);
    std::size_t origins = 0;

    if (event == TailEvent::hole) {
        const std::vector<int> dist = proxy_distance_map(lab);
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_window(box, v, w)) continue;
            ++origins;
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (dist[v] < 0 || dist[v] > grid[i]) counts[i] += 1.0;
        }
    } else {
        // max over the cluster of s.x for every sign vector s gives the l1 eccentricity of each member
        const int signs = 1 << d;
        std::vector<int> best(n * static_cast<std::size_t>(signs), INT_MIN);
        auto dot = [&](std::size_t v, int s) {
            int acc = 0;
            for (int a = 0; a < d; ++a) acc += ((s >> a) & 1) ? -box.coord(v, a) : box.coord(v, a);
            return acc;
        };
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t r = lab.root(v);
            for (int s = 0; s < signs; ++s) best[r * signs + s] = std::max(best[r * signs + s], dot(v, s));
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_window(box, v, w)) continue;
            ++origins;
            if (lab.in_proxy(v)) continue;
            const std::size_t r = lab.root(v);
            int ecc = 0;
            for (int s = 0; s < signs; ++s) ecc = std::max(ecc, best[r * signs + s] - dot(v, s));
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (ecc >= grid[i]) counts[i] += 1.0;
        }
    }
    for (double& c : counts) c /= static_cast<double>(origins);
    return counts;
}

} // namespace

TailProbeResult tail_probe(const PassageLaw& law, const TailProbeSettings& settings, const ProbeOptions& options)
{
    require_supercritical(law, options.p_c);
    if (settings.grid.empty()) throw DomainError("tail probe grid is empty");
    if (settings.reps < 2) throw DomainError("tail probe needs at least 2 replications");
    if (!std::is_sorted(settings.grid.begin(), settings.grid.end()) || settings.grid.front() < 1)
        throw DomainError("tail probe grid must be positive and increasing");
    const Box box(options.dimension, settings.half_width);
    const int w = static_cast<int>(std::floor(settings.window_fraction * settings.half_width));
    const int max_param = settings.grid.back();
    if (settings.event == TailEvent::chem) {
        if (settings.half_width < 2 * max_param) throw DomainError("chem probe needs L >= 2 * max ||y||_1");
    } else if (w + max_param > settings.half_width) {
        throw DomainError("window half-width plus max r must not exceed L");
    }

    const std::size_t reps = static_cast<std::size_t>(settings.reps);
    std::vector<std::vector<double>> per_rep(reps);
    std::vector<char> spanning(reps, 0);
    TailProbeResult result;
    result.replication_seeds.resize(reps);
    for (std::size_t r = 0; r < reps; ++r) result.replication_seeds[r] = derive_seed(options.master_seed, 0, r);

    parallel_for(reps, options.threads, [&](std::size_t rep) {
        const EdgeField field = EdgeField::generate(box, law, result.replication_seeds[rep]);
        if (settings.event == TailEvent::chem) {
            const std::size_t origin = box.origin_index();
            const std::vector<int> hops = open_path_hops(field, ThresholdSpec::finite(), origin);
            std::vector<double> freq(settings.grid.size(), 0.0);
            for (std::size_t i = 0; i < settings.grid.size(); ++i) {
                const int k = settings.grid[i];
                const double l = settings.chem_factor * k;
                int hits = 0;
                for (int a = 0; a < options.dimension; ++a) {
                    for (int sgn : {-1, 1}) {
                        const int h = hops[origin + static_cast<std::size_t>(sgn * k) * box.stride(a)];
                        if (h >= 0 && h >= l) ++hits;
                    }
                }
                freq[i] = hits / (2.0 * options.dimension);
            }
            per_rep[rep] = std::move(freq);
            spanning[rep] = 1;
        } else {
            const ClusterLabeling lab(field, ThresholdSpec::finite());
            per_rep[rep] = window_tail_frequencies(lab, settings.event, settings.grid, w);
            spanning[rep] = lab.spanning();
        }
    });

    std::vector<double> params, freqs;
    for (std::size_t i = 0; i < settings.grid.size(); ++i) {
        std::vector<double> xs(reps);
        for (std::size_t r = 0; r < reps; ++r) xs[r] = per_rep[r][i];
        const Summary s = summarize(xs);
        result.points.push_back({static_cast<double>(settings.grid[i]), s.mean, s.std_error, settings.reps,
                                 hash_pair(options.master_seed, 0)});
        params.push_back(settings.grid[i]);
        freqs.push_back(s.mean);
    }
    result.log_fit = log_linear_fit(params, freqs);
    for (char s : spanning) result.nonspanning_reps += s ? 0 : 1;
    return result;
}

std::vector<PlaquettePoint> plaquette_distance_probe(const PassageLaw& law, double M, double delta, double alpha,
                                                     const std::vector<int>& K_list, int reps, const ProbeOptions& options)
{
    require_supercritical(law, options.p_c);
    require_valid_M(law, M, options.p_c);
    if (!(delta > 0.0) || !(alpha > 0.0)) throw DomainError("plaquette probe needs delta > 0 and alpha > 0");
    if (reps < 1) throw DomainError("plaquette probe needs at least one replication");
    std::vector<PlaquettePoint> out;
    for (std::size_t k = 0; k < K_list.size(); ++k) {
        const int K = K_list[k];
        if (K < 1) throw DomainError("K must be positive");
        const int side = static_cast<int>(std::ceil(delta * K));
        const int bound = static_cast<int>(std::floor(alpha * K));
        const Box box(options.dimension, bound + side + 2);
        std::vector<double> hits(static_cast<std::size_t>(reps));
        parallel_for(hits.size(), options.threads, [&](std::size_t rep) {
            const EdgeField field = EdgeField::generate(box, law, derive_seed(options.master_seed, k, rep));
            const ClusterLabeling lab(field, ThresholdSpec::at_most(M));
            const auto start = nearest_proxy_vertex(lab, box.origin_index());
            if (!start) {
                hits[rep] = 1.0;
                return;
            }
            const std::vector<int> hops = open_path_hops(field, ThresholdSpec::finite(), *start, bound + 1);
            // odometer over y = (0, y_2, ..., y_d), 0 <= y_i < delta K
            std::vector<int> y(options.dimension, 0);
            bool exceeded = false;
            while (!exceeded) {
                const auto target = nearest_proxy_vertex(lab, box.index(LatticePoint(y)));
                const int h = target ? hops[*target] : -1;
                if (h < 0 || h > alpha * K) exceeded = true;
                int a = options.dimension - 1;
                while (a >= 1 && y[a] == side - 1) y[a--] = 0;
                if (a < 1) break;
                ++y[a];
            }
            hits[rep] = exceeded ? 1.0 : 0.0;
        });
        const Summary s = summarize(hits);
        out.push_back({K, s.mean, s.std_error, reps});
    }
    return out;
}

} // namespace fpp
