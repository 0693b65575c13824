#pragma once

// Brute-force references used by the unit and acceptance tests. Nothing here
// calls the union-find, Dijkstra or shell-search code paths under test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "fpp/edge_field.hpp"

namespace fpp::oracle {

/// Explicit adjacency of a box: neighbours[v] = (u, time of edge vu).
inline std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(const EdgeField& field)
{
    const Box& box = field.box();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(box.vertex_count());
    for (std::size_t i = 0; i < box.edge_count(); ++i) {
        const Edge e = box.edge(i);
        const std::size_t a = box.index(e.base);
        const std::size_t b = box.index(e.head());
        const double t = field.time_of(e).value();
        adj[a].emplace_back(b, t);
        adj[b].emplace_back(a, t);
    }
    return adj;
}

/// Minimum over all self-avoiding paths from `from` to `to` of the summed
/// times, by exhaustive depth-first enumeration. +inf if none is finite.
inline double min_path_time_exhaustive(const EdgeField& field, std::size_t from, std::size_t to)
{
    const auto adj = adjacency(field);
    std::vector<char> on_path(adj.size(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double acc) {
        if (v == to) {
            best = std::min(best, acc);
            return;
        }
        on_path[v] = 1;
        for (auto [u, t] : adj[v]) {
            if (on_path[u] || !(t < std::numeric_limits<double>::infinity())) continue;
            dfs(u, acc + t);
        }
        on_path[v] = 0;
    };
    dfs(from, 0.0);
    return best;
}

/// Component id per vertex (smallest vertex of the component) by BFS over the
/// edges whose time satisfies `open`.
inline std::vector<std::size_t> bfs_components(const EdgeField& field, const std::function<bool(double)>& open)
{
    const auto adj = adjacency(field);
    std::vector<std::size_t> comp(adj.size(), SIZE_MAX);
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (comp[s] != SIZE_MAX) continue;
        std::queue<std::size_t> q;
        q.push(s);
        comp[s] = s;
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (auto [u, t] : adj[v]) {
                if (comp[u] == SIZE_MAX && open(t)) {
                    comp[u] = s;
                    q.push(u);
                }
            }
        }
    }
    return comp;
}

/// Hop distance by BFS over open edges; -1 when unreachable.
inline std::vector<int> bfs_hops(const EdgeField& field, const std::function<bool(double)>& open, std::size_t from)
{
    const auto adj = adjacency(field);
    std::vector<int> d(adj.size(), -1);
    std::queue<std::size_t> q;
    q.push(from);
    d[from] = 0;
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        for (auto [u, t] : adj[v])
            if (d[u] < 0 && open(t)) {
                d[u] = d[v] + 1;
                q.push(u);
            }
    }
    return d;
}

/// All-pairs Floyd-Warshall; exact for tiny boxes.
inline std::vector<std::vector<double>> all_pairs(const EdgeField& field)
{
    const auto adj = adjacency(field);
    const std::size_t n = adj.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0.0;
        for (auto [u, t] : adj[v]) d[v][u] = std::min(d[v][u], t);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Nearest vertex (l1) among `members`, ties to the smallest index, by scanning every vertex.
inline std::size_t nearest_by_scan(const Box& box, const std::vector<char>& members, std::size_t v)
{
    const LatticePoint p = box.point(v);
    std::size_t best = SIZE_MAX;
    int best_d = std::numeric_limits<int>::max();
    for (std::size_t u = 0; u < box.vertex_count(); ++u) {
        if (!members[u]) continue;
        const int dist = l1_distance(p, box.point(u));
        if (dist < best_d) {
            best_d = dist;
            best = u;
        }
    }
    return best;
}

/// Field with i.i.d. times drawn from `values` by a std::mt19937_64 stream.
inline EdgeField random_field(const Box& box, const PassageLaw& law, std::mt19937_64& rng, const std::vector<double>& values)
{
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    return EdgeField::from_function(box, law, [&](const Edge&) { return values[pick(rng)]; });
}

} // namespace fpp::oracle
