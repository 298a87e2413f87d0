#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kpvcr/cover.hpp"
#include "kpvcr/graph.hpp"

namespace kpvcr::testing {

using Rng = std::mt19937;

// Random labeled tree via a Pruefer sequence.
inline Graph random_tree(int n, Rng& rng) {
    if (n == 1)
        return Graph::path(1);
    if (n == 2)
        return Graph::path(2);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> code(n - 2);
    for (int& c : code)
        c = pick(rng);
    std::vector<int> degree(n, 1);
    for (int c : code)
        ++degree[c];
    std::vector<Edge> edges;
    std::vector<bool> used(n, false);
    for (int c : code) {
        for (int leaf = 0; leaf < n; ++leaf)
            if (degree[leaf] == 1 && !used[leaf]) {
                edges.emplace_back(leaf, c);
                used[leaf] = true;
                --degree[c];
                break;
            }
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1 && !used[v])
            (a < 0 ? a : b) = v;
    edges.emplace_back(a, b);
    return Graph::from_edges(n, edges);
}

inline Graph random_graph(int n, double edge_prob, Rng& rng) {
    std::bernoulli_distribution flip(edge_prob);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng))
                edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

// Independent covering oracle: a set covers the graph iff it intersects
// every enumerated k-path. Used to cross-check the witness-search DFS.
inline std::vector<std::uint64_t> k_path_masks(const Graph& g, int k) {
    std::vector<std::uint64_t> masks;
    for (const auto& path : enumerate_k_paths(g, k)) {
        std::uint64_t m = 0;
        for (Vertex v : path)
            m |= std::uint64_t{1} << v;
        masks.push_back(m);
    }
    return masks;
}

inline bool covers_by_enumeration(const std::vector<std::uint64_t>& path_masks,
                                  std::uint64_t cover) {
    for (std::uint64_t m : path_masks)
        if (!(m & cover))
            return false;
    return true;
}

// Exhaustive minimum cover size through the enumeration route.
inline int brute_min_cover_size(const Graph& g, int k) {
    auto paths = k_path_masks(g, k);
    const int n = g.vertex_count();
    for (int size = 0; size <= n; ++size) {
        // All subsets of the given size.
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        while (true) {
            std::uint64_t mask = 0;
            for (int i : idx)
                mask |= std::uint64_t{1} << i;
            if (covers_by_enumeration(paths, mask))
                return size;
            int p = size - 1;
            while (p >= 0 && idx[p] == n - size + p)
                --p;
            if (p < 0)
                break;
            ++idx[p];
            for (int q = p + 1; q < size; ++q)
                idx[q] = idx[q - 1] + 1;
        }
    }
    return n;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices,
                              std::vector<int>& global_to_local) {
    global_to_local.assign(g.vertex_count(), -1);
    for (size_t i = 0; i < vertices.size(); ++i)
        global_to_local[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (global_to_local[u] >= 0 && global_to_local[v] >= 0)
            edges.emplace_back(global_to_local[u], global_to_local[v]);
    return Graph::from_edges(static_cast<int>(vertices.size()), edges);
}

} // namespace kpvcr::testing
