#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kpvcr/error.hpp"

namespace kpvcr {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // canonical: first < second

// Simple undirected graph with vertex ids 0..n-1, sorted adjacency lists
// and a canonical (min,max) edge list. Immutable after construction.
class Graph {
public:
    static Graph path(int n);
    static Graph cycle(int n);
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool is_vertex(Vertex v) const { return v >= 0 && v < n_; }

    std::span<const Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const Graph& other) const = default;

private:
    Graph() = default;
    int n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
};

enum class ShapeKind { Path, Cycle, Tree, General };

struct GraphShape {
    ShapeKind kind = ShapeKind::General;
    // For Path/Cycle: the vertex sequence realizing the shape. A path is
    // listed from its smaller-id endpoint; a cycle starts at vertex 0 and
    // proceeds toward its smaller neighbor.
    std::vector<Vertex> order;
};

const char* to_string(ShapeKind kind);

// Most specific shape wins: a path is reported as Path, not Tree.
GraphShape classify(const Graph& g);

// BFS hop count; disconnected pairs yield nullopt.
std::optional<int> dist(const Graph& g, Vertex u, Vertex v);

// All simple paths on exactly k vertices, each reported once with its
// lexicographically smaller endpoint first.
std::vector<std::vector<Vertex>> enumerate_k_paths(const Graph& g, int k);

// First k-path avoiding `blocked`, or nullopt if none exists. Bounded-depth
// DFS from every unblocked vertex in ascending order.
std::optional<std::vector<Vertex>>
find_uncovered_k_path(const Graph& g, int k, const std::vector<bool>& blocked);

// psi_k closed forms: floor(n/k) for paths, ceil(n/k) for cycles (0 when the
// cycle is too short to contain a k-path). Trees and general graphs are not
// supported here; use the tree partition or the oracle.
int psi_k_closed_form(ShapeKind kind, int n, int k);

} // namespace kpvcr
