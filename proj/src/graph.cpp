#include "kpvcr/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "kpvcr/cover.hpp"

namespace kpvcr {

namespace {

void check_vertex(const Graph& g, Vertex v, const char* what) {
    if (!g.is_vertex(v))
        throw PreconditionError(std::string(what) + ": vertex " + std::to_string(v) +
                                " out of range [0," + std::to_string(g.vertex_count()) + ")");
}

} // namespace

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 1)
        throw GraphError("graph needs at least one vertex, got n=" + std::to_string(n));
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") references a vertex outside 0.." + std::to_string(n - 1));
        if (u == v)
            throw GraphError("self-loop at vertex " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        g.edges_.emplace_back(u, v);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end()) {
        auto it = std::adjacent_find(g.edges_.begin(), g.edges_.end());
        throw GraphError("duplicate edge (" + std::to_string(it->first) + "," +
                         std::to_string(it->second) + ")");
    }
    for (auto [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_)
        std::sort(nb.begin(), nb.end());
    return g;
}

Graph Graph::path(int n) {
    std::vector<Edge> es;
    es.reserve(n > 0 ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i)
        es.emplace_back(i, i + 1);
    return from_edges(n, es);
}

Graph Graph::cycle(int n) {
    if (n < 3)
        throw GraphError("cycle needs at least 3 vertices, got n=" + std::to_string(n));
    std::vector<Edge> es;
    es.reserve(n);
    for (int i = 0; i + 1 < n; ++i)
        es.emplace_back(i, i + 1);
    es.emplace_back(0, n - 1);
    return from_edges(n, es);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(*this, v, "neighbors");
    return adj_[v];
}

int Graph::degree(Vertex v) const {
    check_vertex(*this, v, "degree");
    return static_cast<int>(adj_[v].size());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(*this, u, "has_edge");
    check_vertex(*this, v, "has_edge");
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

const char* to_string(ShapeKind kind) {
    switch (kind) {
    case ShapeKind::Path: return "path";
    case ShapeKind::Cycle: return "cycle";
    case ShapeKind::Tree: return "tree";
    case ShapeKind::General: return "general";
    }
    return "?";
}

namespace {

bool connected(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::deque<Vertex> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
    }
    return reached == n;
}

// Walk a degree<=2 graph starting at `start`, preferring `second` as the
// first move; used to realize path/cycle orders.
std::vector<Vertex> walk_order(const Graph& g, Vertex start, Vertex second) {
    std::vector<Vertex> order{start, second};
    Vertex prev = start, cur = second;
    while (static_cast<int>(order.size()) < g.vertex_count()) {
        Vertex next = -1;
        for (Vertex w : g.neighbors(cur))
            if (w != prev) {
                next = w;
                break;
            }
        if (next < 0)
            break;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

} // namespace

GraphShape classify(const Graph& g) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    if (!connected(g))
        return {ShapeKind::General, {}};
    if (n == 1)
        return {ShapeKind::Path, {0}};

    int deg1 = 0, deg2 = 0;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d == 1)
            ++deg1;
        else if (d == 2)
            ++deg2;
    }
    if (deg1 == 2 && deg1 + deg2 == n && m == n - 1) {
        Vertex end = 0;
        while (g.degree(end) != 1)
            ++end;
        std::vector<Vertex> order =
            n == 2 ? std::vector<Vertex>{end, g.neighbors(end)[0]}
                   : walk_order(g, end, g.neighbors(end)[0]);
        return {ShapeKind::Path, std::move(order)};
    }
    if (deg2 == n && m == n && n >= 3) {
        std::vector<Vertex> order = walk_order(g, 0, g.neighbors(0)[0]);
        return {ShapeKind::Cycle, std::move(order)};
    }
    if (m == n - 1)
        return {ShapeKind::Tree, {}};
    return {ShapeKind::General, {}};
}

std::optional<int> dist(const Graph& g, Vertex u, Vertex v) {
    check_vertex(g, u, "dist");
    check_vertex(g, v, "dist");
    if (u == v)
        return 0;
    std::vector<int> d(g.vertex_count(), -1);
    std::deque<Vertex> queue{u};
    d[u] = 0;
    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(x))
            if (d[w] < 0) {
                d[w] = d[x] + 1;
                if (w == v)
                    return d[w];
                queue.push_back(w);
            }
    }
    return std::nullopt;
}

std::vector<std::vector<Vertex>> enumerate_k_paths(const Graph& g, int k) {
    if (k < 2)
        throw PreconditionError("enumerate_k_paths: k must be >= 2, got " + std::to_string(k));
    std::vector<std::vector<Vertex>> result;
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<Vertex> path;
    path.reserve(k);

    auto dfs = [&](auto&& self, Vertex v) -> void {
        path.push_back(v);
        on_path[v] = true;
        if (static_cast<int>(path.size()) == k) {
            if (path.front() < path.back())
                result.push_back(path);
        } else {
            for (Vertex w : g.neighbors(v))
                if (!on_path[w])
                    self(self, w);
        }
        on_path[v] = false;
        path.pop_back();
    };
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        dfs(dfs, v);
    return result;
}

std::optional<std::vector<Vertex>>
find_uncovered_k_path(const Graph& g, int k, const std::vector<bool>& blocked) {
    if (k < 2)
        throw PreconditionError("find_uncovered_k_path: k must be >= 2");
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<Vertex> path;
    path.reserve(k);

    auto dfs = [&](auto&& self, Vertex v) -> bool {
        path.push_back(v);
        on_path[v] = true;
        bool found = static_cast<int>(path.size()) == k;
        if (!found)
            for (Vertex w : g.neighbors(v))
                if (!blocked[w] && !on_path[w] && self(self, w)) {
                    found = true;
                    break;
                }
        on_path[v] = false;
        if (!found)
            path.pop_back();
        return found;
    };
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!blocked[v] && dfs(dfs, v))
            return path;
    return std::nullopt;
}

int psi_k_closed_form(ShapeKind kind, int n, int k) {
    if (n < 1 || k < 2)
        throw PreconditionError("psi_k_closed_form: need n >= 1 and k >= 2");
    switch (kind) {
    case ShapeKind::Path:
        return n / k;
    case ShapeKind::Cycle:
        return n < k ? 0 : (n + k - 1) / k;
    default:
        throw UnsupportedError("psi_k_closed_form: closed form exists only for paths and "
                               "cycles; use the tree partition or the oracle");
    }
}

// --- CoverSet -------------------------------------------------------------

CoverSet::CoverSet(std::vector<Vertex> m, int kk) : members(std::move(m)), k(kk) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

CoverSet CoverSet::from_mask(std::uint64_t mask, int k) {
    CoverSet c;
    c.k = k;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1)
            c.members.push_back(v);
    return c;
}

bool CoverSet::contains(Vertex v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

std::uint64_t CoverSet::to_mask() const {
    std::uint64_t mask = 0;
    for (Vertex v : members)
        mask |= std::uint64_t{1} << v;
    return mask;
}

void CoverSet::insert(Vertex v) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v)
        members.insert(it, v);
}

void CoverSet::erase(Vertex v) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it != members.end() && *it == v)
        members.erase(it);
}

bool is_kpvc(const Graph& g, int k, const std::vector<Vertex>& members) {
    std::vector<bool> blocked(g.vertex_count(), false);
    for (Vertex v : members) {
        check_vertex(g, v, "is_kpvc");
        blocked[v] = true;
    }
    return !find_uncovered_k_path(g, k, blocked).has_value();
}

bool is_kpvc(const Graph& g, const CoverSet& c) {
    return is_kpvc(g, c.k, c.members);
}

void require_kpvc(const Graph& g, int k, const CoverSet& c, const char* label) {
    std::vector<bool> blocked(g.vertex_count(), false);
    for (Vertex v : c.members) {
        check_vertex(g, v, label);
        blocked[v] = true;
    }
    if (auto witness = find_uncovered_k_path(g, k, blocked)) {
        std::string msg = std::string(label) + " is not a " + std::to_string(k) +
                          "-path vertex cover: uncovered path [";
        for (size_t i = 0; i < witness->size(); ++i)
            msg += (i ? " " : "") + std::to_string((*witness)[i]);
        msg += "]";
        throw InvalidCoverError(msg);
    }
}

} // namespace kpvcr
