#include "kpvcr/reductions.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace kpvcr {

const char* to_string(GadgetKind kind) {
    return kind == GadgetKind::And ? "and" : "or";
}

PendantTransform pendant_transform(const Graph& g, int k) {
    if (k < 2)
        throw PreconditionError("pendant_transform: k must be >= 2");
    const int n = g.vertex_count();
    const int tail = (k - 1) / 2;
    PendantTransform t{g, k, g, std::vector<std::vector<Vertex>>(n)};
    std::vector<Edge> edges = g.edges();
    int next_id = n;
    for (Vertex x = 0; x < n; ++x) {
        Vertex prev = x;
        for (int i = 0; i < tail; ++i) {
            edges.emplace_back(prev, next_id);
            t.pendant_map[x].push_back(next_id);
            prev = next_id++;
        }
    }
    t.result = Graph::from_edges(n * (1 + tail), edges);
    return t;
}

NclGadget build_gadget(GadgetKind kind, int k) {
    if (k < 3)
        throw PreconditionError("build_gadget: construction needs k >= 3");
    NclGadget gadget;
    gadget.kind = kind;
    gadget.k = k;

    const int main_size = kind == GadgetKind::And ? k : k + 1;
    const int port_size = 2 * k - 2;
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < main_size; ++i)
        edges.emplace_back(i, i + 1);
    if (kind == GadgetKind::Or)
        edges.emplace_back(0, main_size - 1);
    for (int i = 0; i < main_size; ++i)
        gadget.main_part.push_back(i);

    // Attachment points: AND joins its ports to the main-path endpoints
    // (two weight-1 ports on one end, the weight-2 port on the other); OR
    // joins one weight-2 port to each of the first three cycle vertices.
    const std::array<Vertex, 3> joints = kind == GadgetKind::And
                                             ? std::array<Vertex, 3>{k - 1, k - 1, 0}
                                             : std::array<Vertex, 3>{0, 1, 2};
    const std::array<int, 3> weights =
        kind == GadgetKind::And ? std::array<int, 3>{1, 1, 2} : std::array<int, 3>{2, 2, 2};

    int next_id = main_size;
    for (int p = 0; p < 3; ++p) {
        GadgetPort port;
        port.weight = weights[p];
        for (int i = 0; i < port_size; ++i) {
            port.vertices.push_back(next_id + i);
            if (i > 0)
                edges.emplace_back(next_id + i - 1, next_id + i);
        }
        // A lone token covering the whole part must sit at offset k-2 or
        // k-1; the attached one (k-2) reads as inward.
        port.center_in = port.vertices[k - 2];
        port.center_out = port.vertices[k - 1];
        edges.emplace_back(joints[p], port.center_in);
        gadget.ports[p] = std::move(port);
        next_id += port_size;
    }
    gadget.graph = Graph::from_edges(main_size + 3 * port_size, edges);
    return gadget;
}

namespace {

bool orientation_valid(GadgetKind kind, const Orientation& o) {
    const std::array<int, 3> weights =
        kind == GadgetKind::And ? std::array<int, 3>{1, 1, 2} : std::array<int, 3>{2, 2, 2};
    int in_weight = 0;
    for (int p = 0; p < 3; ++p)
        if (o.inward[p])
            in_weight += weights[p];
    return in_weight >= 2;
}

} // namespace

std::vector<Orientation> valid_orientations(GadgetKind kind) {
    std::vector<Orientation> valid;
    for (int bits = 0; bits < 8; ++bits) {
        Orientation o{{bool(bits & 1), bool(bits & 2), bool(bits & 4)}};
        if (orientation_valid(kind, o))
            valid.push_back(o);
    }
    return valid;
}

GadgetQuotient gadget_reconf_graph(const NclGadget& gadget, int token_budget, Rule rule,
                                   const OracleOptions& opts) {
    // For TS/TJ the budget admits every cover of size <= token_budget; the
    // rules preserve size, so adjacency is gathered per size class.
    std::vector<std::uint64_t> masks;
    std::vector<std::vector<int>> adjacency;
    if (rule.kind != RuleKind::TAR) {
        std::vector<CoverSet> covers =
            enumerate_covers(gadget.graph, gadget.k, 0, token_budget, opts);
        masks.reserve(covers.size());
        for (const CoverSet& c : covers)
            masks.push_back(c.to_mask());
        adjacency.assign(masks.size(), {});
        // Adjacency within each size class, via per-size reconfiguration
        // graphs.
        std::vector<int> sizes;
        for (const CoverSet& c : covers)
            if (std::find(sizes.begin(), sizes.end(), c.size()) == sizes.end())
                sizes.push_back(c.size());
        for (int s : sizes) {
            ReconfGraph part = ReconfGraph::build(gadget.graph, gadget.k, rule, s, opts);
            std::vector<int> to_global(part.state_count(), -1);
            for (int i = 0; i < part.state_count(); ++i) {
                auto it = std::find(masks.begin(), masks.end(), part.state_mask(i));
                to_global[i] = static_cast<int>(it - masks.begin());
            }
            for (int i = 0; i < part.state_count(); ++i)
                for (int j : part.neighbors(i))
                    adjacency[to_global[i]].push_back(to_global[j]);
        }
        for (auto& nb : adjacency)
            std::sort(nb.begin(), nb.end());
    } else {
        ReconfGraph rg = ReconfGraph::build(gadget.graph, gadget.k,
                                            Rule::tar(token_budget), 0, opts);
        for (int i = 0; i < rg.state_count(); ++i)
            masks.push_back(rg.state_mask(i));
        adjacency.assign(rg.state_count(), {});
        for (int i = 0; i < rg.state_count(); ++i)
            adjacency[i] = rg.neighbors(i);
    }

    GadgetQuotient quotient;
    quotient.state_adjacency = adjacency;

    // Port signature per state; every state at these budgets occupies
    // exactly one center per port.
    std::vector<Orientation> signature(masks.size());
    for (size_t i = 0; i < masks.size(); ++i) {
        for (int p = 0; p < 3; ++p) {
            const bool has_in = masks[i] >> gadget.ports[p].center_in & 1;
            const bool has_out = masks[i] >> gadget.ports[p].center_out & 1;
            if (has_in == has_out)
                throw Error("gadget_reconf_graph: state " + std::to_string(i) +
                            " does not select exactly one center on port " + std::to_string(p));
            signature[i].inward[p] = has_in;
        }
    }

    for (const Orientation& sig : signature)
        if (std::find(quotient.nodes.begin(), quotient.nodes.end(), sig) == quotient.nodes.end())
            quotient.nodes.push_back(sig);
    std::sort(quotient.nodes.begin(), quotient.nodes.end());
    quotient.class_states.assign(quotient.nodes.size(), {});
    std::vector<int> node_of(masks.size());
    for (size_t i = 0; i < masks.size(); ++i) {
        node_of[i] = static_cast<int>(
            std::find(quotient.nodes.begin(), quotient.nodes.end(), signature[i]) -
            quotient.nodes.begin());
        quotient.class_states[node_of[i]].push_back(static_cast<int>(i));
    }

    for (size_t i = 0; i < masks.size(); ++i)
        for (int j : adjacency[i])
            if (node_of[i] < node_of[j])
                quotient.edges.emplace_back(node_of[i], node_of[j]);
    std::sort(quotient.edges.begin(), quotient.edges.end());
    quotient.edges.erase(std::unique(quotient.edges.begin(), quotient.edges.end()),
                         quotient.edges.end());

    // Internal connectedness: BFS inside each class-induced subgraph.
    quotient.classes_internally_connected = true;
    for (const auto& members : quotient.class_states) {
        if (members.empty())
            continue;
        std::vector<bool> in_class(masks.size(), false), seen(masks.size(), false);
        for (int i : members)
            in_class[i] = true;
        std::deque<int> queue{members.front()};
        seen[members.front()] = true;
        size_t reached = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adjacency[v])
                if (in_class[w] && !seen[w]) {
                    seen[w] = true;
                    ++reached;
                    queue.push_back(w);
                }
        }
        if (reached != members.size())
            quotient.classes_internally_connected = false;
    }
    return quotient;
}

} // namespace kpvcr
