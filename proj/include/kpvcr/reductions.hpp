#pragma once

#include <array>

#include "kpvcr/oracle.hpp"
#include "kpvcr/reconfig.hpp"

namespace kpvcr {

// Attaches a pendant path on floor((k-1)/2) vertices to every vertex,
// turning vertex-cover questions into k-path vertex cover questions.
struct PendantTransform {
    Graph base;
    int k = 2;
    Graph result;
    // pendant_map[x]: the new path vertices hanging off x, nearest first.
    std::vector<std::vector<Vertex>> pendant_map;
};

PendantTransform pendant_transform(const Graph& g, int k);

enum class GadgetKind { And, Or };

const char* to_string(GadgetKind kind);

// One connecting part: a path on 2k-2 vertices shared with a neighboring
// gadget. A single token covering the whole part must sit on one of the two
// center vertices; the center nearer the main part encodes the inward
// direction.
struct GadgetPort {
    std::vector<Vertex> vertices; // path order
    Vertex center_in = -1;
    Vertex center_out = -1;
    int weight = 2;
};

struct NclGadget {
    GadgetKind kind = GadgetKind::And;
    int k = 3;
    Graph graph = Graph::path(1);
    std::vector<Vertex> main_part; // path (AND) or cycle (OR) vertices
    std::array<GadgetPort, 3> ports;
};

// AND: main path on k vertices, one endpoint joined to the two weight-1
// ports, the other to the weight-2 port. OR: main cycle on k+1 vertices,
// three of its vertices joined to one weight-2 port each.
NclGadget build_gadget(GadgetKind kind, int k);

// Edge orientations at a degree-3 constraint vertex; valid when the inward
// weight sum is at least two.
struct Orientation {
    std::array<bool, 3> inward{};

    bool operator==(const Orientation&) const = default;
    auto operator<=>(const Orientation&) const = default;
};

std::vector<Orientation> valid_orientations(GadgetKind kind);

// The gadget's reconfiguration graph contracted by port signature: states
// grouped by which center vertex each port uses.
struct GadgetQuotient {
    std::vector<Orientation> nodes;
    std::vector<std::pair<int, int>> edges;        // node index pairs, first < second
    std::vector<std::vector<int>> class_states;    // state list per node
    std::vector<std::vector<int>> state_adjacency; // underlying reconfiguration graph
    bool classes_internally_connected = false;
};

GadgetQuotient gadget_reconf_graph(const NclGadget& gadget, int token_budget, Rule rule,
                                   const OracleOptions& opts = {});

} // namespace kpvcr
