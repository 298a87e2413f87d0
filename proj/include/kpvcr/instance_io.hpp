#pragma once

#include <iosfwd>
#include <string>

#include "kpvcr/reconfig.hpp"

namespace kpvcr {

// A problem instance as carried by the line-oriented file format:
//   # comment
//   k 3
//   n 6
//   edge 0 1
//   I: 1 4
//   J: 2 5
//   rule: tj
//   u: 3          (tar only)
struct Instance {
    Graph graph = Graph::path(1);
    int k = 2;
    CoverSet I, J;
    Rule rule;

    bool operator==(const Instance&) const = default;
};

// Fully validated parse: graph invariants, cover ranges, both covers checked
// with a witness-naming error, rule/u consistency.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string emit_instance(const Instance& inst);

// A graph-only file (k, n, edges); cover and rule lines are rejected if
// k/n/edge lines are malformed but otherwise ignored entirely.
struct GraphFile {
    Graph graph = Graph::path(1);
    int k = 0; // 0 when the file carries no k line
};

GraphFile parse_graph_file(std::istream& in);
std::string emit_graph_file(const Graph& g, int k, const std::string& comment = "");

// Sequence files: `start: v1 v2 ...` then one step per line
// (`slide u v` | `jump u v` | `add v` | `remove v`).
ReconfSequence parse_sequence(std::istream& in, int k);
std::string emit_sequence(const ReconfSequence& seq);

} // namespace kpvcr
