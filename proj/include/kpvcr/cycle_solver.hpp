#pragma once

#include "kpvcr/reconfig.hpp"

namespace kpvcr {

struct MovableToken {
    Vertex vertex;
    bool clockwise; // direction of cycle order indices increasing
};

// A token whose one-step slide keeps the cover valid, or nullopt when the
// cover is a frozen minimum on a cycle whose length k divides.
std::optional<MovableToken> find_movable_token(const Graph& cycle, int k, const CoverSet& cover);

// TS sequence of |cover| slides shifting every token one step in the given
// direction, starting from `start` and taking each consecutive token run
// from its leading end.
ReconfSequence rotate(const Graph& cycle, int k, const CoverSet& cover, Vertex start,
                      bool clockwise);

// Path instance obtained by cutting the cycle at a vertex of both covers.
// Path solutions lift back by re-adding the cut vertex to every state.
struct CutInstance {
    Graph path;
    std::vector<Vertex> to_cycle; // path vertex id -> original cycle vertex id
    CoverSet I, J;                // covers mapped onto the path, cut vertex dropped
    Vertex cut_vertex;
};

CutInstance cut_cycle(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J, Vertex v);

// Relabels a sequence on the cut path back onto the cycle and re-adds the
// cut vertex to the start state.
ReconfSequence lift_cut_sequence(const CutInstance& cut, int k, const ReconfSequence& on_path);

// TS/TJ on cycles: rotate until the covers share a token, cut there, solve
// on the path, lift back. Frozen minimum instances are no-instances.
SolveOutcome solve_cycle(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J,
                         Rule rule);

// TAR decision on cycles, including the capacity boundary cases.
SolveOutcome solve_cycle_tar(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J,
                             int cap);

// Yes-instance family on a (3k-1)-cycle whose shortest TJ sequence is longer
// than |I delta J| / 2.
struct TjDetourInstance {
    Graph cycle;
    int k;
    CoverSet I, J;
    // The explicit five-step witness: each token first detours one step.
    ReconfSequence witness;
};

TjDetourInstance hard_shortest_tj_family(int k);

} // namespace kpvcr
