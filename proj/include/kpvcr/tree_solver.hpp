#pragma once

#include "kpvcr/reconfig.hpp"

namespace kpvcr {

// Partition of a tree into psi_k subtrees, each met by every cover and each
// covered in full by its single anchor vertex.
struct TreePartition {
    Vertex root = 0;
    std::vector<std::vector<Vertex>> parts; // emission order, deepest first
    std::vector<Vertex> anchors;            // anchors[i] covers parts[i]
};

// Peels properly rooted subtrees off the tree in deepest-first post-order;
// the vertices left over once no k-path remains join the last part. Empty
// partition when the tree has no k-path at all.
TreePartition partition_tree(const Graph& tree, int k, Vertex root);

// The anchor set of the partition: a minimum k-path vertex cover.
CoverSet min_cover_tree(const Graph& tree, int k, Vertex root);

// TJ on trees: reconfigurable iff |I| = |J|; the witness routes both covers
// through a canonical completion of the anchor set.
SolveOutcome solve_tree_tj(const Graph& tree, int k, const CoverSet& I, const CoverSet& J);

// TAR decision on trees via the size case table and the TJ solver converted
// at capacity s+1.
SolveOutcome solve_tree_tar(const Graph& tree, int k, const CoverSet& I, const CoverSet& J,
                            int cap);

} // namespace kpvcr
