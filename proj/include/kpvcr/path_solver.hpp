#pragma once

#include "kpvcr/reconfig.hpp"

namespace kpvcr {

// Shortest TJ solver: repeatedly relocates the rightmost symmetric-difference
// token toward the other cover, accumulating one half-sequence per side; the
// result has length exactly |I delta J| / 2.
SolveOutcome solve_path_tj(const Graph& path, int k, const CoverSet& I, const CoverSet& J);

// TS primitive: moves the token at path position i to position j (positions
// along the path order, 0-based, i < j <= i+k), recursively shifting each
// blocking token one step ahead first. Every intermediate set stays a valid
// cover as long as the stated guard holds (i within the first k positions or
// a token among the k positions before i).
ReconfSequence push(const Graph& path, int k, const CoverSet& cover, int i, int j);

// Shortest TS solver: rank-matched paired scans push tokens of one side
// toward the other; the result has length sum_p dist(i_p, j_p).
SolveOutcome solve_path_ts(const Graph& path, int k, const CoverSet& I, const CoverSet& J);

// TAR decision with witness. No when the capacity pins both covers
// (cap < max size, or cap = psi_k with distinct covers, or cap = s with no
// removable token on a size-s side); otherwise a witness is assembled from
// equalizing additions, the TJ core converted at cap s+1, and removals.
SolveOutcome solve_path_tar(const Graph& path, int k, const CoverSet& I, const CoverSet& J,
                            int cap);

// True iff removing the token at sorted-cover rank `rank` keeps a valid
// cover of the path; gap arithmetic on positions, O(1).
bool path_token_removable(int n, int k, const std::vector<int>& positions, int rank);

} // namespace kpvcr
