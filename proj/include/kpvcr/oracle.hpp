#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kpvcr/reconfig.hpp"

namespace kpvcr {

struct OracleOptions {
    std::uint64_t state_budget = 2'000'000;
    int jobs = 1;
};

// All k-path vertex covers with size in [size_min, size_max], in size-major
// colexicographic order. Errors out before scanning when the candidate count
// exceeds the state budget.
std::vector<CoverSet> enumerate_covers(const Graph& g, int k, int size_min, int size_max,
                                       const OracleOptions& opts = {});

// The reconfiguration graph over all covers of a small instance: states are
// every valid cover of size s (TS/TJ) or of size <= cap (TAR); two states
// are adjacent when one legal move of the rule transforms one into the
// other. Construction is deterministic.
class ReconfGraph {
public:
    // token_count is the state size for TS/TJ and is ignored for TAR (the
    // rule's cap bounds the sizes instead).
    static ReconfGraph build(const Graph& g, int k, Rule rule, int token_count,
                             const OracleOptions& opts = {});

    int state_count() const { return static_cast<int>(states_.size()); }
    std::uint64_t state_mask(int i) const { return states_[i]; }
    CoverSet state_cover(int i) const { return CoverSet::from_mask(states_[i], k_); }
    std::optional<int> index_of(const CoverSet& c) const;
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    Rule rule() const { return rule_; }

    // BFS distances from src; -1 marks unreachable states.
    std::vector<int> bfs_distances(int src) const;
    // Shortest state chain src -> dst, empty optional when unreachable.
    std::optional<std::vector<int>> shortest_chain(int src, int dst) const;

    // `state <id>: members...` table followed by `<id> <id>` edge lines.
    void export_edges(std::ostream& out) const;

private:
    int k_ = 2;
    Rule rule_;
    std::vector<std::uint64_t> states_;
    std::unordered_map<std::uint64_t, int> index_;
    std::vector<std::vector<int>> adj_;
};

struct ReachResult {
    bool reachable = false;
    std::optional<int> shortest;
};

// BFS ground truth for any rule. Unequal sizes under TS/TJ and covers beyond
// the TAR capacity are unreachable by definition.
ReachResult oracle_reachable(const Graph& g, int k, Rule rule, const CoverSet& I,
                             const CoverSet& J, const OracleOptions& opts = {});

// A shortest witness sequence found by BFS, or nullopt when unreachable.
std::optional<ReconfSequence> oracle_sequence(const Graph& g, int k, Rule rule, const CoverSet& I,
                                              const CoverSet& J, const OracleOptions& opts = {});

// Minimum size of a k-path vertex cover, by exhaustive search.
int oracle_min_cover_size(const Graph& g, int k, const OracleOptions& opts = {});

} // namespace kpvcr
