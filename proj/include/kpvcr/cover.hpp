#pragma once

#include <cstdint>
#include <vector>

#include "kpvcr/graph.hpp"

namespace kpvcr {

// A set of occupied vertices (tokens) together with the path-length
// parameter k it is claimed to cover against. Members are kept sorted and
// unique; validity is a checked property (is_kpvc), never assumed.
struct CoverSet {
    std::vector<Vertex> members;
    int k = 2;

    CoverSet() = default;
    CoverSet(std::vector<Vertex> m, int kk);

    static CoverSet from_mask(std::uint64_t mask, int k);

    int size() const { return static_cast<int>(members.size()); }
    bool contains(Vertex v) const;
    bool empty() const { return members.empty(); }
    std::uint64_t to_mask() const;

    void insert(Vertex v);
    void erase(Vertex v);

    bool operator==(const CoverSet& other) const = default;
};

// True iff no k-path of g avoids c. Witness-search DFS with depth cap k,
// not full enumeration.
bool is_kpvc(const Graph& g, const CoverSet& c);
bool is_kpvc(const Graph& g, int k, const std::vector<Vertex>& members);

// Throws InvalidCoverError naming an uncovered k-path when the check fails.
void require_kpvc(const Graph& g, int k, const CoverSet& c, const char* label);

} // namespace kpvcr
