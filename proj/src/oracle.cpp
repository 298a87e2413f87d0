#include "kpvcr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <ostream>
#include <string>
#include <thread>

namespace kpvcr {

namespace {

constexpr int kMaxOracleVertices = 62;

void check_oracle_graph(const Graph& g) {
    if (g.vertex_count() > kMaxOracleVertices)
        throw UnsupportedError("oracle: graphs beyond " + std::to_string(kMaxOracleVertices) +
                               " vertices are out of scope");
}

// Binomial coefficient, saturating at a sentinel past any sane budget.
std::uint64_t binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (int i = 1; i <= r; ++i) {
        result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
        if (result > (std::uint64_t{1} << 62))
            return std::uint64_t{1} << 62;
    }
    return result;
}

bool mask_is_kpvc(const Graph& g, int k, std::uint64_t cover) {
    const int n = g.vertex_count();
    std::uint64_t visited = cover;
    // Depth-capped DFS for a simple k-path avoiding the cover.
    std::vector<std::pair<Vertex, int>> stack; // vertex, neighbor cursor
    stack.reserve(k);
    for (Vertex s = 0; s < n; ++s) {
        if ((cover >> s) & 1)
            continue;
        stack.clear();
        std::uint64_t on_path = 0;
        stack.emplace_back(s, 0);
        on_path |= std::uint64_t{1} << s;
        if (k == 1)
            return false;
        while (!stack.empty()) {
            auto& [v, cursor] = stack.back();
            auto nb = g.neighbors(v);
            bool advanced = false;
            while (cursor < static_cast<int>(nb.size())) {
                Vertex w = nb[cursor++];
                if ((visited >> w) & 1 || (on_path >> w) & 1)
                    continue;
                if (static_cast<int>(stack.size()) + 1 == k)
                    return false; // witness found
                stack.emplace_back(w, 0);
                on_path |= std::uint64_t{1} << w;
                advanced = true;
                break;
            }
            if (!advanced) {
                on_path &= ~(std::uint64_t{1} << v);
                stack.pop_back();
            }
        }
    }
    (void)visited;
    return true;
}

// Fixed-popcount masks in increasing numeric order (= colex on subsets).
std::vector<std::uint64_t> candidate_masks(int n, int size) {
    std::vector<std::uint64_t> out;
    if (size == 0) {
        out.push_back(0);
        return out;
    }
    if (size > n)
        return out;
    std::uint64_t m = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (m < limit) {
        out.push_back(m);
        std::uint64_t c = m & -m;
        std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
        if (r >= limit)
            break;
    }
    return out;
}

std::vector<std::uint64_t> valid_masks(const Graph& g, int k, int size_min, int size_max,
                                       const OracleOptions& opts) {
    check_oracle_graph(g);
    const int n = g.vertex_count();
    size_min = std::max(size_min, 0);
    size_max = std::min(size_max, n);
    std::uint64_t candidates = 0;
    for (int s = size_min; s <= size_max; ++s)
        candidates += binomial(n, s);
    if (candidates > opts.state_budget)
        throw BudgetError("oracle: " + std::to_string(candidates) +
                          " candidate states exceed the budget of " +
                          std::to_string(opts.state_budget));

    std::vector<std::uint64_t> all;
    all.reserve(candidates);
    for (int s = size_min; s <= size_max; ++s) {
        auto masks = candidate_masks(n, s);
        all.insert(all.end(), masks.begin(), masks.end());
    }

    std::vector<char> keep(all.size(), 0);
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || all.size() < 1024) {
        for (size_t i = 0; i < all.size(); ++i)
            keep[i] = mask_is_kpvc(g, k, all[i]);
    } else {
        std::vector<std::thread> workers;
        const size_t chunk = (all.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            size_t lo = t * chunk, hi = std::min(all.size(), lo + chunk);
            if (lo >= hi)
                break;
            workers.emplace_back([&, lo, hi] {
                for (size_t i = lo; i < hi; ++i)
                    keep[i] = mask_is_kpvc(g, k, all[i]);
            });
        }
        for (auto& w : workers)
            w.join();
    }
    std::vector<std::uint64_t> valid;
    for (size_t i = 0; i < all.size(); ++i)
        if (keep[i])
            valid.push_back(all[i]);
    return valid;
}

} // namespace

std::vector<CoverSet> enumerate_covers(const Graph& g, int k, int size_min, int size_max,
                                       const OracleOptions& opts) {
    std::vector<CoverSet> out;
    for (std::uint64_t m : valid_masks(g, k, size_min, size_max, opts))
        out.push_back(CoverSet::from_mask(m, k));
    return out;
}

ReconfGraph ReconfGraph::build(const Graph& g, int k, Rule rule, int token_count,
                               const OracleOptions& opts) {
    ReconfGraph rg;
    rg.k_ = k;
    rg.rule_ = rule;
    const int lo = rule.kind == RuleKind::TAR ? 0 : token_count;
    const int hi = rule.kind == RuleKind::TAR ? rule.cap : token_count;
    rg.states_ = valid_masks(g, k, lo, hi, opts);
    rg.index_.reserve(rg.states_.size() * 2);
    for (size_t i = 0; i < rg.states_.size(); ++i)
        rg.index_.emplace(rg.states_[i], static_cast<int>(i));

    const int n = g.vertex_count();
    rg.adj_.assign(rg.states_.size(), {});
    auto try_link = [&](int i, std::uint64_t next) {
        auto it = rg.index_.find(next);
        if (it != rg.index_.end() && it->second > i) {
            rg.adj_[i].push_back(it->second);
            rg.adj_[it->second].push_back(i);
        }
    };
    for (size_t i = 0; i < rg.states_.size(); ++i) {
        const std::uint64_t state = rg.states_[i];
        switch (rule.kind) {
        case RuleKind::TS:
            for (Vertex x = 0; x < n; ++x) {
                if (!((state >> x) & 1))
                    continue;
                for (Vertex y : g.neighbors(x))
                    if (!((state >> y) & 1))
                        try_link(static_cast<int>(i),
                                 (state & ~(std::uint64_t{1} << x)) | (std::uint64_t{1} << y));
            }
            break;
        case RuleKind::TJ:
            for (Vertex x = 0; x < n; ++x) {
                if (!((state >> x) & 1))
                    continue;
                for (Vertex y = 0; y < n; ++y)
                    if (!((state >> y) & 1))
                        try_link(static_cast<int>(i),
                                 (state & ~(std::uint64_t{1} << x)) | (std::uint64_t{1} << y));
            }
            break;
        case RuleKind::TAR:
            for (Vertex v = 0; v < n; ++v) {
                const std::uint64_t bit = std::uint64_t{1} << v;
                if (state & bit)
                    try_link(static_cast<int>(i), state & ~bit);
                else if (std::popcount(state) + 1 <= rule.cap)
                    try_link(static_cast<int>(i), state | bit);
            }
            break;
        }
    }
    for (auto& nb : rg.adj_)
        std::sort(nb.begin(), nb.end());
    return rg;
}

std::optional<int> ReconfGraph::index_of(const CoverSet& c) const {
    auto it = index_.find(c.to_mask());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<int> ReconfGraph::bfs_distances(int src) const {
    std::vector<int> d(states_.size(), -1);
    std::deque<int> queue{src};
    d[src] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj_[v])
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                queue.push_back(w);
            }
    }
    return d;
}

std::optional<std::vector<int>> ReconfGraph::shortest_chain(int src, int dst) const {
    std::vector<int> parent(states_.size(), -2);
    std::deque<int> queue{src};
    parent[src] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == dst)
            break;
        for (int w : adj_[v])
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (parent[dst] == -2)
        return std::nullopt;
    std::vector<int> chain;
    for (int v = dst; v != -1; v = parent[v])
        chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

void ReconfGraph::export_edges(std::ostream& out) const {
    out << "# states " << states_.size() << "\n";
    for (size_t i = 0; i < states_.size(); ++i) {
        out << "state " << i << ":";
        for (Vertex v : state_cover(static_cast<int>(i)).members)
            out << " " << v;
        out << "\n";
    }
    out << "# edges\n";
    for (size_t i = 0; i < states_.size(); ++i)
        for (int j : adj_[i])
            if (j > static_cast<int>(i))
                out << i << " " << j << "\n";
}

namespace {

ReconfGraph build_for_pair(const Graph& g, int k, Rule rule, const CoverSet& I, const CoverSet& J,
                           const OracleOptions& opts) {
    require_kpvc(g, k, I, "I");
    require_kpvc(g, k, J, "J");
    return ReconfGraph::build(g, k, rule, I.size(), opts);
}

bool pair_trivially_unreachable(Rule rule, const CoverSet& I, const CoverSet& J) {
    if (rule.kind != RuleKind::TAR)
        return I.size() != J.size();
    return I.size() > rule.cap || J.size() > rule.cap;
}

} // namespace

ReachResult oracle_reachable(const Graph& g, int k, Rule rule, const CoverSet& I,
                             const CoverSet& J, const OracleOptions& opts) {
    require_kpvc(g, k, I, "I");
    require_kpvc(g, k, J, "J");
    if (pair_trivially_unreachable(rule, I, J))
        return {false, std::nullopt};
    if (I.members == J.members)
        return {true, 0};
    ReconfGraph rg = ReconfGraph::build(g, k, rule, I.size(), opts);
    auto src = rg.index_of(I);
    auto dst = rg.index_of(J);
    if (!src || !dst)
        return {false, std::nullopt};
    int d = rg.bfs_distances(*src)[*dst];
    if (d < 0)
        return {false, std::nullopt};
    return {true, d};
}

std::optional<ReconfSequence> oracle_sequence(const Graph& g, int k, Rule rule, const CoverSet& I,
                                              const CoverSet& J, const OracleOptions& opts) {
    if (pair_trivially_unreachable(rule, I, J)) {
        require_kpvc(g, k, I, "I");
        require_kpvc(g, k, J, "J");
        return std::nullopt;
    }
    if (I.members == J.members) {
        require_kpvc(g, k, I, "I");
        return ReconfSequence{CoverSet(I.members, k), {}};
    }
    ReconfGraph rg = build_for_pair(g, k, rule, I, J, opts);
    auto src = rg.index_of(I);
    auto dst = rg.index_of(J);
    if (!src || !dst)
        return std::nullopt;
    auto chain = rg.shortest_chain(*src, *dst);
    if (!chain)
        return std::nullopt;
    ReconfSequence seq;
    seq.start = CoverSet(I.members, k);
    for (size_t i = 0; i + 1 < chain->size(); ++i) {
        std::uint64_t a = rg.state_mask((*chain)[i]);
        std::uint64_t b = rg.state_mask((*chain)[i + 1]);
        std::uint64_t gone = a & ~b, came = b & ~a;
        if (gone && came) {
            Vertex x = std::countr_zero(gone), y = std::countr_zero(came);
            seq.steps.push_back(rule.kind == RuleKind::TS ? Step::slide(x, y) : Step::jump(x, y));
        } else if (came) {
            seq.steps.push_back(Step::add(std::countr_zero(came)));
        } else {
            seq.steps.push_back(Step::remove(std::countr_zero(gone)));
        }
    }
    return seq;
}

int oracle_min_cover_size(const Graph& g, int k, const OracleOptions& opts) {
    check_oracle_graph(g);
    const int n = g.vertex_count();
    std::uint64_t scanned = 0;
    for (int s = 0; s <= n; ++s) {
        scanned += binomial(n, s);
        if (scanned > opts.state_budget)
            throw BudgetError("oracle_min_cover_size: candidate scan exceeds the budget of " +
                              std::to_string(opts.state_budget));
        for (std::uint64_t m : candidate_masks(n, s))
            if (mask_is_kpvc(g, k, m))
                return s;
    }
    throw Error("oracle_min_cover_size: no cover found (unreachable)");
}

} // namespace kpvcr
