#include "kpvcr/tree_solver.hpp"

#include <algorithm>
#include <string>

namespace kpvcr {

namespace {

void require_tree(const Graph& g, const char* op) {
    GraphShape shape = classify(g);
    if (shape.kind != ShapeKind::Tree && shape.kind != ShapeKind::Path)
        throw PreconditionError(std::string(op) + ": graph is not a tree (classified as " +
                                to_string(shape.kind) + ")");
}

struct RootedTree {
    std::vector<Vertex> postorder;
    std::vector<Vertex> parent;
};

RootedTree root_at(const Graph& g, Vertex root) {
    RootedTree t;
    const int n = g.vertex_count();
    t.parent.assign(n, -1);
    t.postorder.reserve(n);
    // Iterative DFS, children visited in ascending id order.
    std::vector<std::pair<Vertex, int>> stack{{root, 0}};
    std::vector<bool> seen(n, false);
    seen[root] = true;
    while (!stack.empty()) {
        auto& [v, cursor] = stack.back();
        auto nb = g.neighbors(v);
        bool descended = false;
        while (cursor < static_cast<int>(nb.size())) {
            Vertex w = nb[cursor++];
            if (!seen[w]) {
                seen[w] = true;
                t.parent[w] = v;
                stack.emplace_back(w, 0);
                descended = true;
                break;
            }
        }
        if (!descended) {
            t.postorder.push_back(v);
            stack.pop_back();
        }
    }
    return t;
}

} // namespace

TreePartition partition_tree(const Graph& tree, int k, Vertex root) {
    require_tree(tree, "partition_tree");
    if (!tree.is_vertex(root))
        throw PreconditionError("partition_tree: invalid root " + std::to_string(root));
    const int n = tree.vertex_count();
    RootedTree rooted = root_at(tree, root);

    TreePartition partition;
    partition.root = root;
    std::vector<bool> alive(n, true);
    // height[v]: vertices on the longest downward path from v through alive
    // vertices, computed bottom-up over the post-order.
    std::vector<int> height(n, 0);
    for (Vertex v : rooted.postorder) {
        int best1 = 0, best2 = 0; // two largest alive child heights
        for (Vertex w : tree.neighbors(v)) {
            if (w == rooted.parent[v] || !alive[w])
                continue;
            int h = height[w];
            if (h > best1) {
                best2 = best1;
                best1 = h;
            } else if (h > best2) {
                best2 = h;
            }
        }
        // No alive descendant subtree holds a k-path (it would have been
        // carved already), so T_v is properly rooted exactly when the
        // longest path through v reaches k vertices.
        if (best1 + best2 + 1 >= k) {
            std::vector<Vertex> part;
            std::vector<Vertex> stack{v};
            alive[v] = false;
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                part.push_back(x);
                for (Vertex w : tree.neighbors(x))
                    if (w != rooted.parent[x] && alive[w]) {
                        alive[w] = false;
                        stack.push_back(w);
                    }
            }
            std::sort(part.begin(), part.end());
            partition.parts.push_back(std::move(part));
            partition.anchors.push_back(v);
            height[v] = 0;
        } else {
            height[v] = best1 + 1;
        }
    }
    // Whatever survived contains no k-path and joins the last subtree found.
    if (!partition.parts.empty()) {
        auto& last = partition.parts.back();
        for (Vertex v = 0; v < n; ++v)
            if (alive[v])
                last.push_back(v);
        std::sort(last.begin(), last.end());
    }
    return partition;
}

CoverSet min_cover_tree(const Graph& tree, int k, Vertex root) {
    TreePartition partition = partition_tree(tree, k, root);
    return CoverSet(partition.anchors, k);
}

namespace {

constexpr Vertex kCanonicalRoot = 0;

// TJ half-sequence from `from` to the canonical completion `target`:
// anchor each part in emission order, then resolve the residue pairwise.
ReconfSequence reconfigure_to_completion(const TreePartition& partition, int k,
                                         const CoverSet& from, const CoverSet& target) {
    ReconfSequence seq{CoverSet(from.members, k), {}};
    CoverSet current = seq.start;
    for (size_t i = 0; i < partition.parts.size(); ++i) {
        Vertex anchor = partition.anchors[i];
        if (current.contains(anchor))
            continue;
        Vertex donor = -1;
        for (Vertex v : partition.parts[i])
            if (current.contains(v)) {
                donor = v;
                break;
            }
        if (donor < 0)
            throw Error("tree partition: a valid cover misses a part");
        seq.steps.push_back(Step::jump(donor, anchor));
        current.erase(donor);
        current.insert(anchor);
    }
    std::vector<Vertex> residue, wanted;
    std::set_difference(current.members.begin(), current.members.end(), target.members.begin(),
                        target.members.end(), std::back_inserter(residue));
    std::set_difference(target.members.begin(), target.members.end(), current.members.begin(),
                        current.members.end(), std::back_inserter(wanted));
    for (size_t i = 0; i < residue.size(); ++i)
        seq.steps.push_back(Step::jump(residue[i], wanted[i]));
    return seq;
}

} // namespace

SolveOutcome solve_tree_tj(const Graph& tree, int k, const CoverSet& I, const CoverSet& J) {
    require_tree(tree, "solve_tree_tj");
    require_kpvc(tree, k, I, "I");
    require_kpvc(tree, k, J, "J");
    if (I.members == J.members)
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    if (I.size() != J.size())
        return SolveOutcome::no(NoReason::SizeMismatch);

    TreePartition partition = partition_tree(tree, k, kCanonicalRoot);

    // Canonical completion: the anchors plus the smallest vertices of I not
    // already among them, up to |I| tokens.
    CoverSet completion(partition.anchors, k);
    for (Vertex v : I.members) {
        if (completion.size() >= I.size())
            break;
        completion.insert(v);
    }

    ReconfSequence half_i = reconfigure_to_completion(partition, k, I, completion);
    ReconfSequence half_j = reconfigure_to_completion(partition, k, J, completion);
    return SolveOutcome::yes_with(concat(half_i, reverse(half_j)));
}

namespace {

ReconfSequence tree_equalize_up(const Graph& tree, int k, const CoverSet& from, int target) {
    ReconfSequence seq{CoverSet(from.members, k), {}};
    CoverSet current = seq.start;
    for (Vertex v = 0; v < tree.vertex_count() && current.size() < target; ++v)
        if (!current.contains(v)) {
            current.insert(v);
            seq.steps.push_back(Step::add(v));
        }
    return seq;
}

} // namespace

SolveOutcome solve_tree_tar(const Graph& tree, int k, const CoverSet& I, const CoverSet& J,
                            int cap) {
    require_tree(tree, "solve_tree_tar");
    require_kpvc(tree, k, I, "I");
    require_kpvc(tree, k, J, "J");

    if (I.members == J.members) {
        if (I.size() > cap)
            return SolveOutcome::no(NoReason::CapacityBlocked);
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    }
    if (std::max(I.size(), J.size()) > cap)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    const int psi = min_cover_tree(tree, k, kCanonicalRoot).size();
    if (psi == 0) {
        // No k-path anywhere: strip I, rebuild J.
        ReconfSequence seq{CoverSet(I.members, k), {}};
        for (auto it = I.members.rbegin(); it != I.members.rend(); ++it)
            seq.steps.push_back(Step::remove(*it));
        for (Vertex v : J.members)
            seq.steps.push_back(Step::add(v));
        return SolveOutcome::yes_with(std::move(seq));
    }
    if (cap == psi)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    const int s = std::max(I.size(), J.size());
    if (cap >= s + 1) {
        ReconfSequence prefix = tree_equalize_up(tree, k, I, s);
        ReconfSequence suffix = tree_equalize_up(tree, k, J, s);
        SolveOutcome core = solve_tree_tj(tree, k, prefix.final_state(), suffix.final_state());
        ReconfSequence tar_core = tj_to_tar(tree, k, *core.sequence);
        return SolveOutcome::yes_with(concat(concat(prefix, tar_core), reverse(suffix)));
    }

    // cap == s > psi: each size-s endpoint must shed a removable token first.
    auto lower_side = [&](const CoverSet& side) -> std::optional<ReconfSequence> {
        if (side.size() < s)
            return tree_equalize_up(tree, k, side, s - 1);
        for (Vertex v : side.members) {
            CoverSet reduced = side;
            reduced.erase(v);
            if (is_kpvc(tree, k, reduced.members)) {
                ReconfSequence seq{CoverSet(side.members, k), {}};
                seq.steps.push_back(Step::remove(v));
                return seq;
            }
        }
        return std::nullopt;
    };
    std::optional<ReconfSequence> prefix = lower_side(I);
    std::optional<ReconfSequence> suffix = lower_side(J);
    if (!prefix || !suffix)
        return SolveOutcome::no(NoReason::NoRemovableToken);
    SolveOutcome core = solve_tree_tj(tree, k, prefix->final_state(), suffix->final_state());
    ReconfSequence tar_core = tj_to_tar(tree, k, *core.sequence);
    return SolveOutcome::yes_with(concat(concat(*prefix, tar_core), reverse(*suffix)));
}

} // namespace kpvcr
