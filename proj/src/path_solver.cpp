#include "kpvcr/path_solver.hpp"

#include <algorithm>
#include <string>

namespace kpvcr {

namespace {

struct PathView {
    std::vector<Vertex> order; // position -> vertex id
    std::vector<int> pos;      // vertex id -> position
};

PathView path_view(const Graph& g, const char* op) {
    GraphShape shape = classify(g);
    if (shape.kind != ShapeKind::Path)
        throw PreconditionError(std::string(op) + ": graph is not a path (classified as " +
                                to_string(shape.kind) + ")");
    PathView view;
    view.order = std::move(shape.order);
    view.pos.assign(g.vertex_count(), -1);
    for (int p = 0; p < static_cast<int>(view.order.size()); ++p)
        view.pos[view.order[p]] = p;
    return view;
}

std::vector<int> to_positions(const PathView& view, const CoverSet& c) {
    std::vector<int> ps;
    ps.reserve(c.members.size());
    for (Vertex v : c.members)
        ps.push_back(view.pos[v]);
    std::sort(ps.begin(), ps.end());
    return ps;
}

// Emits the slides of one push in position space, updating the occupancy and
// the sorted token list. Consecutive blocking runs are shifted from their
// leading token backward, which is what the recursive formulation does.
void push_positions(int n, int k, std::vector<char>& occupied, std::vector<int>& tokens, int i,
                    int j, std::vector<std::pair<int, int>>& slides) {
    if (!(0 <= i && i < j && j <= i + k && j < n))
        throw PreconditionError("push: need 0 <= i < j <= i+k and j within the path, got i=" +
                                std::to_string(i) + " j=" + std::to_string(j));
    if (!occupied[i])
        throw PreconditionError("push: no token at position " + std::to_string(i));
    // Left-window guard: vacating position c leaves the stretch back to the
    // nearest token (or the path end) uncovered, so that run must stay
    // under k. Checked before every step of the moved token; block shifts
    // only ever tighten the layout and are safe unconditionally.
    auto guarded = [&](int c) {
        for (int q = c - 1; q >= 0 && q >= c - k + 1; --q)
            if (occupied[q])
                return true;
        return c <= k - 2;
    };
    if (!guarded(i))
        throw PreconditionError("push: no token within reach behind position " +
                                std::to_string(i));

    auto do_slide = [&](int a) {
        occupied[a] = 0;
        occupied[a + 1] = 1;
        auto it = std::lower_bound(tokens.begin(), tokens.end(), a);
        ++*it;
        slides.emplace_back(a, a + 1);
    };

    int c = i;
    while (c < j) {
        if (!guarded(c))
            throw PreconditionError("push: moving past position " + std::to_string(c) +
                                    " would uncover the stretch behind it");
        if (occupied[c + 1]) {
            int run_end = c + 1;
            while (run_end + 1 < n && occupied[run_end + 1])
                ++run_end;
            if (run_end + 1 >= n)
                throw PreconditionError("push: blocking tokens reach the end of the path");
            for (int q = run_end; q > c; --q)
                do_slide(q);
        }
        do_slide(c);
        ++c;
    }
}

} // namespace

bool path_token_removable(int n, int k, const std::vector<int>& positions, int rank) {
    const int m = static_cast<int>(positions.size());
    if (rank < 0 || rank >= m)
        throw PreconditionError("path_token_removable: rank out of range");
    const int left = rank == 0 ? 0 : positions[rank - 1] + 1;
    const int right = rank == m - 1 ? n - 1 : positions[rank + 1] - 1;
    return right - left + 1 < k;
}

SolveOutcome solve_path_tj(const Graph& path, int k, const CoverSet& I, const CoverSet& J) {
    PathView view = path_view(path, "solve_path_tj");
    require_kpvc(path, k, I, "I");
    require_kpvc(path, k, J, "J");
    if (I.members == J.members)
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    if (I.size() != J.size())
        return SolveOutcome::no(NoReason::SizeMismatch);

    std::vector<int> pI = to_positions(view, I), pJ = to_positions(view, J);
    // Positions only in one side, descending; the loop always consumes the
    // rightmost remaining difference and the rightmost of the other side.
    std::vector<int> onlyI, onlyJ;
    std::set_difference(pI.rbegin(), pI.rend(), pJ.rbegin(), pJ.rend(),
                        std::back_inserter(onlyI), std::greater<>());
    std::set_difference(pJ.rbegin(), pJ.rend(), pI.rbegin(), pI.rend(),
                        std::back_inserter(onlyJ), std::greater<>());

    // Assembled directly as (I half) + reversed (J half): the halves meet in
    // the middle by construction.
    ReconfSequence seq{CoverSet(I.members, k), {}};
    std::vector<Step> from_j;
    for (size_t p = 0; p < onlyI.size(); ++p) {
        if (onlyI[p] > onlyJ[p])
            seq.steps.push_back(Step::jump(view.order[onlyI[p]], view.order[onlyJ[p]]));
        else
            from_j.push_back(Step::jump(view.order[onlyJ[p]], view.order[onlyI[p]]));
    }
    for (auto it = from_j.rbegin(); it != from_j.rend(); ++it)
        seq.steps.push_back(it->inverted());
    return SolveOutcome::yes_with(std::move(seq));
}

ReconfSequence push(const Graph& path, int k, const CoverSet& cover, int i, int j) {
    PathView view = path_view(path, "push");
    const int n = path.vertex_count();
    std::vector<char> occupied(n, 0);
    for (Vertex v : cover.members)
        occupied[view.pos[v]] = 1;
    std::vector<int> tokens = to_positions(view, cover);

    std::vector<std::pair<int, int>> slides;
    push_positions(n, k, occupied, tokens, i, j, slides);

    ReconfSequence seq{CoverSet(cover.members, k), {}};
    for (auto [a, b] : slides)
        seq.steps.push_back(Step::slide(view.order[a], view.order[b]));
    return seq;
}

SolveOutcome solve_path_ts(const Graph& path, int k, const CoverSet& I, const CoverSet& J) {
    PathView view = path_view(path, "solve_path_ts");
    require_kpvc(path, k, I, "I");
    require_kpvc(path, k, J, "J");
    if (I.members == J.members)
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    if (I.size() != J.size())
        return SolveOutcome::no(NoReason::SizeMismatch);

    const int n = path.vertex_count();
    const int s = I.size();
    std::vector<int> curI = to_positions(view, I), curJ = to_positions(view, J);
    std::vector<char> occI(n, 0), occJ(n, 0);
    for (int p : curI)
        occI[p] = 1;
    for (int p : curJ)
        occJ[p] = 1;

    std::vector<std::pair<int, int>> slidesI, slidesJ;
    for (int p = 0; p < s; ++p) {
        int i = curI[p], j = curJ[p];
        if (i == j)
            continue;
        if (std::abs(i - j) > k)
            throw Error("solve_path_ts: rank-matched tokens drifted more than k apart");
        if (i < j)
            push_positions(n, k, occI, curI, i, j, slidesI);
        else
            push_positions(n, k, occJ, curJ, j, i, slidesJ);
    }
    if (curI != curJ)
        throw Error("solve_path_ts: the two half-sequences did not meet");

    ReconfSequence seq{CoverSet(I.members, k), {}};
    seq.steps.reserve(slidesI.size() + slidesJ.size());
    for (auto [a, b] : slidesI)
        seq.steps.push_back(Step::slide(view.order[a], view.order[b]));
    for (auto it = slidesJ.rbegin(); it != slidesJ.rend(); ++it)
        seq.steps.push_back(Step::slide(view.order[it->second], view.order[it->first]));
    return SolveOutcome::yes_with(std::move(seq));
}

namespace {

// Additions at the smallest free positions until the set reaches `target`
// tokens; any superset of a cover is a cover.
ReconfSequence equalize_up(const PathView& view, int k, const CoverSet& from, int target) {
    ReconfSequence seq{CoverSet(from.members, k), {}};
    std::vector<char> occupied(view.order.size(), 0);
    for (Vertex v : from.members)
        occupied[view.pos[v]] = 1;
    int have = from.size();
    for (int p = 0; have < target; ++p) {
        if (!occupied[p]) {
            occupied[p] = 1;
            seq.steps.push_back(Step::add(view.order[p]));
            ++have;
        }
    }
    return seq;
}

} // namespace

SolveOutcome solve_path_tar(const Graph& path, int k, const CoverSet& I, const CoverSet& J,
                            int cap) {
    PathView view = path_view(path, "solve_path_tar");
    require_kpvc(path, k, I, "I");
    require_kpvc(path, k, J, "J");
    const int n = path.vertex_count();

    if (I.members == J.members) {
        if (I.size() > cap)
            return SolveOutcome::no(NoReason::CapacityBlocked);
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    }
    if (std::max(I.size(), J.size()) > cap)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    if (n < k) {
        // No k-path exists, so every token-set is a cover: strip I, rebuild J.
        ReconfSequence seq{CoverSet(I.members, k), {}};
        for (auto it = I.members.rbegin(); it != I.members.rend(); ++it)
            seq.steps.push_back(Step::remove(*it));
        for (Vertex v : J.members)
            seq.steps.push_back(Step::add(v));
        return SolveOutcome::yes_with(std::move(seq));
    }

    const int psi = psi_k_closed_form(ShapeKind::Path, n, k);
    if (cap == psi)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    const int s = std::max(I.size(), J.size());
    if (cap >= s + 1) {
        ReconfSequence prefix = equalize_up(view, k, I, s);
        ReconfSequence suffix = equalize_up(view, k, J, s);
        SolveOutcome core =
            solve_path_tj(path, k, prefix.final_state(), suffix.final_state());
        ReconfSequence tar_core = tj_to_tar(path, k, *core.sequence);
        return SolveOutcome::yes_with(concat(concat(prefix, tar_core), reverse(suffix)));
    }

    // cap == s > psi: a size-s endpoint can only start with a removal.
    auto lower_side = [&](const CoverSet& side) -> std::optional<ReconfSequence> {
        if (side.size() < s)
            return equalize_up(view, k, side, s - 1);
        std::vector<int> positions = to_positions(view, side);
        for (int rank = 0; rank < side.size(); ++rank)
            if (path_token_removable(n, k, positions, rank)) {
                ReconfSequence seq{CoverSet(side.members, k), {}};
                seq.steps.push_back(Step::remove(view.order[positions[rank]]));
                return seq;
            }
        return std::nullopt;
    };
    std::optional<ReconfSequence> prefix = lower_side(I);
    std::optional<ReconfSequence> suffix = lower_side(J);
    if (!prefix || !suffix)
        return SolveOutcome::no(NoReason::NoRemovableToken);
    SolveOutcome core = solve_path_tj(path, k, prefix->final_state(), suffix->final_state());
    ReconfSequence tar_core = tj_to_tar(path, k, *core.sequence);
    return SolveOutcome::yes_with(concat(concat(*prefix, tar_core), reverse(*suffix)));
}

} // namespace kpvcr
