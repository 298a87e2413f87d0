#include "kpvcr/cycle_solver.hpp"

#include <algorithm>
#include <string>

#include "kpvcr/path_solver.hpp"

namespace kpvcr {

namespace {

struct CycleView {
    std::vector<Vertex> order; // cyclic position -> vertex id
    std::vector<int> pos;      // vertex id -> cyclic position
    int n = 0;
};

CycleView cycle_view(const Graph& g, const char* op) {
    GraphShape shape = classify(g);
    if (shape.kind != ShapeKind::Cycle)
        throw PreconditionError(std::string(op) + ": graph is not a cycle (classified as " +
                                to_string(shape.kind) + ")");
    CycleView view;
    view.n = g.vertex_count();
    view.order = std::move(shape.order);
    view.pos.assign(view.n, -1);
    for (int p = 0; p < view.n; ++p)
        view.pos[view.order[p]] = p;
    return view;
}

std::vector<int> cycle_positions(const CycleView& view, const CoverSet& c) {
    std::vector<int> ps;
    ps.reserve(c.members.size());
    for (Vertex v : c.members)
        ps.push_back(view.pos[v]);
    std::sort(ps.begin(), ps.end());
    return ps;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

// Uncovered run length behind position q after sliding its token one step
// clockwise: the stretch from its predecessor token (exclusive) up to and
// including q itself.
bool movable_clockwise(const CycleView& view, int k, const std::vector<int>& ps, size_t idx) {
    const int n = view.n;
    const int q = ps[idx];
    const int next = ps[(idx + 1) % ps.size()];
    if (ps.size() > 1 && mod(q + 1, n) == next)
        return false; // target occupied
    if (ps.size() == 1 && n == 1)
        return false;
    const int pred = ps[(idx + ps.size() - 1) % ps.size()];
    return mod(q - pred, n) < k;
}

bool movable_counterclockwise(const CycleView& view, int k, const std::vector<int>& ps,
                              size_t idx) {
    const int n = view.n;
    const int q = ps[idx];
    const int pred = ps[(idx + ps.size() - 1) % ps.size()];
    if (ps.size() > 1 && mod(q - 1, n) == pred)
        return false;
    const int next = ps[(idx + 1) % ps.size()];
    return mod(next - q, n) < k;
}

std::optional<MovableToken> find_movable_in(const CycleView& view, int k,
                                            const std::vector<int>& ps, bool clockwise) {
    for (size_t i = 0; i < ps.size(); ++i) {
        bool ok = clockwise ? movable_clockwise(view, k, ps, i)
                            : movable_counterclockwise(view, k, ps, i);
        if (ok)
            return MovableToken{view.order[ps[i]], clockwise};
    }
    return std::nullopt;
}

// Slides of one full clockwise rotation in position space. The start token
// leads; the remaining clusters follow in clockwise order, each emptied from
// its leading (largest-position) end; the start's own cluster mates trail.
std::vector<std::pair<int, int>> rotation_slides_cw(const CycleView& view,
                                                    const std::vector<int>& ps, int start_pos) {
    const int n = view.n;
    std::vector<char> occupied(n, 0);
    for (int p : ps)
        occupied[p] = 1;

    struct Cluster {
        std::vector<int> members; // ascending cyclically from tail to head
        int rel_tail = 0;
    };
    std::vector<Cluster> clusters;
    for (int p : ps) {
        if (occupied[mod(p - 1, n)])
            continue; // not a tail
        Cluster c;
        int q = p;
        while (true) {
            c.members.push_back(q);
            int next = mod(q + 1, n);
            if (!occupied[next])
                break;
            q = next;
        }
        c.rel_tail = mod(p - start_pos, n);
        clusters.push_back(std::move(c));
    }
    if (clusters.empty())
        throw PreconditionError("rotate: cover occupies the whole cycle");

    int start_cluster = -1;
    for (size_t i = 0; i < clusters.size(); ++i)
        if (std::find(clusters[i].members.begin(), clusters[i].members.end(), start_pos) !=
            clusters[i].members.end())
            start_cluster = static_cast<int>(i);
    if (start_cluster < 0 || clusters[start_cluster].members.back() != start_pos)
        throw PreconditionError("rotate: start token cannot lead a clockwise rotation");

    std::vector<std::pair<int, int>> slides;
    slides.reserve(ps.size());
    auto emit = [&](int p) { slides.emplace_back(p, mod(p + 1, n)); };

    emit(start_pos);
    std::vector<int> rest;
    for (size_t i = 0; i < clusters.size(); ++i)
        if (static_cast<int>(i) != start_cluster)
            rest.push_back(static_cast<int>(i));
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        return mod(clusters[a].rel_tail, n) < mod(clusters[b].rel_tail, n);
    });
    for (int ci : rest)
        for (auto it = clusters[ci].members.rbegin(); it != clusters[ci].members.rend(); ++it)
            emit(*it);
    auto& own = clusters[start_cluster].members;
    for (auto it = own.rbegin() + 1; it != own.rend(); ++it)
        emit(*it);
    return slides;
}

} // namespace

std::optional<MovableToken> find_movable_token(const Graph& cycle, int k, const CoverSet& cover) {
    CycleView view = cycle_view(cycle, "find_movable_token");
    std::vector<int> ps = cycle_positions(view, cover);
    if (ps.empty())
        return std::nullopt;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (movable_clockwise(view, k, ps, i))
            return MovableToken{view.order[ps[i]], true};
        if (movable_counterclockwise(view, k, ps, i))
            return MovableToken{view.order[ps[i]], false};
    }
    return std::nullopt;
}

ReconfSequence rotate(const Graph& cycle, int k, const CoverSet& cover, Vertex start,
                      bool clockwise) {
    CycleView view = cycle_view(cycle, "rotate");
    if (!cover.contains(start))
        throw PreconditionError("rotate: start vertex holds no token");
    std::vector<int> ps = cycle_positions(view, cover);
    const int n = view.n;

    auto idx_of = [&](int p) {
        return std::lower_bound(ps.begin(), ps.end(), p) - ps.begin();
    };
    const int start_pos = view.pos[start];
    const size_t si = idx_of(start_pos);
    const bool ok = clockwise ? movable_clockwise(view, k, ps, si)
                              : movable_counterclockwise(view, k, ps, si);
    if (!ok)
        throw PreconditionError("rotate: start token is not movable in the given direction");

    std::vector<std::pair<int, int>> slides;
    if (clockwise) {
        slides = rotation_slides_cw(view, ps, start_pos);
    } else {
        // Reflect positions to reuse the clockwise order, then map back.
        std::vector<int> reflected;
        reflected.reserve(ps.size());
        for (int p : ps)
            reflected.push_back(mod(-p, n));
        std::sort(reflected.begin(), reflected.end());
        for (auto [a, b] : rotation_slides_cw(view, reflected, mod(-start_pos, n)))
            slides.emplace_back(mod(-a, n), mod(-b, n));
    }

    ReconfSequence seq{CoverSet(cover.members, k), {}};
    for (auto [a, b] : slides)
        seq.steps.push_back(Step::slide(view.order[a], view.order[b]));
    return seq;
}

namespace {

struct RawCut {
    Graph path;
    std::vector<Vertex> to_cycle;
};

RawCut cut_at(const CycleView& view, Vertex v) {
    const int n = view.n;
    RawCut cut{Graph::path(n - 1), {}};
    cut.to_cycle.reserve(n - 1);
    const int q = view.pos[v];
    for (int p = 0; p < n - 1; ++p)
        cut.to_cycle.push_back(view.order[mod(q + 1 + p, n)]);
    return cut;
}

CoverSet map_to_path(const RawCut& cut, const CoverSet& cover, int k, Vertex dropped) {
    std::vector<int> of_cycle(cut.to_cycle.size() + 1, -1);
    for (size_t pid = 0; pid < cut.to_cycle.size(); ++pid)
        of_cycle[cut.to_cycle[pid]] = static_cast<int>(pid);
    std::vector<Vertex> members;
    for (Vertex v : cover.members) {
        if (v == dropped)
            continue;
        members.push_back(of_cycle[v]);
    }
    return CoverSet(std::move(members), k);
}

} // namespace

CutInstance cut_cycle(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J, Vertex v) {
    CycleView view = cycle_view(cycle, "cut_cycle");
    if (!I.contains(v) || !J.contains(v))
        throw PreconditionError("cut_cycle: cut vertex " + std::to_string(v) +
                                " must carry a token in both covers");
    RawCut raw = cut_at(view, v);
    CutInstance cut{std::move(raw.path), std::move(raw.to_cycle), {}, {}, v};
    cut.I = map_to_path({cut.path, cut.to_cycle}, I, k, v);
    cut.J = map_to_path({cut.path, cut.to_cycle}, J, k, v);
    return cut;
}

ReconfSequence lift_cut_sequence(const CutInstance& cut, int k, const ReconfSequence& on_path) {
    ReconfSequence lifted;
    std::vector<Vertex> members{cut.cut_vertex};
    for (Vertex pid : on_path.start.members)
        members.push_back(cut.to_cycle[pid]);
    lifted.start = CoverSet(std::move(members), k);
    lifted.steps.reserve(on_path.steps.size());
    for (const Step& s : on_path.steps) {
        Step mapped = s;
        if (mapped.from >= 0)
            mapped.from = cut.to_cycle[mapped.from];
        if (mapped.to >= 0)
            mapped.to = cut.to_cycle[mapped.to];
        lifted.steps.push_back(mapped);
    }
    return lifted;
}

namespace {

// With n = k every vertex alone covers every k-path, so a lone minimum
// token can still move; freezing needs at least two tokens' worth of cycle.
bool frozen_arithmetic(int n, int k, int cover_size) {
    return n >= 2 * k && n % k == 0 && cover_size == n / k;
}

std::vector<Vertex> shared_vertices(const CoverSet& a, const CoverSet& b) {
    std::vector<Vertex> shared;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(shared));
    return shared;
}

struct RotationRun {
    ReconfSequence seq;
    CoverSet final_cover;
};

// Rotates the cover in a fixed direction until it shares a token with
// `target`; at most n-1 full rotations are needed. The running cover is a
// plain one-position shift per round, so it is updated directly.
RotationRun rotate_until_shared(const Graph& cycle, const CycleView& view, int k,
                                const CoverSet& start_cover, const CoverSet& target,
                                bool clockwise) {
    RotationRun run{{CoverSet(start_cover.members, k), {}}, CoverSet(start_cover.members, k)};
    for (int round = 0; shared_vertices(run.final_cover, target).empty(); ++round) {
        if (round >= view.n)
            throw Error("solve_cycle: rotation failed to reach a shared token");
        std::vector<int> ps = cycle_positions(view, run.final_cover);
        auto mv = find_movable_in(view, k, ps, clockwise);
        if (!mv)
            throw Error("solve_cycle: movable token vanished between rotations");
        ReconfSequence turn = rotate(cycle, k, run.final_cover, mv->vertex, clockwise);
        run.seq.steps.insert(run.seq.steps.end(), turn.steps.begin(), turn.steps.end());
        std::vector<Vertex> shifted;
        shifted.reserve(ps.size());
        for (int p : ps)
            shifted.push_back(view.order[mod(p + (clockwise ? 1 : -1), view.n)]);
        run.final_cover = CoverSet(std::move(shifted), k);
    }
    return run;
}

} // namespace

SolveOutcome solve_cycle(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J,
                         Rule rule) {
    if (rule.kind == RuleKind::TAR)
        throw PreconditionError("solve_cycle: use solve_cycle_tar for the tar rule");
    CycleView view = cycle_view(cycle, "solve_cycle");
    require_kpvc(cycle, k, I, "I");
    require_kpvc(cycle, k, J, "J");
    if (I.members == J.members)
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    if (I.size() != J.size())
        return SolveOutcome::no(NoReason::SizeMismatch);

    const int n = view.n;
    RotationRun run{{CoverSet(I.members, k), {}}, CoverSet(I.members, k)};
    if (shared_vertices(I, J).empty()) {
        auto mv = find_movable_token(cycle, k, I);
        const bool frozen = frozen_arithmetic(n, k, I.size());
        if (mv.has_value() == frozen)
            throw Error("solve_cycle: movable-token search contradicts the frozen condition");
        if (!mv)
            return SolveOutcome::no(NoReason::FrozenMinimumCycle);
        run = rotate_until_shared(cycle, view, k, I, J, mv->clockwise);
    }

    Vertex v = shared_vertices(run.final_cover, J).front();
    CutInstance cut = cut_cycle(cycle, k, run.final_cover, J, v);
    SolveOutcome on_path = rule.kind == RuleKind::TS ? solve_path_ts(cut.path, k, cut.I, cut.J)
                                                     : solve_path_tj(cut.path, k, cut.I, cut.J);
    if (!on_path.yes())
        throw Error("solve_cycle: path stage unexpectedly failed");
    ReconfSequence lifted = lift_cut_sequence(cut, k, *on_path.sequence);
    run.seq.steps.insert(run.seq.steps.end(), lifted.steps.begin(), lifted.steps.end());
    return SolveOutcome::yes_with(std::move(run.seq));
}

namespace {

ReconfSequence cycle_equalize_up(const Graph& cycle, int k, const CoverSet& from, int target) {
    ReconfSequence seq{CoverSet(from.members, k), {}};
    CoverSet current = seq.start;
    for (Vertex v = 0; v < cycle.vertex_count() && current.size() < target; ++v)
        if (!current.contains(v)) {
            current.insert(v);
            seq.steps.push_back(Step::add(v));
        }
    return seq;
}

// Cut at `v` (occupied in both given covers' lifted forms is not required
// here) and solve TAR on the resulting path.
SolveOutcome path_tar_through(const CycleView& view, int k, const CoverSet& from,
                              const CoverSet& to, Vertex v, int path_cap,
                              ReconfSequence& lifted_out) {
    RawCut raw = cut_at(view, v);
    CutInstance cut{std::move(raw.path), std::move(raw.to_cycle), {}, {}, v};
    cut.I = map_to_path({cut.path, cut.to_cycle}, from, k, v);
    cut.J = map_to_path({cut.path, cut.to_cycle}, to, k, v);
    SolveOutcome on_path = solve_path_tar(cut.path, k, cut.I, cut.J, path_cap);
    if (on_path.yes())
        lifted_out = lift_cut_sequence(cut, k, *on_path.sequence);
    return on_path;
}

} // namespace

SolveOutcome solve_cycle_tar(const Graph& cycle, int k, const CoverSet& I, const CoverSet& J,
                             int cap) {
    CycleView view = cycle_view(cycle, "solve_cycle_tar");
    require_kpvc(cycle, k, I, "I");
    require_kpvc(cycle, k, J, "J");
    const int n = view.n;

    if (I.members == J.members) {
        if (I.size() > cap)
            return SolveOutcome::no(NoReason::CapacityBlocked);
        return SolveOutcome::yes_with(ReconfSequence{CoverSet(I.members, k), {}}, true);
    }
    if (std::max(I.size(), J.size()) > cap)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    if (n < k) {
        ReconfSequence seq{CoverSet(I.members, k), {}};
        for (auto it = I.members.rbegin(); it != I.members.rend(); ++it)
            seq.steps.push_back(Step::remove(*it));
        for (Vertex v : J.members)
            seq.steps.push_back(Step::add(v));
        return SolveOutcome::yes_with(std::move(seq));
    }

    const int psi = psi_k_closed_form(ShapeKind::Cycle, n, k);
    if (cap == psi)
        return SolveOutcome::no(NoReason::CapacityBlocked);

    const int s = std::max(I.size(), J.size());
    if (cap >= s + 1) {
        ReconfSequence prefix = cycle_equalize_up(cycle, k, I, s);
        ReconfSequence suffix = cycle_equalize_up(cycle, k, J, s);
        CoverSet lhs = prefix.final_state(), rhs = suffix.final_state();

        auto shared = shared_vertices(lhs, rhs);
        ReconfSequence lifted;
        if (!shared.empty()) {
            SolveOutcome on_path =
                path_tar_through(view, k, lhs, rhs, shared.front(), cap - 1, lifted);
            if (!on_path.yes())
                throw Error("solve_cycle_tar: path stage unexpectedly failed");
            return SolveOutcome::yes_with(concat(concat(prefix, lifted), reverse(suffix)));
        }
        if (cap >= s + 2) {
            Vertex fresh = -1;
            for (Vertex v = 0; v < n && fresh < 0; ++v)
                if (!lhs.contains(v) && !rhs.contains(v))
                    fresh = v;
            if (fresh >= 0) {
                ReconfSequence body{CoverSet(lhs.members, k), {}};
                body.steps.push_back(Step::add(fresh));
                SolveOutcome on_path = path_tar_through(view, k, lhs, rhs, fresh, cap - 1, lifted);
                if (!on_path.yes())
                    throw Error("solve_cycle_tar: path stage unexpectedly failed");
                body = concat(body, lifted);
                body.steps.push_back(Step::remove(fresh));
                return SolveOutcome::yes_with(concat(concat(prefix, body), reverse(suffix)));
            }
            // Both covers tile the whole cycle; borrow the smallest target
            // vertex instead of a fresh one.
            Vertex borrow = rhs.members.front();
            ReconfSequence body{CoverSet(lhs.members, k), {}};
            body.steps.push_back(Step::add(borrow));
            SolveOutcome on_path = path_tar_through(view, k, lhs, rhs, borrow, cap - 1, lifted);
            if (!on_path.yes())
                throw Error("solve_cycle_tar: path stage unexpectedly failed");
            body = concat(body, lifted);
            return SolveOutcome::yes_with(concat(concat(prefix, body), reverse(suffix)));
        }
        // cap == s+1 with disjoint covers: rotation is the only way in.
        auto mv = find_movable_token(cycle, k, lhs);
        const bool frozen = frozen_arithmetic(n, k, lhs.size());
        if (mv.has_value() == frozen)
            throw Error("solve_cycle_tar: movable-token search contradicts the frozen condition");
        if (!mv)
            return SolveOutcome::no(NoReason::FrozenMinimumCycle);
        RotationRun rot = rotate_until_shared(cycle, view, k, lhs, rhs, mv->clockwise);
        ReconfSequence rot_tar = tj_to_tar(cycle, k, rot.seq);
        Vertex v = shared_vertices(rot.final_cover, rhs).front();
        SolveOutcome on_path = path_tar_through(view, k, rot.final_cover, rhs, v, cap - 1, lifted);
        if (!on_path.yes())
            throw Error("solve_cycle_tar: path stage unexpectedly failed");
        ReconfSequence body = concat(rot_tar, lifted);
        return SolveOutcome::yes_with(concat(concat(prefix, body), reverse(suffix)));
    }

    // cap == s > psi: both size-s endpoints must shed a token, and the
    // reduced covers must be jump-reconfigurable on the cycle.
    auto lowering_choices = [&](const CoverSet& side) {
        std::vector<ReconfSequence> choices;
        if (side.size() < s) {
            choices.push_back(cycle_equalize_up(cycle, k, side, s - 1));
            return choices;
        }
        for (Vertex v : side.members) {
            CoverSet reduced = side;
            reduced.erase(v);
            if (is_kpvc(cycle, k, reduced.members)) {
                ReconfSequence seq{CoverSet(side.members, k), {}};
                seq.steps.push_back(Step::remove(v));
                choices.push_back(std::move(seq));
            }
        }
        return choices;
    };
    std::vector<ReconfSequence> lhs_choices = lowering_choices(I);
    std::vector<ReconfSequence> rhs_choices = lowering_choices(J);
    if (lhs_choices.empty() || rhs_choices.empty())
        return SolveOutcome::no(NoReason::NoRemovableToken);
    for (const ReconfSequence& pre : lhs_choices)
        for (const ReconfSequence& post : rhs_choices) {
            SolveOutcome core =
                solve_cycle(cycle, k, pre.final_state(), post.final_state(), Rule::tj());
            if (!core.yes())
                continue;
            ReconfSequence tar_core = tj_to_tar(cycle, k, *core.sequence);
            return SolveOutcome::yes_with(concat(concat(pre, tar_core), reverse(post)));
        }
    return SolveOutcome::no(NoReason::FrozenMinimumCycle);
}

TjDetourInstance hard_shortest_tj_family(int k) {
    if (k < 3)
        throw PreconditionError("hard_shortest_tj_family: needs k >= 3");
    const int n = 3 * k - 1;
    TjDetourInstance inst{Graph::cycle(n), k, CoverSet({0, k, 2 * k}, k),
                         CoverSet({k - 2, 2 * k - 2, 3 * k - 2}, k), {}};
    inst.witness.start = inst.I;
    inst.witness.steps = {
        Step::jump(2 * k, 2 * k - 1), Step::jump(k, k - 1),
        Step::jump(0, 3 * k - 2),     Step::jump(2 * k - 1, 2 * k - 2),
        Step::jump(k - 1, k - 2),
    };
    return inst;
}

} // namespace kpvcr
