#include "kpvcr/reconfig.hpp"

#include <algorithm>
#include <cstdint>

namespace kpvcr {

const char* to_string(RuleKind kind) {
    switch (kind) {
    case RuleKind::TS: return "ts";
    case RuleKind::TJ: return "tj";
    case RuleKind::TAR: return "tar";
    }
    return "?";
}

const char* to_string(NoReason reason) {
    switch (reason) {
    case NoReason::SizeMismatch: return "SizeMismatch";
    case NoReason::FrozenMinimumCycle: return "FrozenMinimumCycle";
    case NoReason::CapacityBlocked: return "CapacityBlocked";
    case NoReason::NoRemovableToken: return "NoRemovableToken";
    }
    return "?";
}

Step Step::inverted() const {
    switch (kind) {
    case Kind::Slide: return slide(to, from);
    case Kind::Jump: return jump(to, from);
    case Kind::Add: return remove(to);
    case Kind::Remove: return add(from);
    }
    return *this;
}

namespace {

void apply_step(CoverSet& state, const Step& s) {
    switch (s.kind) {
    case Step::Kind::Slide:
    case Step::Kind::Jump:
        if (!state.contains(s.from))
            throw PreconditionError("step moves a token from unoccupied vertex " +
                                    std::to_string(s.from));
        if (state.contains(s.to))
            throw PreconditionError("step moves a token onto occupied vertex " +
                                    std::to_string(s.to));
        state.erase(s.from);
        state.insert(s.to);
        break;
    case Step::Kind::Add:
        if (state.contains(s.to))
            throw PreconditionError("step adds a token to occupied vertex " +
                                    std::to_string(s.to));
        state.insert(s.to);
        break;
    case Step::Kind::Remove:
        if (!state.contains(s.from))
            throw PreconditionError("step removes a token from unoccupied vertex " +
                                    std::to_string(s.from));
        state.erase(s.from);
        break;
    }
}

std::string describe(const Step& s) {
    switch (s.kind) {
    case Step::Kind::Slide:
        return "slide " + std::to_string(s.from) + " " + std::to_string(s.to);
    case Step::Kind::Jump:
        return "jump " + std::to_string(s.from) + " " + std::to_string(s.to);
    case Step::Kind::Add:
        return "add " + std::to_string(s.to);
    case Step::Kind::Remove:
        return "remove " + std::to_string(s.from);
    }
    return "?";
}

VerifyResult fail(int step, std::string msg) {
    return {false, step, std::move(msg)};
}

std::optional<std::string> cover_violation(const Graph& g, int k, const CoverSet& c) {
    std::vector<bool> blocked(g.vertex_count(), false);
    for (Vertex v : c.members) {
        if (!g.is_vertex(v))
            return "vertex " + std::to_string(v) + " out of range";
        blocked[v] = true;
    }
    if (auto witness = find_uncovered_k_path(g, k, blocked)) {
        std::string msg = "uncovered " + std::to_string(k) + "-path [";
        for (size_t i = 0; i < witness->size(); ++i)
            msg += (i ? " " : "") + std::to_string((*witness)[i]);
        return msg + "]";
    }
    return std::nullopt;
}

} // namespace

CoverSet ReconfSequence::final_state() const {
    CoverSet state = start;
    for (const Step& s : steps)
        apply_step(state, s);
    return state;
}

std::vector<CoverSet> ReconfSequence::states() const {
    std::vector<CoverSet> all;
    all.reserve(steps.size() + 1);
    all.push_back(start);
    for (const Step& s : steps) {
        all.push_back(all.back());
        apply_step(all.back(), s);
    }
    return all;
}

VerifyResult verify(const Graph& g, int k, Rule rule, const ReconfSequence& seq,
                    const CoverSet& target) {
    CoverSet state = seq.start;
    if (auto bad = cover_violation(g, k, state))
        return fail(-1, "start state: " + *bad);
    if (rule.kind == RuleKind::TAR && state.size() > rule.cap)
        return fail(-1, "capacity exceeded at start: " + std::to_string(state.size()) + " > " +
                            std::to_string(rule.cap));

    for (int i = 0; i < seq.length(); ++i) {
        const Step& s = seq.steps[i];
        const std::string at = "step " + std::to_string(i) + " (" + describe(s) + "): ";
        const bool is_move = s.kind == Step::Kind::Slide || s.kind == Step::Kind::Jump;
        switch (rule.kind) {
        case RuleKind::TS:
            if (!is_move)
                return fail(i, at + "add/remove not allowed under ts");
            if (!g.has_edge(s.from, s.to))
                return fail(i, at + "non-adjacent slide");
            break;
        case RuleKind::TJ:
            if (!is_move)
                return fail(i, at + "add/remove not allowed under tj");
            if (s.from == s.to)
                return fail(i, at + "jump must change vertex");
            break;
        case RuleKind::TAR:
            if (is_move)
                return fail(i, at + "token moves not allowed under tar");
            break;
        }
        try {
            apply_step(state, s);
        } catch (const PreconditionError& e) {
            return fail(i, at + e.what());
        }
        if (rule.kind == RuleKind::TAR && state.size() > rule.cap)
            return fail(i, "capacity exceeded at step " + std::to_string(i) + ": " +
                               std::to_string(state.size()) + " > " + std::to_string(rule.cap));
        if (auto bad = cover_violation(g, k, state))
            return fail(i, at + *bad);
    }
    if (!(state.members == target.members))
        return fail(-1, "final state does not equal the target cover");
    return {true, -1, ""};
}

ReconfSequence reverse(const ReconfSequence& seq) {
    ReconfSequence rev;
    rev.start = seq.final_state();
    rev.steps.reserve(seq.steps.size());
    for (auto it = seq.steps.rbegin(); it != seq.steps.rend(); ++it)
        rev.steps.push_back(it->inverted());
    return rev;
}

ReconfSequence concat(const ReconfSequence& s1, const ReconfSequence& s2) {
    if (!(s1.final_state().members == s2.start.members))
        throw PreconditionError("concat: first sequence does not end at the second's start");
    ReconfSequence out = s1;
    out.steps.insert(out.steps.end(), s2.steps.begin(), s2.steps.end());
    return out;
}

ReconfSequence tj_to_tar(const Graph& g, int k, const ReconfSequence& seq) {
    if (auto check = verify(g, k, Rule::tj(), seq, seq.final_state()); !check)
        throw PreconditionError(std::string("tj_to_tar: input is not a valid tj-sequence: ") +
                                check.message);
    ReconfSequence out;
    out.start = seq.start;
    out.steps.reserve(2 * seq.steps.size());
    for (const Step& s : seq.steps) {
        out.steps.push_back(Step::add(s.to));
        out.steps.push_back(Step::remove(s.from));
    }
    return out;
}

ReconfSequence tar_to_tj(const Graph& g, int k, const ReconfSequence& seq) {
    const int s = seq.start.size();
    CoverSet last = seq.final_state();
    if (last.size() != s)
        throw PreconditionError("tar_to_tj: endpoints have sizes " + std::to_string(s) + " and " +
                                std::to_string(last.size()));
    if (auto check = verify(g, k, Rule::tar(s + 1), seq, last); !check)
        throw PreconditionError(std::string("tar_to_tj: input is not a valid tar(s+1)-sequence: ") +
                                check.message);

    struct Op {
        bool is_add;
        Vertex v;
    };
    std::vector<Op> ops;
    ops.reserve(seq.steps.size());
    for (const Step& st : seq.steps)
        ops.push_back(st.kind == Step::Kind::Add ? Op{true, st.to} : Op{false, st.from});

    // Normalization loop: locate the first removal that drops the running
    // size below s, pair it with the next addition; cancel them when they
    // touch the same vertex, otherwise perform the addition first.
    for (;;) {
        int size = s;
        int removal = -1;
        for (size_t i = 0; i < ops.size(); ++i) {
            size += ops[i].is_add ? 1 : -1;
            if (!ops[i].is_add && size == s - 1) {
                removal = static_cast<int>(i);
                break;
            }
        }
        if (removal < 0)
            break;
        int addition = -1;
        for (size_t i = removal + 1; i < ops.size(); ++i)
            if (ops[i].is_add) {
                addition = static_cast<int>(i);
                break;
            }
        if (addition < 0)
            throw PreconditionError("tar_to_tj: sequence ends below the endpoint size");
        if (ops[removal].v == ops[addition].v) {
            ops.erase(ops.begin() + addition);
            ops.erase(ops.begin() + removal);
        } else {
            Op add = ops[addition];
            ops.erase(ops.begin() + addition);
            ops.insert(ops.begin() + removal, add);
        }
    }

    // Normal form alternates add(y), remove(x) at levels s and s+1.
    ReconfSequence out;
    out.start = seq.start;
    if (ops.size() % 2 != 0)
        throw PreconditionError("tar_to_tj: normalization left an unpaired operation");
    for (size_t i = 0; i < ops.size(); i += 2) {
        if (!ops[i].is_add || ops[i + 1].is_add)
            throw PreconditionError("tar_to_tj: normalization failed to alternate add/remove");
        if (ops[i].v != ops[i + 1].v)
            out.steps.push_back(Step::jump(ops[i + 1].v, ops[i].v));
    }
    return out;
}

} // namespace kpvcr
