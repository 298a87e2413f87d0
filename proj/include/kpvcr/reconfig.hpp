#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpvcr/cover.hpp"
#include "kpvcr/graph.hpp"

namespace kpvcr {

enum class RuleKind { TS, TJ, TAR };

struct Rule {
    RuleKind kind = RuleKind::TJ;
    int cap = 0; // TAR only: maximum cover size along the sequence

    static Rule ts() { return {RuleKind::TS, 0}; }
    static Rule tj() { return {RuleKind::TJ, 0}; }
    static Rule tar(int cap) { return {RuleKind::TAR, cap}; }

    bool operator==(const Rule&) const = default;
};

const char* to_string(RuleKind kind);

// One reconfiguration step with explicit vertices, so TS adjacency is
// checkable and diagnostics can name the offending move.
struct Step {
    enum class Kind { Slide, Jump, Add, Remove };
    Kind kind;
    Vertex from = -1; // Slide/Jump source; Remove target
    Vertex to = -1;   // Slide/Jump destination; Add target

    static Step slide(Vertex from, Vertex to) { return {Kind::Slide, from, to}; }
    static Step jump(Vertex from, Vertex to) { return {Kind::Jump, from, to}; }
    static Step add(Vertex v) { return {Kind::Add, -1, v}; }
    static Step remove(Vertex v) { return {Kind::Remove, v, -1}; }

    Step inverted() const;

    bool operator==(const Step&) const = default;
};

// An ordered sequence of cover sets, stored as a start state plus steps.
// Length is the number of steps.
struct ReconfSequence {
    CoverSet start;
    std::vector<Step> steps;

    int length() const { return static_cast<int>(steps.size()); }

    // Applies all steps structurally (throws PreconditionError when a step
    // does not make sense against the running state, e.g. removing an
    // absent token). No covering checks; that is verify()'s job.
    CoverSet final_state() const;
    std::vector<CoverSet> states() const;

    bool operator==(const ReconfSequence&) const = default;
};

struct VerifyResult {
    bool ok = false;
    // Index of the first failing step, -1 for failures at the start state
    // or the final-target comparison.
    int failed_step = -1;
    std::string message;

    explicit operator bool() const { return ok; }
};

// Checks that every state is a k-path vertex cover, every step matches the
// rule (TS additionally requires adjacency, TAR enforces the capacity at
// every state), and the final state equals `target`.
VerifyResult verify(const Graph& g, int k, Rule rule, const ReconfSequence& seq,
                    const CoverSet& target);

ReconfSequence reverse(const ReconfSequence& seq);
// Requires s1's final state to equal s2's start.
ReconfSequence concat(const ReconfSequence& s1, const ReconfSequence& s2);

// Expands each jump x->y into add(y), remove(x). Input must verify under TJ
// (slides count as jumps); output verifies under TAR(s+1) with length 2*l
// where s is the uniform state size.
ReconfSequence tj_to_tar(const Graph& g, int k, const ReconfSequence& seq);

// Normalizes a TAR(s+1) sequence between two size-s covers so that every
// state has size s or s+1 (pairing each below-s removal with the next
// addition, cancelling redundant remove/add of the same vertex), then folds
// the add/remove pairs into jumps. Output length is at most half the input.
ReconfSequence tar_to_tj(const Graph& g, int k, const ReconfSequence& seq);

enum class NoReason { SizeMismatch, FrozenMinimumCycle, CapacityBlocked, NoRemovableToken };

const char* to_string(NoReason reason);

struct SolveOutcome {
    std::optional<ReconfSequence> sequence; // engaged iff the answer is Yes
    std::optional<NoReason> no_reason;
    bool trivial = false; // I == J, answered with the empty sequence

    bool yes() const { return sequence.has_value(); }

    static SolveOutcome yes_with(ReconfSequence seq, bool trivial = false) {
        SolveOutcome o;
        o.sequence = std::move(seq);
        o.trivial = trivial;
        return o;
    }
    static SolveOutcome no(NoReason reason) {
        SolveOutcome o;
        o.no_reason = reason;
        return o;
    }
};

} // namespace kpvcr
