#include <doctest.h>

#include "kpvcr/cycle_solver.hpp"
#include "kpvcr/oracle.hpp"
#include "kpvcr/path_solver.hpp"
#include "test_support.hpp"

using namespace kpvcr;
using kpvcr::testing::Rng;

TEST_CASE("movable token detection") {
    Graph c6 = Graph::cycle(6);
    CHECK_FALSE(find_movable_token(c6, 3, CoverSet({0, 3}, 3)).has_value()); // frozen

    Graph c7 = Graph::cycle(7);
    auto mv = find_movable_token(c7, 3, CoverSet({0, 2, 4}, 3));
    REQUIRE(mv.has_value());
    // The slide it names must keep the cover valid.
    CoverSet after({0, 2, 4}, 3);
    after.erase(mv->vertex);
    int n = 7;
    after.insert(mv->clockwise ? (mv->vertex + 1) % n : (mv->vertex + n - 1) % n);
    CHECK(is_kpvc(c7, after));

    auto oversized = find_movable_token(c6, 3, CoverSet({0, 1, 3}, 3));
    CHECK(oversized.has_value());
}

TEST_CASE("movable token exists exactly when the frozen condition fails") {
    for (int n = 3; n <= 10; ++n) {
        Graph c = Graph::cycle(n);
        for (int k = 2; k <= 4; ++k) {
            for (const CoverSet& cover : enumerate_covers(c, k, 1, n - 1)) {
                // With n = k a lone token covers everything wherever it
                // sits, so only multi-token tilings can freeze.
                bool frozen = n >= 2 * k && n % k == 0 && cover.size() == n / k;
                CHECK(find_movable_token(c, k, cover).has_value() == !frozen);
            }
        }
    }
}

TEST_CASE("rotation shifts every token one step") {
    Graph c7 = Graph::cycle(7);
    CoverSet cover({0, 2, 4}, 3);
    ReconfSequence seq = rotate(c7, 3, cover, 2, true);
    CHECK(seq.length() == 3);
    CHECK(seq.final_state().members == std::vector<Vertex>{1, 3, 5});
    CHECK(verify(c7, 3, Rule::ts(), seq, CoverSet({1, 3, 5}, 3)).ok);
}

namespace {

// First token that can lead a rotation in the given direction.
ReconfSequence rotate_somehow(const Graph& c, int k, const CoverSet& cover, bool clockwise) {
    for (Vertex v : cover.members) {
        try {
            return rotate(c, k, cover, v, clockwise);
        } catch (const PreconditionError&) {
        }
    }
    throw PreconditionError("no token can lead the rotation");
}

} // namespace

TEST_CASE("rotating back and forth is the identity") {
    Graph c7 = Graph::cycle(7);
    CoverSet cover({0, 2, 4}, 3);
    CoverSet cur = cover;
    for (int step = 0; step < 2; ++step)
        cur = rotate_somehow(c7, 3, cur, true).final_state();
    CHECK(cur.members == std::vector<Vertex>{2, 4, 6});
    for (int step = 0; step < 2; ++step)
        cur = rotate_somehow(c7, 3, cur, false).final_state();
    CHECK(cur.members == cover.members);
}

TEST_CASE("rotation refuses a frozen start") {
    Graph c6 = Graph::cycle(6);
    CHECK_THROWS_AS(rotate(c6, 3, CoverSet({0, 3}, 3), 0, true), PreconditionError);
}

TEST_CASE("rotation handles consecutive token runs") {
    // Token 0 is movable clockwise, but the run {2,3} must move from its
    // leading end before token 2 can advance.
    Graph c8 = Graph::cycle(8);
    CoverSet cover({0, 2, 3, 6}, 3);
    REQUIRE(is_kpvc(c8, cover));
    ReconfSequence seq = rotate(c8, 3, cover, 0, true);
    CHECK(seq.length() == 4);
    CHECK(seq.final_state().members == std::vector<Vertex>{1, 3, 4, 7});
    CHECK(verify(c8, 3, Rule::ts(), seq, seq.final_state()).ok);
}

TEST_CASE("cutting a cycle at a shared token") {
    Graph c7 = Graph::cycle(7);
    CoverSet I({0, 2, 4}, 3), J({0, 3, 5}, 3);
    CutInstance cut = cut_cycle(c7, 3, I, J, 0);
    CHECK(cut.path.vertex_count() == 6);
    CHECK(cut.to_cycle == std::vector<Vertex>{1, 2, 3, 4, 5, 6});
    CHECK(cut.I.members == std::vector<Vertex>{1, 3});
    CHECK(cut.J.members == std::vector<Vertex>{2, 4});

    CHECK_THROWS_AS(cut_cycle(c7, 3, I, J, 2), PreconditionError); // 2 only in I
}

TEST_CASE("lifted sequences keep the cut vertex and stay valid") {
    Graph c7 = Graph::cycle(7);
    CoverSet I({0, 2, 4}, 3), J({0, 3, 5}, 3);
    CutInstance cut = cut_cycle(c7, 3, I, J, 0);
    SolveOutcome on_path = solve_path_tj(cut.path, 3, cut.I, cut.J);
    REQUIRE(on_path.yes());
    ReconfSequence lifted = lift_cut_sequence(cut, 3, *on_path.sequence);
    CHECK(lifted.length() == on_path.sequence->length());
    CHECK(verify(c7, 3, Rule::tj(), lifted, J).ok);
    for (const CoverSet& state : lifted.states())
        CHECK(state.contains(0));
}

TEST_CASE("cycle ts/tj solver on hand-checked instances") {
    Graph c6 = Graph::cycle(6);
    SolveOutcome frozen = solve_cycle(c6, 3, CoverSet({0, 3}, 3), CoverSet({1, 4}, 3), Rule::tj());
    CHECK_FALSE(frozen.yes());
    CHECK(frozen.no_reason == NoReason::FrozenMinimumCycle);

    Graph c7 = Graph::cycle(7);
    CoverSet I({0, 2, 4}, 3), J({1, 3, 5}, 3);
    SolveOutcome ts = solve_cycle(c7, 3, I, J, Rule::ts());
    REQUIRE(ts.yes());
    CHECK(verify(c7, 3, Rule::ts(), *ts.sequence, J).ok);
    CHECK(oracle_reachable(c7, 3, Rule::ts(), I, J).reachable);

    CHECK(solve_cycle(c7, 3, I, I, Rule::tj()).trivial);
    CHECK(solve_cycle(c7, 3, I, CoverSet({0, 1, 2, 4}, 3), Rule::tj()).no_reason ==
          NoReason::SizeMismatch);
}

TEST_CASE("cycle solver handles disjoint covers with runs") {
    Graph c8 = Graph::cycle(8);
    CoverSet I({0, 2, 3, 6}, 3), J({1, 4, 5, 7}, 3);
    REQUIRE(is_kpvc(c8, I));
    REQUIRE(is_kpvc(c8, J));
    for (Rule rule : {Rule::ts(), Rule::tj()}) {
        SolveOutcome out = solve_cycle(c8, 3, I, J, rule);
        REQUIRE(out.yes());
        CHECK(verify(c8, 3, rule, *out.sequence, J).ok);
    }
}

TEST_CASE("cycle solver matches the oracle on small instances") {
    Rng rng(808);
    for (int n = 3; n <= 9; ++n) {
        Graph c = Graph::cycle(n);
        for (int k = 2; k <= 3; ++k) {
            auto covers = enumerate_covers(c, k, 0, n);
            for (const CoverSet& I : covers)
                for (const CoverSet& J : covers) {
                    if (I.size() != J.size())
                        continue;
                    for (Rule rule : {Rule::ts(), Rule::tj()}) {
                        SolveOutcome out = solve_cycle(c, k, I, J, rule);
                        ReachResult truth = oracle_reachable(c, k, rule, I, J);
                        CHECK(out.yes() == truth.reachable);
                        if (out.yes())
                            CHECK(verify(c, k, rule, *out.sequence, J).ok);
                    }
                }
        }
    }
}

TEST_CASE("cycle tar on hand-checked instances") {
    Graph c6 = Graph::cycle(6);
    CoverSet I({0, 3}, 3), J({1, 4}, 3);

    SolveOutcome no = solve_cycle_tar(c6, 3, I, J, 3); // cap = s+1 but frozen
    CHECK_FALSE(no.yes());
    CHECK(no.no_reason == NoReason::FrozenMinimumCycle);
    CHECK_FALSE(oracle_reachable(c6, 3, Rule::tar(3), I, J).reachable);

    SolveOutcome yes = solve_cycle_tar(c6, 3, I, J, 4); // cap >= s+2
    REQUIRE(yes.yes());
    CHECK(verify(c6, 3, Rule::tar(4), *yes.sequence, J).ok);
    CHECK(oracle_reachable(c6, 3, Rule::tar(4), I, J).reachable);

    CHECK(solve_cycle_tar(c6, 3, I, I, 2).trivial);
}

TEST_CASE("cycle tar matches the oracle across caps") {
    for (int n = 3; n <= 8; ++n) {
        Graph c = Graph::cycle(n);
        for (int k = 2; k <= 3; ++k) {
            auto covers = enumerate_covers(c, k, 0, n);
            const int psi = psi_k_closed_form(ShapeKind::Cycle, n, k);
            for (int cap = psi; cap <= n; ++cap) {
                ReconfGraph rg = ReconfGraph::build(c, k, Rule::tar(cap), 0);
                for (const CoverSet& I : covers) {
                    if (I.size() > cap)
                        continue;
                    auto dist = rg.bfs_distances(*rg.index_of(I));
                    for (const CoverSet& J : covers) {
                        if (J.size() > cap)
                            continue;
                        bool reachable = dist[*rg.index_of(J)] >= 0;
                        SolveOutcome out = solve_cycle_tar(c, k, I, J, cap);
                        CHECK(out.yes() == reachable);
                        if (out.yes())
                            CHECK(verify(c, k, Rule::tar(cap), *out.sequence, J).ok);
                    }
                }
            }
        }
    }
}

TEST_CASE("hard shortest-tj family") {
    TjDetourInstance inst = hard_shortest_tj_family(3);
    CHECK(inst.cycle.vertex_count() == 8);
    CHECK(inst.I.members == std::vector<Vertex>{0, 3, 6});
    CHECK(inst.J.members == std::vector<Vertex>{1, 4, 7});
    CHECK(is_kpvc(inst.cycle, inst.I));
    CHECK(is_kpvc(inst.cycle, inst.J));

    CHECK(inst.witness.length() == 5);
    CHECK(verify(inst.cycle, 3, Rule::tj(), inst.witness, inst.J).ok);

    // At k = 3 the first detour is not forced: jumping 0 onto 1 leaves runs
    // of length at most two, so the lower bound |I delta J|/2 = 3 is met.
    ReachResult truth = oracle_reachable(inst.cycle, 3, Rule::tj(), inst.I, inst.J);
    REQUIRE(truth.reachable);
    CHECK(*truth.shortest == 3);

    // From k = 4 on, no token can reach a target directly and the shortest
    // sequence genuinely exceeds the lower bound.
    TjDetourInstance k4 = hard_shortest_tj_family(4);
    CHECK(k4.cycle.vertex_count() == 11);
    CHECK(verify(k4.cycle, 4, Rule::tj(), k4.witness, k4.J).ok);
    ReachResult truth4 = oracle_reachable(k4.cycle, 4, Rule::tj(), k4.I, k4.J);
    REQUIRE(truth4.reachable);
    CHECK(*truth4.shortest > 3);
    CHECK(*truth4.shortest == 5);

    CHECK_THROWS_AS(hard_shortest_tj_family(2), PreconditionError);
}
