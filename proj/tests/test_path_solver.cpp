#include <doctest.h>

#include "kpvcr/oracle.hpp"
#include "kpvcr/path_solver.hpp"
#include "test_support.hpp"

using namespace kpvcr;
using kpvcr::testing::Rng;

TEST_CASE("path tj follows the rightmost-difference schedule") {
    Graph g = Graph::path(6);
    SolveOutcome out = solve_path_tj(g, 3, CoverSet({1, 4}, 3), CoverSet({2, 5}, 3));
    REQUIRE(out.yes());
    CHECK(out.sequence->length() == 2);
    auto states = out.sequence->states();
    REQUIRE(states.size() == 3);
    CHECK(states[0].members == std::vector<Vertex>{1, 4});
    CHECK(states[1].members == std::vector<Vertex>{2, 4});
    CHECK(states[2].members == std::vector<Vertex>{2, 5});
    CHECK(verify(g, 3, Rule::tj(), *out.sequence, CoverSet({2, 5}, 3)).ok);
}

TEST_CASE("path tj trivial and mismatch cases") {
    Graph g = Graph::path(6);
    SolveOutcome same = solve_path_tj(g, 3, CoverSet({1, 4}, 3), CoverSet({1, 4}, 3));
    CHECK(same.yes());
    CHECK(same.trivial);
    CHECK(same.sequence->length() == 0);

    SolveOutcome no = solve_path_tj(g, 3, CoverSet({1, 4}, 3), CoverSet({0, 2, 4}, 3));
    CHECK_FALSE(no.yes());
    CHECK(no.no_reason == NoReason::SizeMismatch);

    CHECK_THROWS_AS(solve_path_tj(g, 3, CoverSet({0}, 3), CoverSet({1, 4}, 3)),
                    InvalidCoverError);
    CHECK_THROWS_AS(solve_path_tj(Graph::cycle(5), 3, CoverSet({0, 2}, 3), CoverSet({1, 3}, 3)),
                    PreconditionError);
}

TEST_CASE("path tj length always equals half the symmetric difference") {
    Rng rng(404);
    for (int round = 0; round < 40; ++round) {
        const int n = 3 + round % 9;
        const int k = 2 + round % 3;
        Graph g = Graph::path(n);
        auto covers = enumerate_covers(g, k, 0, n);
        std::uniform_int_distribution<size_t> pick(0, covers.size() - 1);
        const CoverSet& I = covers[pick(rng)];
        for (const CoverSet& J : covers) {
            if (J.size() != I.size())
                continue;
            SolveOutcome out = solve_path_tj(g, k, I, J);
            REQUIRE(out.yes());
            std::vector<Vertex> diff;
            std::set_symmetric_difference(I.members.begin(), I.members.end(), J.members.begin(),
                                          J.members.end(), std::back_inserter(diff));
            CHECK(out.sequence->length() == static_cast<int>(diff.size()) / 2);
            CHECK(verify(g, k, Rule::tj(), *out.sequence, J).ok);
        }
    }
}

TEST_CASE("push slides a token, displacing blockers first") {
    Graph p4 = Graph::path(4);
    ReconfSequence one = push(p4, 3, CoverSet({1}, 3), 1, 2);
    CHECK(one.steps == std::vector<Step>{Step::slide(1, 2)});

    Graph p5 = Graph::path(5);
    ReconfSequence chain = push(p5, 3, CoverSet({1, 2}, 3), 1, 2);
    CHECK(chain.steps == std::vector<Step>{Step::slide(2, 3), Step::slide(1, 2)});
    CHECK(verify(p5, 3, Rule::ts(), chain, CoverSet({2, 3}, 3)).ok);

    CHECK_THROWS_AS(push(p5, 3, CoverSet({0}, 3), 0, 4), PreconditionError); // j > i+k
    CHECK_THROWS_AS(push(p5, 3, CoverSet({1}, 3), 2, 3), PreconditionError); // no token at i
}

TEST_CASE("push keeps every intermediate state a cover") {
    // One block move: the run {1,2,3} shifts right as a unit.
    Graph g = Graph::path(8);
    CoverSet cover({1, 2, 3, 6}, 3);
    REQUIRE(is_kpvc(g, cover));
    ReconfSequence seq = push(g, 3, cover, 1, 2);
    CHECK(seq.final_state().members == std::vector<Vertex>{2, 3, 4, 6});
    CHECK(verify(g, 3, Rule::ts(), seq, seq.final_state()).ok);
}

TEST_CASE("push refuses moves that would strand the stretch behind") {
    // Vacating position 2 with nothing behind it leaves [0,1,2] bare.
    Graph g = Graph::path(9);
    CHECK_THROWS_AS(push(g, 3, CoverSet({2, 3, 4, 7}, 3), 2, 3), PreconditionError);
    CHECK_THROWS_AS(push(Graph::path(6), 3, CoverSet({2, 5}, 3), 2, 3), PreconditionError);
}

TEST_CASE("path ts on hand-checked instances") {
    Graph p7 = Graph::path(7);
    SolveOutcome out = solve_path_ts(p7, 3, CoverSet({2, 5}, 3), CoverSet({1, 4}, 3));
    REQUIRE(out.yes());
    CHECK(out.sequence->length() == 2);
    CHECK(verify(p7, 3, Rule::ts(), *out.sequence, CoverSet({1, 4}, 3)).ok);

    Graph p4 = Graph::path(4);
    SolveOutcome single = solve_path_ts(p4, 3, CoverSet({2}, 3), CoverSet({1}, 3));
    REQUIRE(single.yes());
    CHECK(single.sequence->steps == std::vector<Step>{Step::slide(2, 1)});

    CHECK(solve_path_ts(p4, 3, CoverSet({2}, 3), CoverSet({2}, 3)).trivial);
}

TEST_CASE("path ts length equals the rank-matched distance sum") {
    Rng rng(405);
    for (int round = 0; round < 30; ++round) {
        const int n = 3 + round % 8;
        const int k = 2 + round % 3;
        Graph g = Graph::path(n);
        auto covers = enumerate_covers(g, k, 0, n);
        std::uniform_int_distribution<size_t> pick(0, covers.size() - 1);
        const CoverSet& I = covers[pick(rng)];
        for (const CoverSet& J : covers) {
            if (J.size() != I.size())
                continue;
            SolveOutcome out = solve_path_ts(g, k, I, J);
            REQUIRE(out.yes());
            int expected = 0;
            for (int p = 0; p < I.size(); ++p)
                expected += std::abs(I.members[p] - J.members[p]);
            CHECK(out.sequence->length() == expected);
            CHECK(verify(g, k, Rule::ts(), *out.sequence, J).ok);
        }
    }
}

TEST_CASE("path tar on hand-checked instances") {
    Graph p6 = Graph::path(6);
    CoverSet I({1, 4}, 3), J({2, 5}, 3);

    SolveOutcome yes = solve_path_tar(p6, 3, I, J, 3);
    REQUIRE(yes.yes());
    CHECK(yes.sequence->length() == 4);
    CHECK(verify(p6, 3, Rule::tar(3), *yes.sequence, J).ok);

    SolveOutcome no = solve_path_tar(p6, 3, I, J, 2); // cap = psi_3(P6)
    CHECK_FALSE(no.yes());
    CHECK(no.no_reason == NoReason::CapacityBlocked);

    CHECK(solve_path_tar(p6, 3, I, I, 2).trivial);
}

TEST_CASE("path tar at cap = s needs removable tokens on both sides") {
    Graph p8 = Graph::path(8);
    // size 3 > psi_3(P8) = 2, cap 3: both covers can shed a token.
    CoverSet I({1, 2, 5}, 3), J({2, 4, 5}, 3);
    REQUIRE(is_kpvc(p8, I));
    REQUIRE(is_kpvc(p8, J));
    SolveOutcome yes = solve_path_tar(p8, 3, I, J, 3);
    REQUIRE(yes.yes());
    CHECK(verify(p8, 3, Rule::tar(3), *yes.sequence, J).ok);
    CHECK(oracle_reachable(p8, 3, Rule::tar(3), I, J).reachable);

    // {1,4,6} is irredundant: no single removal keeps a cover.
    CoverSet stuck({1, 4, 6}, 3);
    REQUIRE(is_kpvc(p8, stuck));
    SolveOutcome no = solve_path_tar(p8, 3, I, stuck, 3);
    CHECK_FALSE(no.yes());
    CHECK(no.no_reason == NoReason::NoRemovableToken);
    CHECK_FALSE(oracle_reachable(p8, 3, Rule::tar(3), I, stuck).reachable);
}

TEST_CASE("path tar with no k-path at all") {
    Graph p2 = Graph::path(2);
    SolveOutcome out = solve_path_tar(p2, 3, CoverSet({0}, 3), CoverSet({1}, 3), 1);
    REQUIRE(out.yes());
    CHECK(verify(p2, 3, Rule::tar(1), *out.sequence, CoverSet({1}, 3)).ok);
    CHECK_FALSE(solve_path_tar(p2, 3, CoverSet({0, 1}, 3), CoverSet({1}, 3), 1).yes());
}

TEST_CASE("token removability matches the direct cover check") {
    for (int n = 2; n <= 12; ++n) {
        Graph g = Graph::path(n);
        for (int k = 2; k <= 4; ++k) {
            for (const CoverSet& c : enumerate_covers(g, k, 1, n)) {
                for (int rank = 0; rank < c.size(); ++rank) {
                    CoverSet reduced = c;
                    reduced.erase(c.members[rank]);
                    CHECK(path_token_removable(n, k, c.members, rank) ==
                          is_kpvc(g, k, reduced.members));
                }
            }
        }
    }
}

TEST_CASE("path tar verdicts match the oracle on small instances") {
    for (int n = 2; n <= 8; ++n) {
        Graph g = Graph::path(n);
        for (int k = 2; k <= 3; ++k) {
            auto covers = enumerate_covers(g, k, 0, n);
            const int psi = psi_k_closed_form(ShapeKind::Path, n, k);
            for (int cap = psi; cap <= n; ++cap) {
                ReconfGraph rg = ReconfGraph::build(g, k, Rule::tar(cap), 0);
                for (const CoverSet& I : covers) {
                    if (I.size() > cap)
                        continue;
                    auto src = rg.index_of(I);
                    REQUIRE(src.has_value());
                    auto dist = rg.bfs_distances(*src);
                    for (const CoverSet& J : covers) {
                        if (J.size() > cap)
                            continue;
                        bool reachable = dist[*rg.index_of(J)] >= 0;
                        SolveOutcome out = solve_path_tar(g, k, I, J, cap);
                        CHECK(out.yes() == reachable);
                        if (out.yes())
                            CHECK(verify(g, k, Rule::tar(cap), *out.sequence, J).ok);
                    }
                }
            }
        }
    }
}
