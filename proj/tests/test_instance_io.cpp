#include <doctest.h>

#include <sstream>

#include "kpvcr/cycle_solver.hpp"
#include "kpvcr/instance_io.hpp"
#include "kpvcr/path_solver.hpp"

using namespace kpvcr;

namespace {

const char* kSample = R"(# toy instance
k 3
n 6
edge 0 1
edge 1 2
edge 2 3
edge 3 4
edge 4 5
I: 1 4
J: 2 5
rule: tj
)";

} // namespace

TEST_CASE("parse a well-formed instance") {
    Instance inst = parse_instance_text(kSample);
    CHECK(inst.k == 3);
    CHECK(inst.graph.vertex_count() == 6);
    CHECK(inst.graph == Graph::path(6));
    CHECK(inst.I.members == std::vector<Vertex>{1, 4});
    CHECK(inst.J.members == std::vector<Vertex>{2, 5});
    CHECK(inst.rule == Rule::tj());
}

TEST_CASE("instance emission round-trips") {
    Instance inst = parse_instance_text(kSample);
    CHECK(parse_instance_text(emit_instance(inst)) == inst);

    inst.rule = Rule::tar(3);
    Instance again = parse_instance_text(emit_instance(inst));
    CHECK(again == inst);
    CHECK(again.rule.cap == 3);
}

TEST_CASE("parser rejects invalid covers with a witness") {
    std::string text = "k 3\nn 6\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\n"
                       "I: 5\nJ: 2 5\nrule: tj\n";
    try {
        parse_instance_text(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("[0 1 2]") != std::string::npos);
    }
}

TEST_CASE("parser reports structural problems") {
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nedge 0 1\nedge 0 1\nI:\nJ:\nrule: tj\n"),
                    ParseError); // duplicate edge
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nI:\nJ:\nrule: tar\n"),
                    ParseError); // tar without u
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nI:\nJ:\nrule: hop\n"),
                    ParseError); // unknown rule
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nI: 7\nJ:\nrule: tj\n"),
                    ParseError); // out-of-range vertex
    CHECK_THROWS_AS(parse_instance_text("n 2\nI:\nJ:\nrule: tj\n"), ParseError); // missing k
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nI:\nJ:\nrule: tj\nu: 4\n"),
                    ParseError); // stray u
    CHECK_THROWS_AS(parse_instance_text("k 3\nn 2\nwat 1\nI:\nJ:\nrule: tj\n"),
                    ParseError); // unknown keyword
}

TEST_CASE("sequence files round-trip") {
    Graph g = Graph::path(6);
    SolveOutcome out = solve_path_tj(g, 3, CoverSet({1, 4}, 3), CoverSet({2, 5}, 3));
    REQUIRE(out.yes());
    std::string text = emit_sequence(*out.sequence);
    std::istringstream in(text);
    ReconfSequence parsed = parse_sequence(in, 3);
    CHECK(parsed == *out.sequence);
}

TEST_CASE("sequence parser covers all step kinds and errors") {
    std::istringstream in("start: 0 3\nslide 0 1\njump 3 5\nadd 2\nremove 5\n");
    ReconfSequence seq = parse_sequence(in, 3);
    REQUIRE(seq.length() == 4);
    CHECK(seq.steps[0] == Step::slide(0, 1));
    CHECK(seq.steps[1] == Step::jump(3, 5));
    CHECK(seq.steps[2] == Step::add(2));
    CHECK(seq.steps[3] == Step::remove(5));

    std::istringstream missing("slide 0 1\n");
    CHECK_THROWS_AS(parse_sequence(missing, 3), ParseError);
    std::istringstream malformed("start: 0\nslide 0\n");
    CHECK_THROWS_AS(parse_sequence(malformed, 3), ParseError);
}

TEST_CASE("graph files round-trip through the generators") {
    TjDetourInstance family = hard_shortest_tj_family(3);
    std::string text = emit_graph_file(family.cycle, 3, "cycle family");
    std::istringstream in(text);
    GraphFile file = parse_graph_file(in);
    CHECK(file.k == 3);
    CHECK(file.graph == family.cycle);
}
