#include "kpvcr/instance_io.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace kpvcr {

namespace {

struct Line {
    int number;
    std::string keyword;
    std::vector<std::string> args;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ss(raw);
        Line line{number, "", {}};
        if (!(ss >> line.keyword))
            continue;
        std::string tok;
        while (ss >> tok)
            line.args.push_back(tok);
        lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const Line& line, const std::string& tok) {
    try {
        size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        parse_fail(line.number, "expected an integer, got '" + tok + "'");
    }
}

std::vector<Vertex> parse_ids(const Line& line) {
    std::vector<Vertex> ids;
    ids.reserve(line.args.size());
    for (const std::string& tok : line.args)
        ids.push_back(parse_int(line, tok));
    return ids;
}

struct RawInstance {
    std::optional<int> k, n, u;
    std::vector<Edge> edges;
    std::optional<std::vector<Vertex>> I, J;
    std::optional<std::string> rule;
    int rule_line = 0;
};

RawInstance collect(const std::vector<Line>& lines, bool graph_only) {
    RawInstance raw;
    for (const Line& line : lines) {
        if (line.keyword == "k") {
            if (line.args.size() != 1)
                parse_fail(line.number, "k takes one value");
            raw.k = parse_int(line, line.args[0]);
        } else if (line.keyword == "n") {
            if (line.args.size() != 1)
                parse_fail(line.number, "n takes one value");
            raw.n = parse_int(line, line.args[0]);
        } else if (line.keyword == "edge") {
            if (line.args.size() != 2)
                parse_fail(line.number, "edge takes two vertex ids");
            raw.edges.emplace_back(parse_int(line, line.args[0]), parse_int(line, line.args[1]));
        } else if (line.keyword == "I:") {
            raw.I = parse_ids(line);
        } else if (line.keyword == "J:") {
            raw.J = parse_ids(line);
        } else if (line.keyword == "rule:") {
            if (line.args.size() != 1)
                parse_fail(line.number, "rule: takes one of ts|tj|tar");
            raw.rule = line.args[0];
            raw.rule_line = line.number;
        } else if (line.keyword == "u:") {
            if (line.args.size() != 1)
                parse_fail(line.number, "u: takes one value");
            raw.u = parse_int(line, line.args[0]);
        } else if (!graph_only) {
            parse_fail(line.number, "unknown keyword '" + line.keyword + "'");
        }
    }
    return raw;
}

Graph build_graph(const RawInstance& raw) {
    if (!raw.n)
        throw ParseError("missing n line");
    try {
        return Graph::from_edges(*raw.n, raw.edges);
    } catch (const GraphError& e) {
        throw ParseError(std::string("bad graph: ") + e.what());
    }
}

} // namespace

Instance parse_instance(std::istream& in) {
    RawInstance raw = collect(tokenize(in), false);
    if (!raw.k)
        throw ParseError("missing k line");
    if (*raw.k < 2)
        throw ParseError("k must be >= 2");
    Instance inst;
    inst.graph = build_graph(raw);
    inst.k = *raw.k;
    if (!raw.I)
        throw ParseError("missing I: line");
    if (!raw.J)
        throw ParseError("missing J: line");
    if (!raw.rule)
        throw ParseError("missing rule: line");

    if (*raw.rule == "ts") {
        inst.rule = Rule::ts();
    } else if (*raw.rule == "tj") {
        inst.rule = Rule::tj();
    } else if (*raw.rule == "tar") {
        if (!raw.u)
            throw ParseError("rule tar needs a u: line");
        if (*raw.u < 0)
            throw ParseError("u must be >= 0");
        inst.rule = Rule::tar(*raw.u);
    } else {
        parse_fail(raw.rule_line, "unsupported rule '" + *raw.rule + "'");
    }
    if (raw.u && inst.rule.kind != RuleKind::TAR)
        throw ParseError("u: line is only meaningful for rule tar");

    for (Vertex v : *raw.I)
        if (!inst.graph.is_vertex(v))
            throw ParseError("I contains out-of-range vertex " + std::to_string(v));
    for (Vertex v : *raw.J)
        if (!inst.graph.is_vertex(v))
            throw ParseError("J contains out-of-range vertex " + std::to_string(v));
    inst.I = CoverSet(*raw.I, inst.k);
    inst.J = CoverSet(*raw.J, inst.k);
    try {
        require_kpvc(inst.graph, inst.k, inst.I, "I");
        require_kpvc(inst.graph, inst.k, inst.J, "J");
    } catch (const InvalidCoverError& e) {
        throw ParseError(e.what());
    }
    return inst;
}

Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

std::string emit_instance(const Instance& inst) {
    std::ostringstream out;
    out << "k " << inst.k << "\n";
    out << "n " << inst.graph.vertex_count() << "\n";
    for (auto [u, v] : inst.graph.edges())
        out << "edge " << u << " " << v << "\n";
    out << "I:";
    for (Vertex v : inst.I.members)
        out << " " << v;
    out << "\nJ:";
    for (Vertex v : inst.J.members)
        out << " " << v;
    out << "\nrule: " << to_string(inst.rule.kind) << "\n";
    if (inst.rule.kind == RuleKind::TAR)
        out << "u: " << inst.rule.cap << "\n";
    return out.str();
}

GraphFile parse_graph_file(std::istream& in) {
    RawInstance raw = collect(tokenize(in), true);
    GraphFile file;
    file.graph = build_graph(raw);
    if (raw.k) {
        if (*raw.k < 2)
            throw ParseError("k must be >= 2");
        file.k = *raw.k;
    }
    return file;
}

std::string emit_graph_file(const Graph& g, int k, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty())
        out << "# " << comment << "\n";
    if (k > 0)
        out << "k " << k << "\n";
    out << "n " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges())
        out << "edge " << u << " " << v << "\n";
    return out.str();
}

ReconfSequence parse_sequence(std::istream& in, int k) {
    ReconfSequence seq;
    bool have_start = false;
    for (const Line& line : tokenize(in)) {
        if (line.keyword == "start:") {
            if (have_start)
                parse_fail(line.number, "duplicate start: line");
            seq.start = CoverSet(parse_ids(line), k);
            have_start = true;
        } else if (line.keyword == "slide" || line.keyword == "jump") {
            if (!have_start)
                parse_fail(line.number, "step before start: line");
            if (line.args.size() != 2)
                parse_fail(line.number, line.keyword + " takes two vertex ids");
            Vertex a = parse_int(line, line.args[0]);
            Vertex b = parse_int(line, line.args[1]);
            seq.steps.push_back(line.keyword == "slide" ? Step::slide(a, b) : Step::jump(a, b));
        } else if (line.keyword == "add" || line.keyword == "remove") {
            if (!have_start)
                parse_fail(line.number, "step before start: line");
            if (line.args.size() != 1)
                parse_fail(line.number, line.keyword + " takes one vertex id");
            Vertex v = parse_int(line, line.args[0]);
            seq.steps.push_back(line.keyword == "add" ? Step::add(v) : Step::remove(v));
        } else {
            parse_fail(line.number, "unknown keyword '" + line.keyword + "'");
        }
    }
    if (!have_start)
        throw ParseError("missing start: line");
    return seq;
}

std::string emit_sequence(const ReconfSequence& seq) {
    std::ostringstream out;
    out << "start:";
    for (Vertex v : seq.start.members)
        out << " " << v;
    out << "\n";
    for (const Step& s : seq.steps) {
        switch (s.kind) {
        case Step::Kind::Slide:
            out << "slide " << s.from << " " << s.to << "\n";
            break;
        case Step::Kind::Jump:
            out << "jump " << s.from << " " << s.to << "\n";
            break;
        case Step::Kind::Add:
            out << "add " << s.to << "\n";
            break;
        case Step::Kind::Remove:
            out << "remove " << s.from << "\n";
            break;
        }
    }
    return out.str();
}

} // namespace kpvcr
