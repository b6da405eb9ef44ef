#include "kadconn/dimacs.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace kadconn {

std::string export_dimacs(const FlowNetwork& net, int s, int t) {
    if (s < 0 || s >= net.n_vertices || t < 0 || t >= net.n_vertices || s == t)
        throw std::invalid_argument("dimacs: invalid source/sink pair");
    std::string out;
    out += "p max " + std::to_string(net.n_vertices) + " " + std::to_string(net.arcs.size()) +
           "\n";
    out += "n " + std::to_string(s + 1) + " s\n";
    out += "n " + std::to_string(t + 1) + " t\n";
    for (const auto& arc : net.arcs)
        out += "a " + std::to_string(arc.from + 1) + " " + std::to_string(arc.to + 1) + " " +
               std::to_string(arc.capacity) + "\n";
    return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ') ++end;
        out.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

long parse_long(std::string_view token) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw DimacsParseError("dimacs: bad integer '" + std::string(token) + "'");
    return value;
}

}  // namespace

DimacsProblem parse_dimacs(std::string_view text) {
    DimacsProblem problem;
    long declared_arcs = -1;
    bool have_problem = false;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;

        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "c") continue;

        if (tokens[0] == "p") {
            if (have_problem) throw DimacsParseError("dimacs: duplicate problem line");
            if (tokens.size() != 4 || tokens[1] != "max")
                throw DimacsParseError("dimacs: expected 'p max <nodes> <arcs>'");
            problem.net.n_vertices = static_cast<int>(parse_long(tokens[2]));
            declared_arcs = parse_long(tokens[3]);
            if (problem.net.n_vertices < 0 || declared_arcs < 0)
                throw DimacsParseError("dimacs: negative counts in problem line");
            have_problem = true;
        } else if (tokens[0] == "n") {
            if (!have_problem) throw DimacsParseError("dimacs: node line before problem line");
            if (tokens.size() != 3) throw DimacsParseError("dimacs: malformed node line");
            const long vertex = parse_long(tokens[1]);
            if (vertex < 1 || vertex > problem.net.n_vertices)
                throw DimacsParseError("dimacs: node index out of range");
            if (tokens[2] == "s") problem.source = static_cast<int>(vertex - 1);
            else if (tokens[2] == "t") problem.sink = static_cast<int>(vertex - 1);
            else throw DimacsParseError("dimacs: node designator must be 's' or 't'");
        } else if (tokens[0] == "a") {
            if (!have_problem) throw DimacsParseError("dimacs: arc line before problem line");
            if (tokens.size() != 4) throw DimacsParseError("dimacs: malformed arc line");
            const long from = parse_long(tokens[1]);
            const long to = parse_long(tokens[2]);
            const long cap = parse_long(tokens[3]);
            if (from < 1 || from > problem.net.n_vertices || to < 1 ||
                to > problem.net.n_vertices)
                throw DimacsParseError("dimacs: arc endpoint out of range");
            if (cap < 0) throw DimacsParseError("dimacs: negative capacity");
            problem.net.arcs.push_back({static_cast<int>(from - 1), static_cast<int>(to - 1),
                                        static_cast<int>(cap)});
        } else {
            throw DimacsParseError("dimacs: unknown line type '" + std::string(tokens[0]) + "'");
        }
    }

    if (!have_problem) throw DimacsParseError("dimacs: missing problem line");
    if (problem.source < 0 || problem.sink < 0)
        throw DimacsParseError("dimacs: missing source or sink line");
    if (declared_arcs != static_cast<long>(problem.net.arcs.size()))
        throw DimacsParseError("dimacs: arc count does not match the header");
    return problem;
}

}  // namespace kadconn
