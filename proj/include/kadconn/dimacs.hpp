#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kadconn/flow_network.hpp"

namespace kadconn {

// DIMACS max-flow text for one (source, sink) query:
//   p max <nodes> <arcs>
//   n <s> s
//   n <t> t
//   a <u> <v> <cap>      (one line per arc, 1-based vertices)
// Newline-terminated lines, no trailing whitespace. Arc order follows
// net.arcs.
std::string export_dimacs(const FlowNetwork& net, int s, int t);

struct DimacsProblem {
    FlowNetwork net;
    int source = -1;
    int sink = -1;
};

struct DimacsParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict reader for the subset written by export_dimacs plus DIMACS comment
// lines. Vertices are converted back to 0-based indices.
DimacsProblem parse_dimacs(std::string_view text);

}  // namespace kadconn
