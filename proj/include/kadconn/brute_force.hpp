#pragma once

#include <optional>

#include "kadconn/digraph.hpp"

namespace kadconn {

// Exhaustive minimum vertex cut between v and w: enumerates removal sets
// X of V \ {v, w} in increasing size and returns the first size that leaves
// no v->w path. Exponential; refuses graphs with n > max_n.
//
// Independent of the flow-based path, so it doubles as a Menger oracle.
// Returns nullopt for identical or adjacent pairs, mirroring
// vertex_connectivity_pair.
std::optional<int> brute_force_vertex_connectivity(const DiGraph& g, int v, int w,
                                                   int max_n = 12);

}  // namespace kadconn
