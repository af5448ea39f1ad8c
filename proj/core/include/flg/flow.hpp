#pragma once
#include <gmpxx.h>

#include <vector>

#include "flg/scalar.hpp"

namespace flg {

/// Directed arc with exact capacity and integer cost. Costs only matter to
/// max_cost_flow; max_flow ignores them.
struct FlowArc {
  int from = 0;
  int to = 0;
  Scalar capacity;
  mpz_class cost = 0;
};

struct FlowNetwork {
  int node_count = 0;
  int source = -1;
  int sink = -1;
  std::vector<FlowArc> arcs;
};

struct FlowResult {
  std::vector<Scalar> flow;  // parallel to net.arcs
  Scalar value;
  Scalar cost;  // sum of flow * cost over arcs
};

/// Maximum s-t flow with exact Scalar capacities (BFS augmenting paths).
/// A disconnected source/sink pair yields value 0.
FlowResult max_flow(const FlowNetwork& net);

/// Capacity of the cut whose source side is `side` (side[source] must be
/// true, side[sink] false).
Scalar cut_capacity(const FlowNetwork& net, const std::vector<char>& side);

/// The inclusion-maximal source side among all minimum cuts: the complement
/// of the nodes that can still reach the sink in the residual graph of a
/// maximum flow. Throws if `result` is not a valid maximum flow for `net`.
std::vector<char> max_source_side_min_cut(const FlowNetwork& net,
                                          const FlowResult& result);

/// Among maximum-value integral flows, one of maximum total cost.
/// Requires integer capacities and an acyclic arc digraph; deterministic
/// under the given arc order. Implemented as min-cost flow on negated costs
/// via successive shortest paths with node potentials.
FlowResult max_cost_flow(const FlowNetwork& net);

}  // namespace flg
