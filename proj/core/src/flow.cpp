#include "flg/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <set>

#include "flg/errors.hpp"

namespace flg {

namespace {

void check_network(const FlowNetwork& net) {
  if (net.node_count <= 0) throw InputError("flow: empty network");
  if (net.source < 0 || net.source >= net.node_count || net.sink < 0 ||
      net.sink >= net.node_count || net.source == net.sink)
    throw InputError("flow: bad source/sink");
  for (const FlowArc& arc : net.arcs) {
    if (arc.from < 0 || arc.from >= net.node_count || arc.to < 0 ||
        arc.to >= net.node_count || arc.from == arc.to)
      throw InputError("flow: bad arc endpoints");
    if (arc.from == net.sink || arc.to == net.source)
      throw InputError("flow: arcs out of the sink or into the source");
    if (arc.capacity.sign() < 0) throw InputError("flow: negative capacity");
  }
}

// Residual edge list: index 2i is arc i forward, 2i+1 its reverse.
struct Residual {
  const FlowNetwork& net;
  std::vector<Scalar> flow;
  std::vector<std::vector<int>> incident;  // residual edge ids per node

  explicit Residual(const FlowNetwork& net)
      : net(net), flow(net.arcs.size()), incident(net.node_count) {
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      incident[net.arcs[i].from].push_back(static_cast<int>(2 * i));
      incident[net.arcs[i].to].push_back(static_cast<int>(2 * i + 1));
    }
  }

  int head(int e) const {
    return e % 2 == 0 ? net.arcs[e / 2].to : net.arcs[e / 2].from;
  }
  Scalar residual_cap(int e) const {
    const std::size_t i = e / 2;
    return e % 2 == 0 ? net.arcs[i].capacity - flow[i] : flow[i];
  }
  void push(int e, const Scalar& amount) {
    if (e % 2 == 0)
      flow[e / 2] += amount;
    else
      flow[e / 2] -= amount;
  }
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  check_network(net);
  Residual res(net);
  for (;;) {
    // BFS for a shortest augmenting path; edge ids give determinism.
    std::vector<int> parent_edge(net.node_count, -1);
    std::vector<char> seen(net.node_count, 0);
    seen[net.source] = 1;
    std::deque<int> queue{net.source};
    while (!queue.empty() && !seen[net.sink]) {
      int u = queue.front();
      queue.pop_front();
      for (int e : res.incident[u]) {
        int v = res.head(e);
        if (res.head(e ^ 1) != u) continue;  // only edges leaving u
        if (seen[v] || res.residual_cap(e).sign() <= 0) continue;
        seen[v] = 1;
        parent_edge[v] = e;
        queue.push_back(v);
      }
    }
    if (!seen[net.sink]) break;
    Scalar bottleneck;
    bool first = true;
    for (int v = net.sink; v != net.source; v = res.head(parent_edge[v] ^ 1)) {
      Scalar cap = res.residual_cap(parent_edge[v]);
      if (first || cap < bottleneck) bottleneck = cap;
      first = false;
    }
    for (int v = net.sink; v != net.source; v = res.head(parent_edge[v] ^ 1))
      res.push(parent_edge[v], bottleneck);
  }

  FlowResult result;
  result.flow = res.flow;
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    if (net.arcs[i].from == net.source) result.value += res.flow[i];
    if (net.arcs[i].to == net.source) result.value -= res.flow[i];
    result.cost += Scalar(mpq_class(net.arcs[i].cost)) * res.flow[i];
  }
  return result;
}

Scalar cut_capacity(const FlowNetwork& net, const std::vector<char>& side) {
  if (static_cast<int>(side.size()) != net.node_count)
    throw InputError("cut_capacity: side vector length mismatch");
  if (!side[net.source] || side[net.sink])
    throw InputError("cut_capacity: source must be inside, sink outside");
  Scalar cap;
  for (const FlowArc& arc : net.arcs)
    if (side[arc.from] && !side[arc.to]) cap += arc.capacity;
  return cap;
}

namespace {

void check_flow_valid(const FlowNetwork& net, const FlowResult& result) {
  if (result.flow.size() != net.arcs.size())
    throw InputError("flow result does not match the network");
  std::vector<Scalar> balance(net.node_count);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const Scalar& f = result.flow[i];
    if (f.sign() < 0 || f > net.arcs[i].capacity)
      throw InputError("flow result violates arc capacities");
    balance[net.arcs[i].from] -= f;
    balance[net.arcs[i].to] += f;
  }
  for (int v = 0; v < net.node_count; ++v)
    if (v != net.source && v != net.sink && !balance[v].is_zero())
      throw InputError("flow result violates conservation");
}

}  // namespace

std::vector<char> max_source_side_min_cut(const FlowNetwork& net,
                                          const FlowResult& result) {
  check_network(net);
  check_flow_valid(net, result);
  Residual res(net);
  res.flow = result.flow;
  // Nodes that can reach the sink through positive residual capacity.
  std::vector<char> reaches_sink(net.node_count, 0);
  reaches_sink[net.sink] = 1;
  std::deque<int> queue{net.sink};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : res.incident[v]) {
      // Edge e leaves v; we need edges entering v with residual capacity,
      // i.e. the mate e^1 seen from the tail.
      int u = res.head(e);
      if (reaches_sink[u]) continue;
      // Residual edge u -> v is e^1 if head(e^1) == v.
      int into = e ^ 1;
      if (res.head(into) == v && res.residual_cap(into).sign() > 0) {
        reaches_sink[u] = 1;
        queue.push_back(u);
      }
    }
  }
  if (reaches_sink[net.source])
    throw InputError("max_source_side_min_cut: not a maximum flow");
  std::vector<char> side(net.node_count);
  for (int v = 0; v < net.node_count; ++v) side[v] = !reaches_sink[v];
  // Duality: the complement of the sink-reaching set is a minimum cut.
  if (cut_capacity(net, side) != result.value)
    throw InternalError("max_source_side_min_cut: duality check failed");
  return side;
}

namespace {

void check_integral_dag(const FlowNetwork& net) {
  for (const FlowArc& arc : net.arcs)
    if (!arc.capacity.is_integer())
      throw InputError("max_cost_flow: capacities must be integers");
  // Kahn toposort over arcs; cost optimality via shortest paths needs an
  // acyclic arc digraph.
  std::vector<int> indegree(net.node_count, 0);
  for (const FlowArc& arc : net.arcs) ++indegree[arc.to];
  std::deque<int> queue;
  for (int v = 0; v < net.node_count; ++v)
    if (indegree[v] == 0) queue.push_back(v);
  int seen = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++seen;
    for (const FlowArc& arc : net.arcs)
      if (arc.from == v && --indegree[arc.to] == 0) queue.push_back(arc.to);
  }
  if (seen != net.node_count)
    throw InputError("max_cost_flow: arc digraph must be acyclic");
}

}  // namespace

FlowResult max_cost_flow(const FlowNetwork& net) {
  check_network(net);
  check_integral_dag(net);
  const std::size_t m = net.arcs.size();
  // Work on negated costs: a max-cost max-flow is a min-cost max-flow there.
  std::vector<mpz_class> cost(m);
  for (std::size_t i = 0; i < m; ++i) cost[i] = -net.arcs[i].cost;

  Residual res(net);
  auto edge_cost = [&](int e) -> mpz_class {
    return e % 2 == 0 ? cost[e / 2] : -cost[e / 2];
  };

  // Node potentials; initialized by label-correcting relaxation (costs may
  // be negative before the first augmentation), then maintained so that all
  // reduced costs stay nonnegative and Dijkstra applies. Genuine reduced
  // distances are bounded by twice the total cost magnitude (path cost
  // minus a potential), so the sentinel sits safely above that.
  const mpz_class unreachable = [&] {
    mpz_class bound = 1;
    for (std::size_t i = 0; i < m; ++i)
      bound += 2 * (cost[i] >= 0 ? cost[i] : -cost[i]);
    return bound;
  }();
  std::vector<mpz_class> potential(net.node_count, unreachable);
  {
    // Bellman-Ford; |V|-1 rounds are enough and keep the code simple.
    potential[net.source] = 0;
    for (int round = 0; round < net.node_count - 1; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < m; ++i) {
        const FlowArc& arc = net.arcs[i];
        if (arc.capacity.sign() <= 0) continue;
        if (potential[arc.from] == unreachable) continue;
        mpz_class candidate = potential[arc.from] + cost[i];
        if (candidate < potential[arc.to]) {
          potential[arc.to] = candidate;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  while (potential[net.sink] < unreachable) {
    // Dijkstra over reduced costs.
    std::vector<mpz_class> dist(net.node_count, unreachable);
    std::vector<int> parent_edge(net.node_count, -1);
    std::vector<char> done(net.node_count, 0);
    dist[net.source] = 0;
    std::set<std::pair<mpz_class, int>> heap;
    heap.insert({0, net.source});
    while (!heap.empty()) {
      int u = heap.begin()->second;
      heap.erase(heap.begin());
      if (done[u]) continue;
      done[u] = 1;
      for (int e : res.incident[u]) {
        if (res.head(e ^ 1) != u) continue;
        int v = res.head(e);
        if (done[v] || res.residual_cap(e).sign() <= 0) continue;
        if (potential[u] == unreachable || potential[v] == unreachable)
          continue;
        mpz_class reduced = edge_cost(e) + potential[u] - potential[v];
        if (reduced < 0)
          throw InternalError("max_cost_flow: negative reduced cost");
        mpz_class candidate = dist[u] + reduced;
        if (candidate < dist[v]) {
          heap.erase({dist[v], v});
          dist[v] = candidate;
          parent_edge[v] = e;
          heap.insert({dist[v], v});
        }
      }
    }
    if (dist[net.sink] == unreachable) break;
    for (int v = 0; v < net.node_count; ++v)
      if (dist[v] < unreachable) potential[v] += dist[v];

    Scalar bottleneck;
    bool first = true;
    for (int v = net.sink; v != net.source; v = res.head(parent_edge[v] ^ 1)) {
      Scalar cap = res.residual_cap(parent_edge[v]);
      if (first || cap < bottleneck) bottleneck = cap;
      first = false;
    }
    for (int v = net.sink; v != net.source; v = res.head(parent_edge[v] ^ 1))
      res.push(parent_edge[v], bottleneck);
  }

  FlowResult result;
  result.flow = res.flow;
  for (std::size_t i = 0; i < m; ++i) {
    if (net.arcs[i].from == net.source) result.value += res.flow[i];
    if (net.arcs[i].to == net.source) result.value -= res.flow[i];
    result.cost += Scalar(mpq_class(net.arcs[i].cost)) * res.flow[i];
  }
  return result;
}

}  // namespace flg
