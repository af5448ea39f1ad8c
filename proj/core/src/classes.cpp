#include "flg/classes.hpp"

#include <algorithm>
#include <map>

#include "flg/errors.hpp"
#include "flg/flow.hpp"

namespace flg {

namespace {

// Weight of A(T) restricted to the client pool.
Scalar coverage_weight(const Instance& inst, const Ranges& ranges,
                       const std::vector<FacilityId>& subset,
                       const std::vector<char>& in_pool) {
  std::vector<char> seen(inst.graph.vertex_count(), 0);
  Scalar sum;
  for (FacilityId f : subset)
    for (VertexId v : ranges.attraction[f])
      if (in_pool[v] && !seen[v]) {
        seen[v] = 1;
        sum += inst.graph.weight[v];
      }
  return sum;
}

std::vector<char> pool_mask(const Instance& inst,
                            const std::vector<VertexId>& vstar) {
  std::vector<char> mask(inst.graph.vertex_count(), 0);
  for (VertexId v : vstar) {
    if (v < 0 || v >= inst.graph.vertex_count())
      throw InputError("mns: unknown vertex in client pool");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

std::vector<FacilityId> mns(const Instance& inst, const Placement& s,
                            const std::vector<FacilityId>& fstar,
                            const std::vector<VertexId>& vstar) {
  if (fstar.empty()) throw InputError("mns: empty facility pool");
  for (FacilityId f : fstar)
    if (f < 0 || f >= inst.k) throw InputError("mns: facility out of range");
  Ranges ranges(inst, s);
  std::vector<char> in_pool = pool_mask(inst, vstar);

  // Node layout: 0 = source, 1..|F*| facilities, then pooled clients, sink.
  std::vector<VertexId> clients;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (in_pool[v]) clients.push_back(v);
  std::map<VertexId, int> client_node;
  const int source = 0;
  const int first_client = 1 + static_cast<int>(fstar.size());
  for (std::size_t i = 0; i < clients.size(); ++i)
    client_node[clients[i]] = first_client + static_cast<int>(i);
  const int sink = first_client + static_cast<int>(clients.size());

  Scalar pool_weight;
  for (VertexId v : clients) pool_weight += inst.graph.weight[v];
  const Scalar infinite = pool_weight + Scalar(1);

  auto solve_at = [&](const Scalar& lambda) {
    FlowNetwork net;
    net.node_count = sink + 1;
    net.source = source;
    net.sink = sink;
    for (std::size_t i = 0; i < fstar.size(); ++i) {
      net.arcs.push_back({source, 1 + static_cast<int>(i), lambda, 0});
      for (VertexId v : ranges.attraction[fstar[i]])
        if (in_pool[v])
          net.arcs.push_back(
              {1 + static_cast<int>(i), client_node.at(v), infinite, 0});
    }
    for (VertexId v : clients)
      net.arcs.push_back({client_node.at(v), sink, inst.graph.weight[v], 0});
    FlowResult flow = max_flow(net);
    std::vector<char> side = max_source_side_min_cut(net, flow);
    std::vector<FacilityId> subset;
    for (std::size_t i = 0; i < fstar.size(); ++i)
      if (side[1 + static_cast<int>(i)]) subset.push_back(fstar[i]);
    return subset;
  };

  // Dinkelbach: start at the ratio of the full pool and descend. For trial
  // ratio lambda the min cut minimizes w(A(T) ∩ V*) − lambda |T|; at the
  // optimum the maximal minimizer is the maximal source side.
  Scalar lambda = coverage_weight(inst, ranges, fstar, in_pool) /
                  Scalar(static_cast<long>(fstar.size()));
  for (;;) {
    std::vector<FacilityId> subset = solve_at(lambda);
    if (subset.empty())
      throw InternalError("mns: maximal min cut lost the trial subset");
    Scalar ratio = coverage_weight(inst, ranges, subset, in_pool) /
                   Scalar(static_cast<long>(subset.size()));
    if (ratio == lambda) return subset;
    if (ratio > lambda)
      throw InternalError("mns: Dinkelbach ratio failed to decrease");
    lambda = ratio;
  }
}

std::vector<FacilityId> mns_bruteforce(const Instance& inst, const Placement& s,
                                       const std::vector<FacilityId>& fstar,
                                       const std::vector<VertexId>& vstar) {
  if (fstar.empty()) throw InputError("mns_bruteforce: empty facility pool");
  if (fstar.size() > 20)
    throw GuardError("mns_bruteforce: more than 20 facilities");
  Ranges ranges(inst, s);
  std::vector<char> in_pool = pool_mask(inst, vstar);

  const std::size_t n = fstar.size();
  bool have_best = false;
  Scalar best_ratio;
  std::vector<FacilityId> best;
  std::vector<std::vector<FacilityId>> minimizers;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<FacilityId> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) subset.push_back(fstar[i]);
    Scalar ratio = coverage_weight(inst, ranges, subset, in_pool) /
                   Scalar(static_cast<long>(subset.size()));
    if (!have_best || ratio < best_ratio) {
      have_best = true;
      best_ratio = ratio;
      minimizers.clear();
    }
    if (ratio == best_ratio) minimizers.push_back(subset);
  }
  for (const auto& m : minimizers)
    if (m.size() > best.size()) best = m;
  // The minimizers form a lattice; their union must itself be a minimizer
  // and therefore equal the unique maximal one. A violation is a fatal
  // diagnostic, not a tie to break silently.
  std::vector<char> in_union(inst.k, 0);
  for (const auto& m : minimizers)
    for (FacilityId f : m) in_union[f] = 1;
  std::vector<FacilityId> united;
  for (FacilityId f = 0; f < inst.k; ++f)
    if (in_union[f]) united.push_back(f);
  if (united != best)
    throw InternalError("mns_bruteforce: maximal minimizer is not unique");
  return best;
}

ClassSet class_set(const Instance& inst, const Placement& s) {
  Ranges ranges(inst, s);
  ClassSet result;
  result.class_of_facility.assign(inst.k, -1);
  result.class_of_client.assign(inst.graph.vertex_count(), -1);

  std::vector<FacilityId> remaining_f;
  for (FacilityId f = 0; f < inst.k; ++f) remaining_f.push_back(f);
  std::vector<VertexId> remaining_v;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    remaining_v.push_back(v);

  while (!remaining_f.empty()) {
    std::vector<FacilityId> chosen = mns(inst, s, remaining_f, remaining_v);
    std::vector<char> in_pool = pool_mask(inst, remaining_v);
    std::vector<char> taken_v(inst.graph.vertex_count(), 0);
    ClassInfo info;
    info.facilities = chosen;
    for (FacilityId f : chosen)
      for (VertexId v : ranges.attraction[f])
        if (in_pool[v] && !taken_v[v]) {
          taken_v[v] = 1;
          info.clients.push_back(v);
        }
    std::sort(info.clients.begin(), info.clients.end());
    Scalar weight;
    for (VertexId v : info.clients) weight += inst.graph.weight[v];
    info.avg_load = weight / Scalar(static_cast<long>(chosen.size()));

    int index = static_cast<int>(result.classes.size());
    for (FacilityId f : chosen) result.class_of_facility[f] = index;
    for (VertexId v : info.clients) result.class_of_client[v] = index;
    if (index > 0 &&
        !(result.classes.back().avg_load < info.avg_load))
      throw InternalError("class_set: average loads are not increasing");
    result.classes.push_back(std::move(info));

    std::vector<char> in_chosen(inst.k, 0);
    for (FacilityId f : chosen) in_chosen[f] = 1;
    std::erase_if(remaining_f, [&](FacilityId f) { return in_chosen[f]; });
    std::erase_if(remaining_v, [&](VertexId v) { return taken_v[v]; });
  }

  // Every covered client must have been absorbed by some class.
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v) && result.class_of_client[v] < 0)
      throw InternalError("class_set: covered client left unclassified");
  return result;
}

}  // namespace flg
