#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "flg/analysis.hpp"
#include "flg/client_eq.hpp"
#include "flg/flow.hpp"
#include "flg/game.hpp"
#include "flg/instances.hpp"
#include "flg/spe.hpp"

namespace flg::test {

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately avoid the library's algorithmic
// paths: plain enumeration only.
// ---------------------------------------------------------------------------

/// Minimum cut by enumerating every source side (<= 20 non-terminal nodes).
inline Scalar oracle_min_cut(const FlowNetwork& net) {
  std::vector<int> free_nodes;
  for (int v = 0; v < net.node_count; ++v)
    if (v != net.source && v != net.sink) free_nodes.push_back(v);
  Scalar best;
  bool first = true;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_nodes.size());
       ++mask) {
    std::vector<char> side(net.node_count, 0);
    side[net.source] = 1;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (mask & (std::size_t{1} << i)) side[free_nodes[i]] = 1;
    Scalar cap;
    for (const FlowArc& arc : net.arcs)
      if (side[arc.from] && !side[arc.to]) cap += arc.capacity;
    if (first || cap < best) {
      best = cap;
      first = false;
    }
  }
  return best;
}

/// All integral flows of a micro network (every arc capacity a small
/// integer), reported as (value, cost) pairs of the best flow found.
inline std::pair<Scalar, Scalar> oracle_max_cost_flow(const FlowNetwork& net) {
  std::vector<long> caps;
  for (const FlowArc& arc : net.arcs) caps.push_back(arc.capacity.to_long());
  std::vector<long> flow(net.arcs.size(), 0);
  Scalar best_value, best_cost;
  bool first = true;
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (i == net.arcs.size()) {
      std::vector<long> balance(net.node_count, 0);
      for (std::size_t j = 0; j < net.arcs.size(); ++j) {
        balance[net.arcs[j].from] -= flow[j];
        balance[net.arcs[j].to] += flow[j];
      }
      for (int v = 0; v < net.node_count; ++v)
        if (v != net.source && v != net.sink && balance[v] != 0) return;
      Scalar value(-balance[net.source]);
      Scalar cost;
      for (std::size_t j = 0; j < net.arcs.size(); ++j)
        cost += Scalar(mpq_class(net.arcs[j].cost)) * Scalar(flow[j]);
      if (first || value > best_value ||
          (value == best_value && cost > best_cost)) {
        best_value = value;
        best_cost = cost;
        first = false;
      }
      return;
    }
    for (long f = 0; f <= caps[i]; ++f) {
      flow[i] = f;
      recurse(i + 1);
    }
    flow[i] = 0;
  };
  recurse(0);
  return {best_value, best_cost};
}

/// Every pure assignment of covered clients to in-range facilities.
inline std::vector<PureAssignment> all_pure_assignments(const Instance& inst,
                                                        const Placement& s) {
  Ranges ranges(inst, s);
  std::vector<VertexId> covered;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v)) covered.push_back(v);
  std::vector<PureAssignment> out;
  PureAssignment current;
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (i == covered.size()) {
      out.push_back(current);
      return;
    }
    for (FacilityId f : ranges.shopping[covered[i]]) {
      current.assign[covered[i]] = f;
      recurse(i + 1);
    }
    current.assign.erase(covered[i]);
  };
  recurse(0);
  return out;
}

/// Lexicographic maximum of the permuted load vector over every rounded
/// assignment, by brute force.
inline std::vector<Scalar> oracle_best_pi_loads(const Instance& inst,
                                                const Placement& s,
                                                const ClassSet& cs,
                                                const std::vector<int>& pi) {
  std::optional<std::vector<Scalar>> best;
  for (const PureAssignment& a : all_pure_assignments(inst, s)) {
    if (!is_rounded(inst, s, cs, a)) continue;
    LoadReport report = facility_loads(inst, s, a.to_profile(inst));
    std::vector<Scalar> permuted = pi_loads(report, pi);
    if (!best || lex_less(*best, permuted)) best = permuted;
  }
  if (!best) throw std::runtime_error("oracle: no rounded assignment exists");
  return *best;
}

/// Pure-certificate stabilizability by brute force: a base placement is
/// pure-stabilizable when some pure equilibrium at the base keeps every
/// deviation's cheapest pure-equilibrium load within alpha times the
/// mover's base load.
inline bool oracle_pure_stabilizable(const Instance& inst, const Placement& s,
                                     const Alpha& alpha) {
  auto pure_equilibria = [&](const Placement& p) {
    std::vector<LoadReport> reports;
    for (const PureAssignment& a : all_pure_assignments(inst, p)) {
      ClientProfile sigma = a.to_profile(inst);
      if (verify_client_equilibrium(inst, p, sigma).ok)
        reports.push_back(facility_loads(inst, p, sigma));
    }
    return reports;
  };
  for (const LoadReport& base : pure_equilibria(s)) {
    bool stable = true;
    for (FacilityId f = 0; f < inst.k && stable; ++f)
      for (VertexId u : inst.allowed[f]) {
        if (u == s.at[f]) continue;
        Placement dev = s;
        dev.at[f] = u;
        std::optional<Scalar> cheapest;
        for (const LoadReport& report : pure_equilibria(dev))
          if (!cheapest || report.load[f] < *cheapest)
            cheapest = report.load[f];
        if (cheapest && *cheapest > alpha.value * base.load[f]) {
          stable = false;
          break;
        }
      }
    if (stable) return true;
  }
  return false;
}

/// Policy that replays a certificate's stored profiles.
inline FullProfilePolicy policy_from_certificate(PartialCertificate cert) {
  return {"fixed-table",
          [cert = std::move(cert)](const Instance&, const Placement& s) {
            return cert.at(s);
          }};
}

inline Placement place(std::vector<VertexId> at) { return {std::move(at)}; }

}  // namespace flg::test
