#include "flg/client_eq.hpp"

#include <algorithm>
#include <deque>

#include "flg/errors.hpp"
#include "flg/flow.hpp"

namespace flg {

namespace {

void require_unweighted(const Instance& inst, const char* what) {
  for (const Scalar& w : inst.graph.weight)
    if (w != Scalar(1))
      throw UnsupportedError(std::string(what) +
                             ": defined for unit client weights only");
}

}  // namespace

ClientProfile PureAssignment::to_profile(const Instance& inst) const {
  ClientProfile sigma = zero_profile(inst);
  for (const auto& [v, f] : assign) sigma.prob[v][f] = Scalar(1);
  return sigma;
}

PureAssignment rounded_profile(const Instance& inst, const Placement& s,
                               const ClassSet& cs) {
  require_unweighted(inst, "rounded_profile");
  Ranges ranges(inst, s);
  PureAssignment result;

  for (std::size_t ci = 0; ci < cs.classes.size(); ++ci) {
    const ClassInfo& cls = cs.classes[ci];
    // Residual graph on this class: facility -> client when unused,
    // client -> facility when assigned.
    std::map<VertexId, FacilityId> assigned;
    std::vector<long> load(inst.k, 0);
    std::map<FacilityId, std::vector<VertexId>> clients_of;
    for (FacilityId f : cls.facilities)
      for (VertexId v : ranges.attraction[f])
        if (cs.class_of_client[v] == static_cast<int>(ci))
          clients_of[f].push_back(v);

    while (assigned.size() < cls.clients.size()) {
      long min_load = -1;
      for (FacilityId f : cls.facilities)
        if (min_load < 0 || load[f] < min_load) min_load = load[f];

      // Breadth-first search through the residual graph, seeded by the
      // minimum-load facilities in id order; afterwards take the lowest-id
      // reachable unassigned client as the augmenting target.
      std::map<VertexId, FacilityId> parent_of_client;
      std::map<FacilityId, VertexId> parent_of_facility;
      std::vector<char> seen_f(inst.k, 0), seen_v(inst.graph.vertex_count(), 0);
      std::deque<FacilityId> queue;
      for (FacilityId f : cls.facilities)
        if (load[f] == min_load) {
          seen_f[f] = 1;
          queue.push_back(f);
        }
      std::optional<VertexId> target;
      while (!queue.empty()) {
        FacilityId f = queue.front();
        queue.pop_front();
        for (VertexId v : clients_of[f]) {
          if (seen_v[v]) continue;
          auto it = assigned.find(v);
          if (it != assigned.end() && it->second == f) continue;  // used edge
          seen_v[v] = 1;
          parent_of_client[v] = f;
          if (it == assigned.end()) {
            if (!target || v < *target) target = v;
            continue;  // unassigned clients are leaves of the residual graph
          }
          FacilityId g = it->second;
          if (!seen_f[g]) {
            seen_f[g] = 1;
            parent_of_facility[g] = v;
            queue.push_back(g);
          }
        }
      }
      if (!target)
        throw InternalError(
            "rounded_profile: no augmenting path although clients remain");

      // Augment: flip assignments along the path back to the seed facility.
      VertexId v = *target;
      for (;;) {
        FacilityId f = parent_of_client.at(v);
        assigned[v] = f;
        ++load[f];
        auto back = parent_of_facility.find(f);
        if (back == parent_of_facility.end()) break;
        VertexId prev = back->second;
        --load[f];  // prev was assigned to f and moves away
        v = prev;
      }

      // Augmenting from a minimum-load facility keeps the spread at one.
      long lo = -1, hi = -1;
      for (FacilityId f : cls.facilities) {
        if (lo < 0 || load[f] < lo) lo = load[f];
        if (load[f] > hi) hi = load[f];
      }
      if (hi - lo > 1)
        throw InternalError("rounded_profile: load spread exceeded one");
    }
    for (const auto& [v, f] : assigned) result.assign[v] = f;
  }
  return result;
}

bool is_rounded(const Instance& inst, const Placement& s, const ClassSet& cs,
                const PureAssignment& a) {
  require_unweighted(inst, "is_rounded");
  Ranges ranges(inst, s);
  std::vector<long> load(inst.k, 0);
  std::size_t covered = 0;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v)) ++covered;
  if (a.assign.size() != covered) return false;
  for (const auto& [v, f] : a.assign) {
    if (f < 0 || f >= inst.k) return false;
    if (!std::binary_search(ranges.shopping[v].begin(),
                            ranges.shopping[v].end(), f))
      return false;
    if (cs.class_of_client[v] != cs.class_of_facility[f]) return false;
    ++load[f];
  }
  for (FacilityId f = 0; f < inst.k; ++f) {
    const Scalar& avg = cs.of_facility(f).avg_load;
    mpz_class lo = avg.floor(), hi = avg.ceil();
    if (mpz_class(load[f]) != lo && mpz_class(load[f]) != hi) return false;
  }
  return true;
}

PureAssignment favoring_profile(const Instance& inst, const Placement& s,
                                const std::vector<int>& pi) {
  require_unweighted(inst, "favoring_profile");
  if (static_cast<int>(pi.size()) != inst.k)
    throw InputError("favoring_profile: permutation has wrong length");
  std::vector<int> position(inst.k, -1);  // 1-based position of f in pi
  for (int i = 0; i < inst.k; ++i) {
    int f = pi[i];
    if (f < 0 || f >= inst.k || position[f] >= 0)
      throw InputError("favoring_profile: not a bijection on facilities");
    position[f] = i + 1;
  }

  ClassSet cs = class_set(inst, s);
  Ranges ranges(inst, s);
  const int n = inst.graph.vertex_count();

  // Node layout: source, clients 1..n, facilities n+1..n+k, sink.
  FlowNetwork net;
  net.node_count = n + inst.k + 2;
  net.source = 0;
  net.sink = n + inst.k + 1;
  auto client_node = [&](VertexId v) { return 1 + v; };
  auto facility_node = [&](FacilityId f) { return 1 + n + f; };

  mpz_class two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(inst.k));

  std::size_t covered = 0;
  for (VertexId v = 0; v < n; ++v) {
    net.arcs.push_back({net.source, client_node(v), Scalar(1), 0});
    if (!ranges.covered(v)) continue;
    ++covered;
    bool any = false;
    for (FacilityId f : ranges.shopping[v]) {
      if (cs.class_of_client[v] != cs.class_of_facility[f]) continue;
      net.arcs.push_back({client_node(v), facility_node(f), Scalar(1), 0});
      any = true;
    }
    // Every covered client has an in-class facility in range.
    if (!any)
      throw InternalError("favoring_profile: client without in-class arc");
  }
  for (FacilityId f = 0; f < inst.k; ++f) {
    mpz_class extra_cost;
    mpz_ui_pow_ui(extra_cost.get_mpz_t(), 2,
                  static_cast<unsigned long>(inst.k - position[f]));
    Scalar floor_cap(mpq_class(cs.of_facility(f).avg_load.floor()));
    net.arcs.push_back({facility_node(f), net.sink, floor_cap, two_k});
    net.arcs.push_back({facility_node(f), net.sink, Scalar(1), extra_cost});
  }

  FlowResult flow = max_cost_flow(net);
  if (flow.value != Scalar(static_cast<long>(covered)))
    throw InternalError("favoring_profile: flow failed to cover all clients");

  PureAssignment result;
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const FlowArc& arc = net.arcs[i];
    if (arc.from == net.source || arc.to == net.sink) continue;
    if (flow.flow[i] == Scalar(1)) {
      VertexId v = arc.from - 1;
      FacilityId f = arc.to - 1 - n;
      result.assign[v] = f;
    }
  }
  return result;
}

PureAssignment greedy_weighted_equilibrium(const Instance& inst,
                                           const Placement& s) {
  Ranges ranges(inst, s);
  std::vector<VertexId> order;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v)) order.push_back(v);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (inst.graph.weight[a] != inst.graph.weight[b])
      return inst.graph.weight[b] < inst.graph.weight[a];
    return a < b;
  });

  PureAssignment result;
  std::vector<Scalar> load(inst.k);
  for (VertexId v : order) {
    FacilityId pick = ranges.shopping[v][0];
    for (FacilityId f : ranges.shopping[v])
      if (load[f] < load[pick]) pick = f;
    result.assign[v] = pick;
    load[pick] += inst.graph.weight[v];
  }

  // Settle: let clients best-respond (lowest client id first, then lowest
  // facility id) until no strict improvement remains. Each move strictly
  // lowers the sorted load vector lexicographically from the top, so this
  // terminates.
  for (;;) {
    bool moved = false;
    for (VertexId v : order) {
      FacilityId cur = result.assign.at(v);
      Scalar here = load[cur] - inst.graph.weight[v];
      FacilityId better = -1;
      for (FacilityId f : ranges.shopping[v])
        if (load[f] < here && (better < 0 || load[f] < load[better])) better = f;
      if (better >= 0) {
        load[cur] -= inst.graph.weight[v];
        load[better] += inst.graph.weight[v];
        result.assign[v] = better;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return result;
}

namespace {

struct PatternWorkspace {
  std::vector<VertexId> clients;                    // covered, ascending
  std::vector<std::vector<FacilityId>> ranges_of;   // shopping range each
};

EquilibriumPolytope build_polytope(const Instance& inst,
                                   const PatternWorkspace& ws,
                                   const SupportPattern& pattern) {
  EquilibriumPolytope poly;
  poly.pattern = pattern;
  int next = 0;
  for (std::size_t i = 0; i < ws.clients.size(); ++i) {
    VertexId v = ws.clients[i];
    for (FacilityId f : pattern.support.at(v))
      poly.var_index[{v, f}] = next++;
  }
  poly.system.num_vars = next;

  auto excluded_terms = [&](VertexId v, FacilityId f, const Scalar& sign_) {
    std::vector<std::pair<int, Scalar>> terms;
    for (std::size_t j = 0; j < ws.clients.size(); ++j) {
      VertexId u = ws.clients[j];
      if (u == v) continue;
      auto it = poly.var_index.find({u, f});
      if (it != poly.var_index.end())
        terms.emplace_back(it->second, sign_ * inst.graph.weight[u]);
    }
    return terms;
  };

  for (std::size_t i = 0; i < ws.clients.size(); ++i) {
    VertexId v = ws.clients[i];
    const auto& support = pattern.support.at(v);
    // Probabilities over the support sum to one.
    LinearConstraint sum_row;
    sum_row.rel = LinearConstraint::kEq;
    sum_row.rhs = Scalar(1);
    for (FacilityId f : support)
      sum_row.terms.emplace_back(poly.var_index.at({v, f}), Scalar(1));
    poly.system.rows.push_back(std::move(sum_row));

    // Equal excluded loads across the support.
    for (std::size_t a = 0; a + 1 < support.size(); ++a) {
      LinearConstraint eq;
      eq.rel = LinearConstraint::kEq;
      eq.rhs = Scalar();
      for (auto& t : excluded_terms(v, support[a], Scalar(1)))
        eq.terms.push_back(t);
      for (auto& t : excluded_terms(v, support[a + 1], Scalar(-1)))
        eq.terms.push_back(t);
      poly.system.rows.push_back(std::move(eq));
    }

    // Nothing outside the support may be strictly cheaper.
    for (FacilityId f : support) {
      for (FacilityId g : ws.ranges_of[i]) {
        if (std::find(support.begin(), support.end(), g) != support.end())
          continue;
        LinearConstraint le;
        le.rel = LinearConstraint::kLe;
        le.rhs = Scalar();
        for (auto& t : excluded_terms(v, f, Scalar(1))) le.terms.push_back(t);
        for (auto& t : excluded_terms(v, g, Scalar(-1))) le.terms.push_back(t);
        poly.system.rows.push_back(std::move(le));
      }
    }
  }
  return poly;
}

ClientProfile point_to_profile(const Instance& inst,
                               const EquilibriumPolytope& poly,
                               const std::vector<Scalar>& x) {
  ClientProfile sigma = zero_profile(inst);
  for (const auto& [key, index] : poly.var_index)
    sigma.prob[key.first][key.second] = x[index];
  return sigma;
}

// Polytope containment, exactly: every constraint of `outer` (including its
// implicit zero-fixings) must hold over all of `inner`.
bool contained_in(const EquilibriumPolytope& inner,
                  const EquilibriumPolytope& outer) {
  // A variable of inner that outer fixes to zero must be identically zero.
  for (const auto& [key, index] : inner.var_index) {
    if (outer.var_index.count(key)) continue;
    LpOptimum best = maximize(inner.system, {{index, Scalar(1)}});
    if (!best.feasible) return true;  // empty polytope is contained anywhere
    if (!best.bounded || best.value.sign() > 0) return false;
  }
  auto translate = [&](const LinearConstraint& row)
      -> std::optional<std::vector<std::pair<int, Scalar>>> {
    std::vector<std::pair<int, Scalar>> terms;
    for (const auto& [outer_var, coeff] : row.terms) {
      // Find the (v, f) key of this outer variable.
      for (const auto& [key, index] : outer.var_index) {
        if (index != outer_var) continue;
        auto it = inner.var_index.find(key);
        if (it == inner.var_index.end()) {
          // Variable fixed to zero inside inner: drop the term.
        } else {
          terms.emplace_back(it->second, coeff);
        }
        break;
      }
    }
    return terms;
  };
  for (const LinearConstraint& row : outer.system.rows) {
    auto terms = translate(row);
    if (!terms) return false;
    // max of (terms - rhs) must be <= 0; for equalities also the min >= 0.
    LpOptimum hi = maximize(inner.system, *terms);
    if (!hi.feasible) return true;
    if (!hi.bounded || hi.value > row.rhs) return false;
    if (row.rel == LinearConstraint::kEq) {
      std::vector<std::pair<int, Scalar>> negated;
      for (auto& [var, coeff] : *terms) negated.emplace_back(var, -coeff);
      LpOptimum lo = maximize(inner.system, negated);
      if (!lo.bounded || lo.value > -row.rhs) return false;
    }
  }
  return true;
}

}  // namespace

bool EquilibriumPolytope::contains(const Instance& inst,
                                   const ClientProfile& sigma) const {
  // All probability mass must sit on pattern variables.
  std::vector<Scalar> x(system.num_vars);
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
    for (FacilityId f = 0; f < inst.k; ++f) {
      const Scalar& p = sigma.prob[v][f];
      auto it = var_index.find({v, f});
      if (it == var_index.end()) {
        if (!p.is_zero()) return false;
      } else {
        if (p.sign() < 0) return false;
        x[it->second] = p;
      }
    }
  }
  for (const LinearConstraint& row : system.rows) {
    Scalar lhs;
    for (const auto& [var, coeff] : row.terms) lhs += coeff * x[var];
    if (row.rel == LinearConstraint::kEq && lhs != row.rhs) return false;
    if (row.rel == LinearConstraint::kLe && lhs > row.rhs) return false;
  }
  return true;
}

std::vector<EquilibriumPolytope> enumerate_equilibria(const Instance& inst,
                                                      const Placement& s,
                                                      const EnumGuard& guard) {
  Ranges ranges(inst, s);
  PatternWorkspace ws;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v)) {
      ws.clients.push_back(v);
      ws.ranges_of.push_back(ranges.shopping[v]);
    }
  if (static_cast<int>(ws.clients.size()) > guard.clients ||
      inst.k > guard.facilities)
    throw GuardError("enumerate_equilibria: micro-only, guard exceeded (" +
                     std::to_string(ws.clients.size()) + " clients, k=" +
                     std::to_string(inst.k) + ")");

  // Enumerate support patterns: per client every nonempty subset of her
  // shopping range.
  std::size_t total = 1;
  for (const auto& range : ws.ranges_of) {
    std::size_t options = (std::size_t{1} << range.size()) - 1;
    if (total > guard.patterns / options)
      throw GuardError("enumerate_equilibria: pattern space exceeds guard");
    total *= options;
  }

  std::vector<EquilibriumPolytope> feasible;
  std::vector<std::size_t> choice(ws.clients.size(), 1);  // subset masks >= 1
  for (;;) {
    SupportPattern pattern;
    for (std::size_t i = 0; i < ws.clients.size(); ++i) {
      std::vector<FacilityId> support;
      for (std::size_t bit = 0; bit < ws.ranges_of[i].size(); ++bit)
        if (choice[i] & (std::size_t{1} << bit))
          support.push_back(ws.ranges_of[i][bit]);
      pattern.support[ws.clients[i]] = std::move(support);
    }
    EquilibriumPolytope poly = build_polytope(inst, ws, pattern);
    if (auto x = find_feasible_point(poly.system)) {
      poly.sample = point_to_profile(inst, poly, *x);
      feasible.push_back(std::move(poly));
    }

    // Advance the mixed-radix counter over subset masks.
    std::size_t i = 0;
    for (; i < ws.clients.size(); ++i) {
      std::size_t limit = (std::size_t{1} << ws.ranges_of[i].size()) - 1;
      if (choice[i] < limit) {
        ++choice[i];
        break;
      }
      choice[i] = 1;
    }
    if (i == ws.clients.size()) break;
  }

  // Drop polytopes contained in another pattern's polytope; among identical
  // polytopes the first (lexicographically smallest pattern) survives.
  std::vector<char> dropped(feasible.size(), 0);
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    for (std::size_t j = 0; j < feasible.size(); ++j) {
      if (i == j || dropped[i] || dropped[j]) continue;
      if (contained_in(feasible[i], feasible[j])) {
        bool mutual = contained_in(feasible[j], feasible[i]);
        if (mutual && i < j) continue;  // keep the earlier of identical ones
        dropped[i] = 1;
        break;
      }
    }
  }
  std::vector<EquilibriumPolytope> result;
  for (std::size_t i = 0; i < feasible.size(); ++i)
    if (!dropped[i]) result.push_back(std::move(feasible[i]));
  return result;
}

}  // namespace flg
