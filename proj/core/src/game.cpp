#include "flg/game.hpp"

#include <algorithm>

#include "flg/errors.hpp"

namespace flg {

VertexId HostGraph::add_vertex(std::string name, Scalar w) {
  if (w.sign() <= 0)
    throw InputError("vertex \"" + name + "\": weight must be positive");
  if (find(name)) throw InputError("duplicate vertex id \"" + name + "\"");
  names.push_back(std::move(name));
  weight.push_back(std::move(w));
  out.emplace_back();
  in.emplace_back();
  return vertex_count() - 1;
}

void HostGraph::add_edge(VertexId from, VertexId to) {
  if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
    throw InputError("edge endpoint unknown");
  if (from == to) throw InputError("self-loops are implicit, not stored");
  if (has_edge(from, to)) return;
  out[from].insert(std::lower_bound(out[from].begin(), out[from].end(), to), to);
  in[to].insert(std::lower_bound(in[to].begin(), in[to].end(), from), from);
}

bool HostGraph::has_edge(VertexId from, VertexId to) const {
  if (from < 0 || from >= vertex_count()) return false;
  return std::binary_search(out[from].begin(), out[from].end(), to);
}

std::optional<VertexId> HostGraph::find(const std::string& name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (names[v] == name) return v;
  return std::nullopt;
}

Scalar HostGraph::total_weight() const {
  Scalar sum;
  for (const Scalar& w : weight) sum += w;
  return sum;
}

void Instance::validate() const {
  if (k <= 0) throw InputError("instance: k must be positive");
  if (static_cast<int>(allowed.size()) != k)
    throw InputError("instance: allowed must have exactly k entries");
  for (int f = 0; f < k; ++f) {
    if (allowed[f].empty())
      throw InputError("facility " + std::to_string(f) + ": empty allowed set");
    for (VertexId v : allowed[f])
      if (v < 0 || v >= graph.vertex_count())
        throw InputError("facility " + std::to_string(f) +
                         ": allowed vertex out of range");
    if (!std::is_sorted(allowed[f].begin(), allowed[f].end()))
      throw InputError("facility " + std::to_string(f) +
                       ": allowed set must be sorted");
  }
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (graph.weight[v].sign() <= 0)
      throw InputError("vertex " + graph.names[v] + ": weight must be positive");
}

bool Instance::unrestricted() const {
  for (const auto& set : allowed)
    if (static_cast<int>(set.size()) != graph.vertex_count()) return false;
  return true;
}

namespace {

void check_placement(const Instance& inst, const Placement& s) {
  if (static_cast<int>(s.at.size()) != inst.k)
    throw InputError("placement: expected one vertex per facility");
  for (int f = 0; f < inst.k; ++f)
    if (!std::binary_search(inst.allowed[f].begin(), inst.allowed[f].end(),
                            s.at[f]))
      throw InputError("placement: facility " + std::to_string(f) +
                       " not on an allowed vertex");
}

}  // namespace

std::vector<FacilityId> shopping_range(const Instance& inst, const Placement& s,
                                       VertexId v) {
  if (v < 0 || v >= inst.graph.vertex_count())
    throw InputError("shopping_range: unknown vertex id");
  check_placement(inst, s);
  std::vector<FacilityId> range;
  for (int f = 0; f < inst.k; ++f)
    if (s.at[f] == v || inst.graph.has_edge(v, s.at[f])) range.push_back(f);
  return range;
}

std::vector<VertexId> attraction_range(const Instance& inst, const Placement& s,
                                       FacilityId f) {
  if (f < 0 || f >= inst.k)
    throw InputError("attraction_range: facility index out of range");
  check_placement(inst, s);
  VertexId loc = s.at[f];
  std::vector<VertexId> range;
  range.push_back(loc);
  for (VertexId u : inst.graph.in[loc]) range.push_back(u);
  std::sort(range.begin(), range.end());
  return range;
}

Ranges::Ranges(const Instance& inst, const Placement& s) {
  check_placement(inst, s);
  int n = inst.graph.vertex_count();
  shopping.assign(n, {});
  attraction.assign(inst.k, {});
  for (int f = 0; f < inst.k; ++f) {
    VertexId loc = s.at[f];
    shopping[loc].push_back(f);
    attraction[f].push_back(loc);
    for (VertexId u : inst.graph.in[loc]) {
      shopping[u].push_back(f);
      attraction[f].push_back(u);
    }
  }
  for (auto& fs : shopping) std::sort(fs.begin(), fs.end());
  for (auto& vs : attraction) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  }
}

bool ClientProfile::pure() const {
  for (const auto& row : prob)
    for (const Scalar& p : row)
      if (!p.is_zero() && p != Scalar(1)) return false;
  return true;
}

ClientProfile zero_profile(const Instance& inst) {
  ClientProfile sigma;
  sigma.prob.assign(inst.graph.vertex_count(),
                    std::vector<Scalar>(inst.k, Scalar()));
  return sigma;
}

void check_feasible(const Instance& inst, const Placement& s,
                    const ClientProfile& sigma) {
  int n = inst.graph.vertex_count();
  if (static_cast<int>(sigma.prob.size()) != n)
    throw FeasibilityError("profile: row count does not match vertex count");
  Ranges ranges(inst, s);
  for (VertexId v = 0; v < n; ++v) {
    const auto& row = sigma.prob[v];
    if (static_cast<int>(row.size()) != inst.k)
      throw FeasibilityError("profile: row width does not match k");
    Scalar sum;
    for (int f = 0; f < inst.k; ++f) {
      if (row[f].sign() < 0 || row[f] > Scalar(1))
        throw FeasibilityError("client " + inst.graph.names[v] +
                               ": probability outside [0,1]");
      if (!row[f].is_zero() &&
          !std::binary_search(ranges.shopping[v].begin(),
                              ranges.shopping[v].end(), f))
        throw FeasibilityError(
            "client " + inst.graph.names[v] +
            ": condition (i) violated, positive probability on facility " +
            std::to_string(f) + " outside the shopping range");
      sum += row[f];
    }
    if (ranges.covered(v)) {
      if (sum != Scalar(1))
        throw FeasibilityError("client " + inst.graph.names[v] +
                               ": condition (ii) violated, probabilities sum "
                               "to " + sum.str() + " instead of 1");
    } else if (!sum.is_zero()) {
      throw FeasibilityError("client " + inst.graph.names[v] +
                             ": uncovered client must have an all-zero row");
    }
  }
}

LoadReport facility_loads(const Instance& inst, const Placement& s,
                          const ClientProfile& sigma) {
  check_feasible(inst, s, sigma);
  LoadReport report;
  report.load.assign(inst.k, Scalar());
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    for (int f = 0; f < inst.k; ++f)
      if (!sigma.prob[v][f].is_zero())
        report.load[f] += sigma.prob[v][f] * inst.graph.weight[v];
  report.sorted = report.load;
  std::sort(report.sorted.begin(), report.sorted.end());
  report.participation = participation_weight(inst, s);
  return report;
}

Scalar excluded_load(const Instance& inst, const Placement& s,
                     const ClientProfile& sigma, VertexId v, FacilityId f) {
  if (f < 0 || f >= inst.k)
    throw InputError("excluded_load: facility index out of range");
  if (v < 0 || v >= inst.graph.vertex_count())
    throw InputError("excluded_load: unknown vertex id");
  check_feasible(inst, s, sigma);
  Scalar sum;
  for (VertexId u = 0; u < inst.graph.vertex_count(); ++u)
    if (u != v && !sigma.prob[u][f].is_zero())
      sum += sigma.prob[u][f] * inst.graph.weight[u];
  return sum;
}

Scalar waiting_time(const Instance& inst, const Placement& s,
                    const ClientProfile& sigma, VertexId v) {
  check_feasible(inst, s, sigma);
  std::vector<FacilityId> range = shopping_range(inst, s, v);
  if (range.empty())
    throw UnsupportedError("waiting_time: client " + inst.graph.names[v] +
                           " is uncovered; the model assigns no waiting time");
  Scalar time = inst.graph.weight[v];
  for (FacilityId f : range)
    if (!sigma.prob[v][f].is_zero())
      time += sigma.prob[v][f] * excluded_load(inst, s, sigma, v, f);
  return time;
}

Scalar participation_weight(const Instance& inst, const Placement& s) {
  Ranges ranges(inst, s);
  Scalar sum;
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v)
    if (ranges.covered(v)) sum += inst.graph.weight[v];
  return sum;
}

EquilibriumVerdict verify_client_equilibrium(const Instance& inst,
                                             const Placement& s,
                                             const ClientProfile& sigma) {
  check_feasible(inst, s, sigma);
  Ranges ranges(inst, s);
  LoadReport report = facility_loads(inst, s, sigma);
  for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
    if (!ranges.covered(v)) continue;
    // v-excluded load of f = load[f] - prob(v,f) * w(v).
    std::vector<Scalar> excluded(ranges.shopping[v].size());
    for (std::size_t i = 0; i < ranges.shopping[v].size(); ++i) {
      FacilityId f = ranges.shopping[v][i];
      excluded[i] = report.load[f] - sigma.prob[v][f] * inst.graph.weight[v];
    }
    Scalar best = excluded[0];
    for (const Scalar& e : excluded)
      if (e < best) best = e;
    for (std::size_t i = 0; i < ranges.shopping[v].size(); ++i) {
      FacilityId f = ranges.shopping[v][i];
      if (sigma.prob[v][f].is_zero() || excluded[i] == best) continue;
      for (std::size_t j = 0; j < ranges.shopping[v].size(); ++j) {
        if (excluded[j] < excluded[i]) {
          return {false, EquilibriumVerdict::Witness{
                             v, f, ranges.shopping[v][j]}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<Scalar> pi_loads(const LoadReport& report,
                             const std::vector<int>& pi) {
  int k = static_cast<int>(report.load.size());
  if (static_cast<int>(pi.size()) != k)
    throw InputError("pi_loads: permutation has wrong length");
  std::vector<bool> seen(k, false);
  for (int f : pi) {
    if (f < 0 || f >= k || seen[f])
      throw InputError("pi_loads: not a bijection on facilities");
    seen[f] = true;
  }
  std::vector<Scalar> result(k);
  for (int i = 0; i < k; ++i) result[i] = report.load[pi[i]];
  return result;
}

}  // namespace flg
