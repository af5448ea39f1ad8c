#include "flg/analysis.hpp"

#include <algorithm>

#include "flg/errors.hpp"
#include "flg/instances.hpp"

namespace flg {

std::pair<Placement, Scalar> optimum_placement(const Instance& inst,
                                               unsigned long guard) {
  inst.validate();
  mpz_class count = 1;
  for (FacilityId f = 0; f < inst.k; ++f) count *= inst.allowed[f].size();
  if (count > guard)
    throw GuardError("optimum_placement: " + count.get_str() +
                     " placements exceed the guard");

  std::vector<std::size_t> index(inst.k, 0);
  Placement best;
  Scalar best_weight;
  bool first = true;
  for (;;) {
    Placement s;
    for (FacilityId f = 0; f < inst.k; ++f)
      s.at.push_back(inst.allowed[f][index[f]]);
    Scalar weight = participation_weight(inst, s);
    // Strictly better weight wins; the lexicographic iteration order makes
    // the first maximum the lexicographically smallest one.
    if (first || best_weight < weight) {
      best = s;
      best_weight = weight;
      first = false;
    }
    int f = inst.k - 1;
    for (; f >= 0; --f) {
      if (index[f] + 1 < inst.allowed[f].size()) {
        ++index[f];
        break;
      }
      index[f] = 0;
    }
    if (f < 0) break;
  }
  return {best, best_weight};
}

WelfareReport poa_certificate(const Instance& inst,
                              const PartialCertificate& cert) {
  SpeVerdict verdict = verify_spe(inst, cert, Alpha::exact());
  if (!verdict.ok)
    throw InputError(
        "poa_certificate: certificate does not verify at alpha = 1; the "
        "ratio is undefined for non-equilibria");
  WelfareReport report;
  auto [opt, opt_weight] = optimum_placement(inst);
  report.opt_placement = opt;
  report.opt_weight = opt_weight;
  report.state_weight = participation_weight(inst, cert.base);
  // Every vertex hosts a positive-weight client, so any placement covers at
  // least its own locations.
  if (report.state_weight.sign() <= 0)
    throw InternalError("poa_certificate: zero participation at an SPE");
  report.ratio = report.opt_weight / report.state_weight;
  if (report.ratio > Scalar(2))
    throw InternalError("poa_certificate: ratio above 2 on a verified SPE");
  return report;
}

std::map<VertexId, Scalar> reach_table(const Instance& inst, FacilityId f) {
  if (f < 0 || f >= inst.k)
    throw InputError("reach_table: facility index out of range");
  std::map<VertexId, Scalar> reach;
  for (VertexId v : inst.allowed[f]) {
    Scalar sum = inst.graph.weight[v];
    for (VertexId u : inst.graph.in[v]) sum += inst.graph.weight[u];
    reach[v] = sum;
  }
  return reach;
}

void CnfFormula::validate() const {
  if (variables < 1) throw InputError("cnf: need at least one variable");
  // The construction assumes at least four clauses; smaller formulas are
  // rejected rather than silently padded.
  if (clauses.size() < 4)
    throw InputError("cnf: need at least 4 clauses, got " +
                     std::to_string(clauses.size()));
  for (const auto& clause : clauses) {
    if (clause.empty()) throw InputError("cnf: empty clause");
    for (int literal : clause) {
      int var = literal > 0 ? literal : -literal;
      if (var < 1 || var > variables)
        throw InputError("cnf: literal out of range: " +
                         std::to_string(literal));
    }
  }
}

Instance reduce_sat(const CnfFormula& formula, const Scalar& alpha,
                    const Scalar& epsilon) {
  formula.validate();
  const Scalar phi = Scalar::golden_ratio();
  if (!(alpha > Scalar(1)) || !(alpha < phi))
    throw InputError("reduce_sat: alpha must lie strictly between 1 and phi");
  if (epsilon.sign() <= 0 || !(epsilon < Scalar(2) - Scalar(2) / phi))
    throw InputError("reduce_sat: epsilon out of range");
  // The six-vertex gadget defeats every approximation factor up to
  // phi(1 - epsilon/2); alpha must stay below that.
  if (!(alpha < phi * (Scalar(1) - epsilon / Scalar(2))))
    throw InputError(
        "reduce_sat: alpha must be below phi*(1 - epsilon/2); pick a smaller "
        "epsilon");

  const int m = formula.variables;
  const int t = static_cast<int>(formula.clauses.size());

  // Component two is the six-vertex golden-ratio gadget verbatim; the
  // escape gadget (v7, v8) and the formula component follow.
  Instance inst;
  inst.graph = make_fig5_right(epsilon).graph;
  HostGraph& g = inst.graph;
  VertexId v1 = 0, v2 = 1, v3 = 2, v4 = 3, v5 = 4, v6 = 5;

  VertexId v7 = g.add_vertex("v7", alpha);
  VertexId v8 = g.add_vertex("v8", Scalar(2) / (phi * alpha));
  g.add_edge(v7, v8);

  const Scalar unit =
      Scalar(m) / Scalar(static_cast<long>(m) * (t + 2) - 1);
  std::vector<VertexId> yes, no, clause_v, buffer;
  for (int i = 1; i <= m; ++i)
    yes.push_back(g.add_vertex("y" + std::to_string(i), unit));
  for (int i = 1; i <= m; ++i)
    no.push_back(g.add_vertex("n" + std::to_string(i), unit));
  for (int j = 1; j <= t; ++j)
    clause_v.push_back(g.add_vertex("c" + std::to_string(j), unit));
  for (int b = 0; b < (m - 1) * t; ++b)
    buffer.push_back(g.add_vertex("b" + std::to_string(b + 1), unit));

  for (int i = 0; i < m; ++i) {
    g.add_edge(no[i], yes[i]);
    g.add_edge(yes[i], no[i]);
  }
  for (VertexId b : buffer) {
    for (VertexId y : yes) g.add_edge(b, y);
    for (VertexId n : no) g.add_edge(b, n);
  }
  for (int j = 0; j < t; ++j)
    for (int literal : formula.clauses[j]) {
      int var = literal > 0 ? literal : -literal;
      g.add_edge(clause_v[j], literal > 0 ? yes[var - 1] : no[var - 1]);
    }

  // Facilities: m movable ones over the formula component plus v7, then the
  // two gadget facilities.
  std::vector<VertexId> formula_vertices;
  for (VertexId v : yes) formula_vertices.push_back(v);
  for (VertexId v : no) formula_vertices.push_back(v);
  for (VertexId v : clause_v) formula_vertices.push_back(v);
  for (VertexId v : buffer) formula_vertices.push_back(v);

  inst.k = m + 2;
  std::vector<VertexId> q_allowed = formula_vertices;
  q_allowed.push_back(v7);
  std::sort(q_allowed.begin(), q_allowed.end());
  for (int i = 0; i < m; ++i) inst.allowed.push_back(q_allowed);
  inst.allowed.push_back({v1, v2, v3, v4, v5, v6});            // facility g
  inst.allowed.push_back({v1, v2, v3, v4, v5, v6, v8});        // facility h
  inst.validate();
  return inst;
}

}  // namespace flg
