#include "flg/spe.hpp"

#include <algorithm>

#include "flg/errors.hpp"

namespace flg {

namespace {

void require_unweighted(const Instance& inst, const char* what) {
  for (const Scalar& w : inst.graph.weight)
    if (w != Scalar(1))
      throw UnsupportedError(std::string(what) +
                             ": defined for unit client weights only");
}

Placement deviate(const Placement& s, FacilityId f, VertexId target) {
  Placement dev = s;
  dev.at[f] = target;
  return dev;
}

std::string placement_str(const Instance& inst, const Placement& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.at.size(); ++i) {
    if (i) out += ", ";
    out += inst.graph.names[s.at[i]];
  }
  return out + ")";
}

}  // namespace

Alpha::Alpha(Scalar v) : value(std::move(v)) {
  if (value < Scalar(1)) throw InputError("alpha must be at least 1");
}

const ClientProfile& PartialCertificate::at(const Placement& s) const {
  auto it = profile_at.find(s);
  if (it == profile_at.end())
    throw InputError("certificate: missing profile for a deviation placement");
  return it->second;
}

PartialCertificate certificate_from_policy(const Instance& inst,
                                           const Placement& base,
                                           const FullProfilePolicy& policy) {
  PartialCertificate cert;
  cert.base = base;
  cert.policy = policy.kind;
  cert.profile_at[base] = policy(inst, base);
  for (FacilityId f = 0; f < inst.k; ++f)
    for (VertexId u : inst.allowed[f]) {
      Placement dev = deviate(base, f, u);
      if (!cert.profile_at.count(dev)) cert.profile_at[dev] = policy(inst, dev);
    }
  return cert;
}

std::vector<ImprovingMove> improving_moves(const Instance& inst,
                                           const Placement& s,
                                           const FullProfilePolicy& policy,
                                           const Alpha& alpha) {
  std::map<Placement, LoadReport> cache;
  auto loads_at = [&](const Placement& p) -> const LoadReport& {
    auto it = cache.find(p);
    if (it == cache.end())
      it = cache.emplace(p, facility_loads(inst, p, policy(inst, p))).first;
    return it->second;
  };

  const LoadReport& base = loads_at(s);
  std::vector<ImprovingMove> moves;
  for (FacilityId f = 0; f < inst.k; ++f)
    for (VertexId u : inst.allowed[f]) {
      if (u == s.at[f]) continue;
      const LoadReport& dev = loads_at(deviate(s, f, u));
      if (dev.load[f] > alpha.value * base.load[f])
        moves.push_back({f, u, base.load[f], dev.load[f]});
    }
  return moves;
}

FullProfilePolicy rounded_policy() {
  return {"rounded", [](const Instance& inst, const Placement& s) {
            return rounded_profile(inst, s, class_set(inst, s))
                .to_profile(inst);
          }};
}

FullProfilePolicy favoring_policy(std::vector<int> pi) {
  std::string kind = "pi-favoring(";
  for (std::size_t i = 0; i < pi.size(); ++i)
    kind += (i ? "," : "") + std::to_string(pi[i]);
  kind += ")";
  return {kind, [pi = std::move(pi)](const Instance& inst, const Placement& s) {
            return favoring_profile(inst, s, pi).to_profile(inst);
          }};
}

FullProfilePolicy greedy_policy() {
  return {"greedy-weighted", [](const Instance& inst, const Placement& s) {
            return greedy_weighted_equilibrium(inst, s).to_profile(inst);
          }};
}

FullProfilePolicy uniform_policy() {
  return {"uniform", [](const Instance& inst, const Placement& s) {
            Ranges ranges(inst, s);
            ClientProfile sigma = zero_profile(inst);
            for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
              if (!ranges.covered(v)) continue;
              Scalar share =
                  Scalar(1) /
                  Scalar(static_cast<long>(ranges.shopping[v].size()));
              for (FacilityId f : ranges.shopping[v]) sigma.prob[v][f] = share;
            }
            return sigma;
          }};
}

SpeResult find_spe(const Instance& inst) {
  require_unweighted(inst, "find_spe");
  inst.validate();

  Placement s;
  for (FacilityId f = 0; f < inst.k; ++f) s.at.push_back(inst.allowed[f][0]);
  FullProfilePolicy policy = rounded_policy();

  // Termination is guaranteed; the cap only turns a broken potential into a
  // loud failure instead of a hang.
  mpz_class cap = 1;
  for (int i = 0; i < inst.k; ++i) cap *= inst.graph.vertex_count();
  cap *= inst.k;
  cap *= inst.graph.vertex_count();

  DynamicsTrace trace;
  for (;;) {
    if (mpz_class(static_cast<unsigned long>(trace.iterations)) > cap)
      throw InternalError("find_spe: iteration cap exceeded");
    std::vector<ImprovingMove> moves =
        improving_moves(inst, s, policy, Alpha::exact());
    if (moves.empty()) break;
    ++trace.iterations;

    const ImprovingMove& move = moves.front();
    Placement next = deviate(s, move.facility, move.target);
    LoadReport before = facility_loads(inst, s, policy(inst, s));
    LoadReport after = facility_loads(inst, next, policy(inst, next));
    if (trace.iterations > 1 && !lex_less(before.sorted, after.sorted))
      throw InternalError("find_spe: sorted loads did not increase");

    // New favoring order: nonincreasing loads at the new state, ties by id.
    std::vector<int> pi(inst.k);
    for (int f = 0; f < inst.k; ++f) pi[f] = f;
    std::stable_sort(pi.begin(), pi.end(), [&](int a, int b) {
      if (after.load[a] != after.load[b]) return after.load[b] < after.load[a];
      return a < b;
    });
    FullProfilePolicy next_policy = favoring_policy(pi);
    LoadReport switched =
        facility_loads(inst, next, next_policy(inst, next));
    if (switched.sorted != after.sorted)
      throw InternalError("find_spe: policy switch changed the sorted loads");

    trace.steps.push_back({move.facility, s.at[move.facility], move.target,
                           before.sorted, after.sorted, pi});
    s = next;
    policy = next_policy;
  }

  SpeResult result;
  result.placement = s;
  result.certificate = certificate_from_policy(inst, s, policy);
  result.trace = std::move(trace);
  return result;
}

SpeVerdict verify_spe(const Instance& inst, const PartialCertificate& cert,
                      const Alpha& alpha) {
  // Condition (1): every stored profile is a client equilibrium.
  for (const auto& [placement, profile] : cert.profile_at) {
    EquilibriumVerdict verdict =
        verify_client_equilibrium(inst, placement, profile);
    if (!verdict.ok)
      return {false, std::nullopt,
              "profile at " + placement_str(inst, placement) +
                  " is not a client equilibrium"};
  }
  // Condition (2): no deviation beats alpha times the current load.
  LoadReport base = facility_loads(inst, cert.base, cert.at(cert.base));
  for (FacilityId f = 0; f < inst.k; ++f)
    for (VertexId u : inst.allowed[f]) {
      if (u == cert.base.at[f]) continue;
      Placement dev = deviate(cert.base, f, u);
      LoadReport loads = facility_loads(inst, dev, cert.at(dev));
      if (loads.load[f] > alpha.value * base.load[f]) {
        SpeVerdict::Witness witness{f, u, base.load[f], loads.load[f],
                                    std::nullopt};
        if (base.load[f].sign() > 0)
          witness.factor = loads.load[f] / base.load[f];
        return {false, witness, ""};
      }
    }
  return {true, std::nullopt, ""};
}

std::pair<Placement, PartialCertificate> k_approx_spe(const Instance& inst) {
  inst.validate();
  Placement base;
  for (FacilityId f = 0; f < inst.k; ++f) {
    VertexId best = inst.allowed[f][0];
    Scalar best_reach;
    bool first = true;
    for (VertexId v : inst.allowed[f]) {
      Scalar reach = inst.graph.weight[v];
      for (VertexId u : inst.graph.in[v]) reach += inst.graph.weight[u];
      if (first || best_reach < reach) {
        best = v;
        best_reach = reach;
        first = false;
      }
    }
    base.at.push_back(best);
  }

  FullProfilePolicy uniform = uniform_policy();
  FullProfilePolicy greedy = greedy_policy();
  PartialCertificate cert;
  cert.base = base;
  cert.policy = "k-approx(uniform base, greedy deviations)";
  cert.profile_at[base] = uniform(inst, base);
  for (FacilityId f = 0; f < inst.k; ++f)
    for (VertexId u : inst.allowed[f]) {
      Placement dev = deviate(base, f, u);
      if (!cert.profile_at.count(dev)) cert.profile_at[dev] = greedy(inst, dev);
    }
  return {base, cert};
}

namespace {

struct Slot {
  Placement placement;
  FacilityId mover = -1;  // -1 for the base slot
  const std::vector<EquilibriumPolytope>* patterns = nullptr;
};

}  // namespace

SpeExistsResult spe_exists(const Instance& inst, const Alpha& alpha,
                           const SpeExistsGuard& guard) {
  inst.validate();
  mpz_class fpp_count = 1;
  for (FacilityId f = 0; f < inst.k; ++f) fpp_count *= inst.allowed[f].size();
  if (fpp_count > static_cast<unsigned long>(guard.fpps))
    throw GuardError("spe_exists: placement space exceeds guard (" +
                     fpp_count.get_str() + " placements)");

  std::map<Placement, std::vector<EquilibriumPolytope>> pattern_cache;
  auto patterns_of =
      [&](const Placement& p) -> const std::vector<EquilibriumPolytope>& {
    auto it = pattern_cache.find(p);
    if (it == pattern_cache.end())
      it = pattern_cache.emplace(p, enumerate_equilibria(inst, p, guard.eq))
               .first;
    return it->second;
  };

  SpeExistsResult result;

  // Iterate base placements lexicographically.
  std::vector<std::size_t> index(inst.k, 0);
  for (;;) {
    Placement base;
    for (FacilityId f = 0; f < inst.k; ++f)
      base.at.push_back(inst.allowed[f][index[f]]);

    std::vector<Slot> slots;
    slots.push_back({base, -1, &patterns_of(base)});
    for (FacilityId f = 0; f < inst.k; ++f)
      for (VertexId u : inst.allowed[f]) {
        if (u == base.at[f]) continue;
        Placement dev = deviate(base, f, u);
        slots.push_back({dev, f, &patterns_of(dev)});
      }

    mpz_class combos = 1;
    for (const Slot& slot : slots) combos *= slot.patterns->size();
    if (combos > static_cast<unsigned long>(guard.combinations))
      throw GuardError("spe_exists: pattern combinations exceed guard at " +
                       placement_str(inst, base));

    bool stabilizable = false;
    if (combos > 0) {
      std::vector<std::size_t> pick(slots.size(), 0);
      for (;;) {
        // Assemble the joint feasibility system over all chosen polytopes.
        LinearSystem joint;
        std::vector<int> offset(slots.size(), 0);
        for (std::size_t i = 0; i < slots.size(); ++i) {
          const EquilibriumPolytope& poly = (*slots[i].patterns)[pick[i]];
          offset[i] = joint.num_vars;
          joint.num_vars += poly.system.num_vars;
          for (LinearConstraint row : poly.system.rows) {
            for (auto& [var, coeff] : row.terms) var += offset[i];
            joint.rows.push_back(std::move(row));
          }
        }
        const EquilibriumPolytope& base_poly = (*slots[0].patterns)[pick[0]];
        for (std::size_t i = 1; i < slots.size(); ++i) {
          const EquilibriumPolytope& dev_poly = (*slots[i].patterns)[pick[i]];
          FacilityId f = slots[i].mover;
          // Load of the mover after deviating, at most alpha times before.
          LinearConstraint row;
          row.rel = LinearConstraint::kLe;
          row.rhs = Scalar();
          for (const auto& [key, var] : dev_poly.var_index)
            if (key.second == f)
              row.terms.emplace_back(var + offset[i],
                                     inst.graph.weight[key.first]);
          for (const auto& [key, var] : base_poly.var_index)
            if (key.second == f)
              row.terms.emplace_back(
                  var + offset[0],
                  -(alpha.value * inst.graph.weight[key.first]));
          joint.rows.push_back(std::move(row));
        }

        if (auto x = find_feasible_point(joint)) {
          stabilizable = true;
          PartialCertificate cert;
          cert.base = base;
          cert.policy = "exact-search(joint feasibility sample)";
          for (std::size_t i = 0; i < slots.size(); ++i) {
            const EquilibriumPolytope& poly = (*slots[i].patterns)[pick[i]];
            ClientProfile sigma = zero_profile(inst);
            for (const auto& [key, var] : poly.var_index)
              sigma.prob[key.first][key.second] = (*x)[var + offset[i]];
            cert.profile_at[slots[i].placement] = sigma;
          }
          result.base_profile = cert.profile_at.at(base);
          result.certificate = std::move(cert);
          break;
        }

        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
          if (pick[i] + 1 < slots[i].patterns->size()) {
            ++pick[i];
            break;
          }
          pick[i] = 0;
        }
        if (i == slots.size()) break;
      }
    }

    if (stabilizable) {
      result.exists = true;
      result.witness = base;
      result.summary.push_back(placement_str(inst, base) + ": stabilizable");
      return result;
    }
    result.summary.push_back(placement_str(inst, base) +
                             ": no stabilizable support-pattern combination (" +
                             combos.get_str() + " tried)");

    // Next base placement.
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
  return result;
}

}  // namespace flg
