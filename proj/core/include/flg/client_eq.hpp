#pragma once
#include <map>
#include <optional>
#include <vector>

#include "flg/classes.hpp"
#include "flg/game.hpp"
#include "flg/simplex.hpp"

namespace flg {

/// Pure assignment of every covered client to one facility in her range.
struct PureAssignment {
  std::map<VertexId, FacilityId> assign;

  ClientProfile to_profile(const Instance& inst) const;
  friend bool operator==(const PureAssignment&, const PureAssignment&) = default;
};

/// Rounded client profile for an unweighted instance: per class, assigns
/// clients to facilities of their own class along augmenting paths until
/// every facility load is the floor or ceiling of the class average.
PureAssignment rounded_profile(const Instance& inst, const Placement& s,
                               const ClassSet& cs);

/// True iff every client is assigned inside her class and every facility
/// load is the floor or ceiling of its class average (unweighted only).
bool is_rounded(const Instance& inst, const Placement& s, const ClassSet& cs,
                const PureAssignment& a);

/// Rounded profile lexicographically maximizing the loads in the order
/// given by the permutation pi (pi[i] = facility in position i). Built by
/// integral max-cost flow: every client ships one unit into her class, each
/// facility offers a floor-capacity arc of cost 2^k plus a single extra
/// unit of cost 2^(k - position).
PureAssignment favoring_profile(const Instance& inst, const Placement& s,
                                const std::vector<int>& pi);

/// Pure equilibrium for arbitrary weights: clients in nonincreasing weight
/// order (ties by id) pick a least-loaded facility in range (ties by id),
/// followed by deterministic best-response settling until stable.
PureAssignment greedy_weighted_equilibrium(const Instance& inst,
                                           const Placement& s);

/// Support pattern: the nonempty set of facilities each covered client may
/// randomize over.
struct SupportPattern {
  std::map<VertexId, std::vector<FacilityId>> support;

  friend auto operator<=>(const SupportPattern&, const SupportPattern&) =
      default;
};

/// The (closed) polytope of client equilibria with a given support pattern:
/// simplex conditions per client, equal excluded loads inside the support,
/// and no cheaper facility outside it. Variables are the probabilities
/// prob(v, f) for f in the client's shopping range, indexed by `var_index`.
struct EquilibriumPolytope {
  SupportPattern pattern;
  LinearSystem system;
  std::map<std::pair<VertexId, FacilityId>, int> var_index;
  std::optional<ClientProfile> sample;

  bool contains(const Instance& inst, const ClientProfile& sigma) const;
};

struct EnumGuard {
  int clients = 8;
  int facilities = 3;
  std::size_t patterns = 1u << 20;
};

/// All client equilibria of (inst, s) as a union of support-pattern
/// polytopes. Infeasible patterns are dropped; a pattern whose polytope is
/// contained in another returned pattern's polytope is dropped as well, so
/// the union is irredundant yet still covers the full equilibrium set.
std::vector<EquilibriumPolytope> enumerate_equilibria(const Instance& inst,
                                                      const Placement& s,
                                                      const EnumGuard& guard);

}  // namespace flg
