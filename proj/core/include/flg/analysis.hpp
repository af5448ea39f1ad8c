#pragma once
#include <map>
#include <utility>
#include <vector>

#include "flg/game.hpp"
#include "flg/spe.hpp"

namespace flg {

struct WelfareReport {
  Placement opt_placement;
  Scalar opt_weight;
  Scalar state_weight;
  Scalar ratio;  // opt_weight / state_weight
};

/// Exhaustive search for the placement with maximum participation weight;
/// ties go to the lexicographically smallest placement. Guarded by the
/// product of the allowed-set sizes.
std::pair<Placement, Scalar> optimum_placement(const Instance& inst,
                                               unsigned long guard = 1000000);

/// Participation ratio of the optimum against a verified exact-SPE
/// certificate. Refuses certificates that do not verify at alpha = 1; the
/// ratio never exceeds 2 and this is asserted.
WelfareReport poa_certificate(const Instance& inst,
                              const PartialCertificate& cert);

/// For each vertex v allowed to facility f: the total client weight f can
/// attract when placed on v (independent of the other facilities).
std::map<VertexId, Scalar> reach_table(const Instance& inst, FacilityId f);

/// CNF formula with 1-based variable indices; negative literal = negated.
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const;  // requires >= 4 clauses, no padding
};

/// Instance construction from a CNF formula, for approximation ratios
/// strictly between 1 and the golden ratio. Component one holds assignment,
/// clause, and buffer clients of uniform weight m/(m(t+2)-1); component two
/// is the six-vertex golden-ratio gadget; component three a two-vertex
/// escape gadget. m+2 facilities with the gadget-specific restrictions.
Instance reduce_sat(const CnfFormula& formula, const Scalar& alpha,
                    const Scalar& epsilon);

}  // namespace flg
