#pragma once
#include <vector>

#include "flg/game.hpp"

namespace flg {

/// One class of the hierarchical partition: a facility set, the clients it
/// absorbs, and the exact average load w(V_i) / |F_i|.
struct ClassInfo {
  std::vector<FacilityId> facilities;
  std::vector<VertexId> clients;
  Scalar avg_load;
};

/// Ordered partition of facilities and covered clients with strictly
/// increasing average loads. Uncovered clients map to class -1.
struct ClassSet {
  std::vector<ClassInfo> classes;
  std::vector<int> class_of_facility;  // size k
  std::vector<int> class_of_client;    // size n, -1 when uncovered

  const ClassInfo& of_facility(FacilityId f) const {
    return classes[class_of_facility[f]];
  }
};

/// Minimum neighborhood set: the inclusion-maximal subset of `fstar`
/// minimizing covered weight per facility, w(A(T) ∩ vstar) / |T|.
/// Computed by Dinkelbach iteration over parametric min-cuts; the maximal
/// minimizer is read off the maximal source side of the final cut.
std::vector<FacilityId> mns(const Instance& inst, const Placement& s,
                            const std::vector<FacilityId>& fstar,
                            const std::vector<VertexId>& vstar);

/// Exhaustive oracle for mns, guarded to |fstar| <= 20. Ties on the ratio
/// are broken toward larger cardinality; the maximal minimizer is asserted
/// unique (set union of minimizers must itself minimize).
std::vector<FacilityId> mns_bruteforce(const Instance& inst, const Placement& s,
                                       const std::vector<FacilityId>& fstar,
                                       const std::vector<VertexId>& vstar);

/// Repeated MNS extraction until the facility set is exhausted.
ClassSet class_set(const Instance& inst, const Placement& s);

}  // namespace flg
