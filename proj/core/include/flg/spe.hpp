#pragma once
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flg/client_eq.hpp"
#include "flg/game.hpp"

namespace flg {

/// Approximation factor, at least one.
struct Alpha {
  Scalar value;

  explicit Alpha(Scalar v);
  static Alpha exact() { return Alpha(Scalar(1)); }
};

/// Client profiles for a base placement and every single-facility deviation
/// of it. Together with the policy tag this certifies (approximate)
/// stability of the base placement; profiles for all other placements exist
/// and are never consulted.
struct PartialCertificate {
  Placement base;
  std::map<Placement, ClientProfile> profile_at;
  std::string policy;

  const ClientProfile& at(const Placement& s) const;
};

/// Builds the certificate for `base` by evaluating the policy at the base
/// and at every single-facility deviation placement.
PartialCertificate certificate_from_policy(const Instance& inst,
                                           const Placement& base,
                                           const FullProfilePolicy& policy);

struct ImprovingMove {
  FacilityId facility;
  VertexId target;
  Scalar old_load;
  Scalar new_load;
};

/// All facility deviations that raise the mover's load beyond alpha times
/// its current load, under the client behavior fixed by the policy.
/// Sorted by (facility id, vertex id).
std::vector<ImprovingMove> improving_moves(const Instance& inst,
                                           const Placement& s,
                                           const FullProfilePolicy& policy,
                                           const Alpha& alpha);

struct DynamicsStep {
  FacilityId mover;
  VertexId from;
  VertexId to;
  std::vector<Scalar> sort_before;  // sorted loads before the move
  std::vector<Scalar> sort_after;   // sorted loads after, same profile
  std::vector<int> pi;              // favoring order adopted after the move
};

struct DynamicsTrace {
  std::vector<DynamicsStep> steps;
  std::size_t iterations = 0;
};

struct SpeResult {
  Placement placement;
  PartialCertificate certificate;
  DynamicsTrace trace;
};

/// Best-response dynamic for unweighted instances: start from the lowest-id
/// allowed placement under a rounded policy; repeatedly apply the first
/// improving move, re-sort the facilities by their new loads into pi, and
/// switch to the pi-favoring policy. The sorted load vector is a strictly
/// increasing potential after the first step, so this terminates in a
/// placement whose certificate verifies at alpha = 1.
SpeResult find_spe(const Instance& inst);

struct SpeVerdict {
  struct Witness {
    FacilityId facility;
    VertexId target;
    Scalar base_load;
    Scalar deviation_load;
    std::optional<Scalar> factor;  // empty when the base load is zero
  };
  bool ok = false;
  std::optional<Witness> witness;
  std::string note;  // set when a stored profile fails equilibrium checking
};

/// Checks that every stored profile is a client equilibrium for its
/// placement and that no facility deviation multiplies the mover's load by
/// more than alpha. Missing deviation profiles are a certificate error.
SpeVerdict verify_spe(const Instance& inst, const PartialCertificate& cert,
                      const Alpha& alpha);

/// Places each facility on its best singleton vertex (maximum attainable
/// attraction weight within its allowed set, ties by vertex id) with
/// clients mixing uniformly over their shopping ranges; deviation profiles
/// use the greedy equilibrium. Passes verify_spe at alpha = k on
/// unrestricted instances.
std::pair<Placement, PartialCertificate> k_approx_spe(const Instance& inst);

struct SpeExistsGuard {
  std::size_t fpps = 200;
  EnumGuard eq;
  std::size_t combinations = 500000;
};

struct SpeExistsResult {
  bool exists = false;
  std::optional<Placement> witness;
  /// Base profile sample stabilizing the witness.
  std::optional<ClientProfile> base_profile;
  /// Certificate assembled from the feasible joint solution; verifies at
  /// the queried alpha by construction.
  std::optional<PartialCertificate> certificate;
  /// One line per examined placement (diagnostics for the "none" verdict).
  std::vector<std::string> summary;
};

/// Exact decision of alpha-approximate SPE existence on micro instances:
/// for every base placement, joins the equilibrium polytopes of the base
/// and of each single-facility deviation with the no-improvement
/// inequalities into exact feasibility problems, one per combination of
/// support patterns. The base is stabilizable iff some combination is
/// feasible.
SpeExistsResult spe_exists(const Instance& inst, const Alpha& alpha,
                           const SpeExistsGuard& guard);

/// Policy factories. Each produces a deterministic rule usable as the lazy
/// full client profile of a certificate.
FullProfilePolicy rounded_policy();
FullProfilePolicy favoring_policy(std::vector<int> pi);
FullProfilePolicy greedy_policy();
FullProfilePolicy uniform_policy();

}  // namespace flg
