#pragma once
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flg/scalar.hpp"

namespace flg {

using VertexId = int;
using FacilityId = int;

/// Weighted directed host graph. Vertices are simultaneously clients and
/// candidate facility locations; ids are dense integers in input order.
/// The closed neighborhood N(v) = {v} plus out-neighbors of v.
struct HostGraph {
  std::vector<std::string> names;       // display names, index = vertex id
  std::vector<Scalar> weight;           // strictly positive
  std::vector<std::vector<VertexId>> out;  // sorted out-neighbor lists
  std::vector<std::vector<VertexId>> in;   // sorted in-neighbor lists

  int vertex_count() const { return static_cast<int>(names.size()); }
  VertexId add_vertex(std::string name, Scalar w);
  void add_edge(VertexId from, VertexId to);
  bool has_edge(VertexId from, VertexId to) const;
  std::optional<VertexId> find(const std::string& name) const;
  Scalar total_weight() const;

  friend bool operator==(const HostGraph&, const HostGraph&) = default;
};

/// A game instance: host graph, k facility agents, per-facility placement
/// restrictions. allowed[f] is a nonempty sorted vertex list.
struct Instance {
  HostGraph graph;
  int k = 0;
  std::vector<std::vector<VertexId>> allowed;

  void validate() const;
  bool unrestricted() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One chosen vertex per facility agent; duplicates are allowed.
struct Placement {
  std::vector<VertexId> at;

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// Facilities client v can patronize: those located on N(v).
std::vector<FacilityId> shopping_range(const Instance& inst, const Placement& s,
                                       VertexId v);

/// Clients that can patronize facility f: {v | f in shopping_range(v)}.
std::vector<VertexId> attraction_range(const Instance& inst, const Placement& s,
                                       FacilityId f);

/// Precomputed shopping/attraction ranges for one placement.
struct Ranges {
  std::vector<std::vector<FacilityId>> shopping;    // per vertex
  std::vector<std::vector<VertexId>> attraction;    // per facility

  Ranges(const Instance& inst, const Placement& s);
  bool covered(VertexId v) const { return !shopping[v].empty(); }
};

/// Mixed client profile for one placement: prob[v][f] is the probability
/// that client v patronizes facility f. Uncovered clients carry all-zero
/// rows; covered rows sum to one.
struct ClientProfile {
  std::vector<std::vector<Scalar>> prob;  // n rows, k columns

  bool pure() const;
  friend bool operator==(const ClientProfile&, const ClientProfile&) = default;
};

ClientProfile zero_profile(const Instance& inst);

/// Throws FeasibilityError naming the violated condition and client if the
/// profile does not satisfy the feasibility conditions for (inst, s).
void check_feasible(const Instance& inst, const Placement& s,
                    const ClientProfile& sigma);

struct LoadReport {
  std::vector<Scalar> load;      // expected load per facility
  std::vector<Scalar> sorted;    // nondecreasing copy (the dynamic potential)
  Scalar participation;          // total weight of covered clients
};

LoadReport facility_loads(const Instance& inst, const Placement& s,
                          const ClientProfile& sigma);

/// Expected load of f contributed by all clients other than v.
Scalar excluded_load(const Instance& inst, const Placement& s,
                     const ClientProfile& sigma, VertexId v, FacilityId f);

/// Expected waiting time of client v. Undefined (error) for uncovered v.
Scalar waiting_time(const Instance& inst, const Placement& s,
                    const ClientProfile& sigma, VertexId v);

/// Total covered client weight; independent of the client profile.
Scalar participation_weight(const Instance& inst, const Placement& s);

struct EquilibriumVerdict {
  struct Witness {
    VertexId client;
    FacilityId in_support;  // patronized facility with non-minimal load
    FacilityId better;      // strictly cheaper alternative in range
  };
  bool ok = false;
  std::optional<Witness> witness;
};

/// A profile is a client equilibrium iff every client's support contains
/// only facilities of minimal v-excluded load within her shopping range.
/// On failure returns the first witness in (client, facility, facility)
/// index order. Infeasible profiles throw, they are not "non-equilibria".
EquilibriumVerdict verify_client_equilibrium(const Instance& inst,
                                             const Placement& s,
                                             const ClientProfile& sigma);

/// Loads permuted facility-by-facility: result[i] = load[pi[i]].
/// pi must be a bijection on {0..k-1}.
std::vector<Scalar> pi_loads(const LoadReport& report,
                             const std::vector<int>& pi);

/// Deterministic rule producing a client profile for any placement. The
/// full profile over all placements is represented lazily; the rule is
/// evaluated on demand and must be reproducible.
struct FullProfilePolicy {
  std::string kind;
  std::function<ClientProfile(const Instance&, const Placement&)> rule;

  ClientProfile operator()(const Instance& inst, const Placement& s) const {
    return rule(inst, s);
  }
};

}  // namespace flg
