#pragma once
#include <optional>
#include <string>
#include <vector>

#include "flg/analysis.hpp"
#include "flg/classes.hpp"
#include "flg/game.hpp"

namespace flg {

/// Parses a DIMACS CNF document ("p cnf <vars> <clauses>", clauses as
/// zero-terminated literal lists, 'c' comment lines).
CnfFormula parse_dimacs(const std::string& text);

/// Parses an instance document (JSON): version tag, vertices with exact
/// weight strings, directed edges, facility count with per-facility allowed
/// lists or "all". The first error is reported with its field.
Instance parse_instance(const std::string& text);

/// Canonical serialization; parse(serialize(inst)) == inst field for field.
std::string serialize_instance(const Instance& inst);

/// Ordered key/value document; values are exact strings, approximations are
/// separate keys suffixed "_approx". One document renders identically into
/// JSON and TSV, so both formats carry the same exact values.
struct ResultDocument {
  struct Entry {
    std::string key;
    std::vector<std::string> values;  // singletons or lists
  };
  std::vector<Entry> entries;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const std::vector<std::string>& values);
  void add_scalar(const std::string& key, const Scalar& value);
  void add_scalars(const std::string& key, const std::vector<Scalar>& values);

  std::string to_json() const;
  std::string to_tsv() const;
};

/// DOT rendering of the host graph; facility locations and class
/// memberships are folded into the vertex labels when provided.
std::string to_dot(const Instance& inst, const std::optional<Placement>& s,
                   const ClassSet* cs);

}  // namespace flg
