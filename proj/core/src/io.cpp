#include "flg/io.hpp"

#include <algorithm>

#include <json.hpp>

#include "flg/errors.hpp"

namespace flg {

using ordered_json = nlohmann::ordered_json;

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula formula;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int expected_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream tokens(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      tokens >> p >> cnf >> formula.variables >> expected_clauses;
      if (cnf != "cnf" || !tokens)
        throw InputError("dimacs: malformed problem line");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw InputError("dimacs: clause before problem line");
    int literal;
    while (tokens >> literal) {
      if (literal == 0) {
        formula.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(literal);
      }
    }
    if (!tokens.eof()) throw InputError("dimacs: bad token in line: " + line);
  }
  if (!header_seen) throw InputError("dimacs: missing problem line");
  if (!current.empty())
    throw InputError("dimacs: unterminated clause at end of input");
  if (static_cast<int>(formula.clauses.size()) != expected_clauses)
    throw InputError("dimacs: clause count does not match the header");
  return formula;
}

namespace {

Instance parse_instance_document(const ordered_json& doc);

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("instance: not valid JSON: ") + e.what());
  }
  try {
    return parse_instance_document(doc);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance: malformed field: ") + e.what());
  }
}

namespace {

Instance parse_instance_document(const ordered_json& doc) {
  auto require = [&](const char* field) -> const ordered_json& {
    if (!doc.contains(field))
      throw InputError(std::string("instance: missing field \"") + field +
                       "\"");
    return doc.at(field);
  };

  if (require("version").get<int>() != 1)
    throw InputError("instance: unsupported version");

  Instance inst;
  for (const auto& vertex : require("vertices")) {
    if (!vertex.contains("id") || !vertex.contains("weight"))
      throw InputError("instance: vertex needs \"id\" and \"weight\"");
    std::string id = vertex.at("id").get<std::string>();
    Scalar weight = Scalar::parse(vertex.at("weight").get<std::string>());
    if (weight.sign() <= 0)
      throw InputError("instance: vertex \"" + id +
                       "\": weight must be positive");
    inst.graph.add_vertex(id, weight);
  }
  for (const auto& edge : require("edges")) {
    if (!edge.is_array() || edge.size() != 2)
      throw InputError("instance: edge must be a [from, to] pair");
    auto from = inst.graph.find(edge.at(0).get<std::string>());
    auto to = inst.graph.find(edge.at(1).get<std::string>());
    if (!from || !to) throw InputError("instance: edge endpoint unknown");
    inst.graph.add_edge(*from, *to);
  }
  const auto& facilities = require("facilities");
  if (!facilities.contains("count") || !facilities.contains("allowed"))
    throw InputError("instance: facilities needs \"count\" and \"allowed\"");
  inst.k = facilities.at("count").get<int>();
  const auto& allowed = facilities.at("allowed");
  if (static_cast<int>(allowed.size()) != inst.k)
    throw InputError("instance: allowed must list every facility");
  for (const auto& entry : allowed) {
    std::vector<VertexId> set;
    if (entry.is_string() && entry.get<std::string>() == "all") {
      for (int v = 0; v < inst.graph.vertex_count(); ++v) set.push_back(v);
    } else if (entry.is_array()) {
      if (entry.empty())
        throw InputError("instance: empty allowed set for a facility");
      for (const auto& name : entry) {
        auto v = inst.graph.find(name.get<std::string>());
        if (!v) throw InputError("instance: allowed vertex unknown: " +
                                 name.get<std::string>());
        set.push_back(*v);
      }
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
    } else {
      throw InputError("instance: allowed entry must be \"all\" or a list");
    }
    inst.allowed.push_back(std::move(set));
  }
  inst.validate();
  return inst;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["version"] = 1;
  doc["vertices"] = ordered_json::array();
  for (int v = 0; v < inst.graph.vertex_count(); ++v) {
    ordered_json vertex;
    vertex["id"] = inst.graph.names[v];
    vertex["weight"] = inst.graph.weight[v].str();
    doc["vertices"].push_back(vertex);
  }
  doc["edges"] = ordered_json::array();
  for (int v = 0; v < inst.graph.vertex_count(); ++v)
    for (VertexId u : inst.graph.out[v])
      doc["edges"].push_back({inst.graph.names[v], inst.graph.names[u]});
  ordered_json facilities;
  facilities["count"] = inst.k;
  facilities["allowed"] = ordered_json::array();
  for (int f = 0; f < inst.k; ++f) {
    if (static_cast<int>(inst.allowed[f].size()) ==
        inst.graph.vertex_count()) {
      facilities["allowed"].push_back("all");
    } else {
      ordered_json list = ordered_json::array();
      for (VertexId v : inst.allowed[f]) list.push_back(inst.graph.names[v]);
      facilities["allowed"].push_back(list);
    }
  }
  doc["facilities"] = facilities;
  return doc.dump(2) + "\n";
}

void ResultDocument::add(const std::string& key, const std::string& value) {
  entries.push_back({key, {value}});
}

void ResultDocument::add(const std::string& key,
                         const std::vector<std::string>& values) {
  entries.push_back({key, values});
}

void ResultDocument::add_scalar(const std::string& key, const Scalar& value) {
  entries.push_back({key, {value.str()}});
  entries.push_back({key + "_approx", {value.approx_str()}});
}

void ResultDocument::add_scalars(const std::string& key,
                                 const std::vector<Scalar>& values) {
  std::vector<std::string> exact, approx;
  for (const Scalar& v : values) {
    exact.push_back(v.str());
    approx.push_back(v.approx_str());
  }
  entries.push_back({key, exact});
  entries.push_back({key + "_approx", approx});
}

std::string ResultDocument::to_json() const {
  ordered_json doc;
  for (const Entry& entry : entries) {
    if (entry.values.size() == 1) {
      doc[entry.key] = entry.values.front();
    } else {
      doc[entry.key] = entry.values;
    }
  }
  return doc.dump(2) + "\n";
}

std::string ResultDocument::to_tsv() const {
  std::string out;
  for (const Entry& entry : entries) {
    out += entry.key;
    for (const std::string& value : entry.values) {
      out += '\t';
      out += value;
    }
    out += '\n';
  }
  return out;
}

std::string to_dot(const Instance& inst, const std::optional<Placement>& s,
                   const ClassSet* cs) {
  std::string out = "digraph host {\n";
  for (int v = 0; v < inst.graph.vertex_count(); ++v) {
    std::string label =
        inst.graph.names[v] + "\\nw=" + inst.graph.weight[v].str();
    if (s) {
      std::string hosts;
      for (int f = 0; f < inst.k; ++f)
        if (s->at[f] == v) hosts += (hosts.empty() ? "" : ",") +
                                    std::string("f") + std::to_string(f);
      if (!hosts.empty()) label += "\\nfacilities: " + hosts;
    }
    if (cs && cs->class_of_client[v] >= 0)
      label += "\\nclass: C" + std::to_string(cs->class_of_client[v] + 1);
    out += "  \"" + inst.graph.names[v] + "\" [label=\"" + label + "\"];\n";
  }
  for (int v = 0; v < inst.graph.vertex_count(); ++v)
    for (VertexId u : inst.graph.out[v])
      out += "  \"" + inst.graph.names[v] + "\" -> \"" + inst.graph.names[u] +
             "\";\n";
  out += "}\n";
  return out;
}

}  // namespace flg
