#include <doctest.h>

#include "flg/errors.hpp"
#include "flg/io.hpp"
#include "support.hpp"

using namespace flg;
using namespace flg::test;

TEST_SUITE_BEGIN("io");

TEST_CASE("serialization round-trips the bundled instances") {
  std::vector<Instance> catalog{
      make_fig1(),
      make_fig3(),
      make_fig5_left(),
      make_fig5_right(Scalar(1, 100)),
      make_fig7_g3(Scalar(5, 4)),
      make_fig8(3),
  };
  CnfFormula tiny;
  tiny.variables = 1;
  tiny.clauses = {{1}, {1}, {1}, {1}};
  catalog.push_back(reduce_sat(tiny, Scalar(5, 4), Scalar(1, 100)));
  SplitMix64 rng(79);
  for (int i = 0; i < 5; ++i) {
    RandomSpec spec;
    spec.vertices = 2 + static_cast<int>(rng.below(6));
    spec.k = 1 + static_cast<int>(rng.below(3));
    spec.unit_weights = false;
    spec.seed = rng.next();
    catalog.push_back(make_random(spec));
  }
  for (const Instance& inst : catalog) {
    std::string text = serialize_instance(inst);
    Instance parsed = parse_instance(text);
    CHECK(parsed == inst);
    // Serialization is canonical, hence byte-stable.
    CHECK(serialize_instance(parsed) == text);
  }
}

TEST_CASE("bad documents are rejected with the offending field") {
  auto doc = [](const std::string& body) {
    return "{\"version\": 1, " + body + "}";
  };
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(R"("vertices": [{"id": "a", "weight": "0/1"}],
          "edges": [], "facilities": {"count": 1, "allowed": ["all"]})")),
      doctest::Contains("positive"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(
          R"("vertices": [{"id": "a", "weight": "1/1+(-1/1)*sqrt5"}],
          "edges": [], "facilities": {"count": 1, "allowed": ["all"]})")),
      doctest::Contains("positive"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(R"("vertices": [{"id": "a", "weight": "1/1"},
          {"id": "a", "weight": "1/1"}],
          "edges": [], "facilities": {"count": 1, "allowed": ["all"]})")),
      doctest::Contains("duplicate"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(R"("vertices": [{"id": "a", "weight": "1/1"}],
          "edges": [["a", "zz"]],
          "facilities": {"count": 1, "allowed": ["all"]})")),
      doctest::Contains("endpoint"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(R"("vertices": [{"id": "a", "weight": "1/1"}],
          "edges": [], "facilities": {"count": 1, "allowed": [[]]})")),
      doctest::Contains("empty"), InputError);
  CHECK_THROWS_AS(parse_instance("not json"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(doc(R"("vertices": [{"id": "a", "weight": "1/oops"}],
          "edges": [], "facilities": {"count": 1, "allowed": ["all"]})")),
      doctest::Contains("position"), InputError);
}

TEST_CASE("result documents carry the same exact values in both formats") {
  ResultDocument doc;
  doc.add("command", "classes");
  doc.add_scalar("participation", Scalar(5, 2));
  doc.add_scalars("loads", {Scalar(1), Scalar::golden_ratio()});
  std::string json = doc.to_json();
  std::string tsv = doc.to_tsv();
  CHECK(json.find("\"5/2\"") != std::string::npos);
  CHECK(tsv.find("5/2") != std::string::npos);
  CHECK(json.find("1/2+1/2*sqrt5") != std::string::npos);
  CHECK(tsv.find("1/2+1/2*sqrt5") != std::string::npos);
  // Approximations are labeled as such and never replace exact fields.
  CHECK(json.find("participation_approx") != std::string::npos);
  CHECK(tsv.find("2.500000") != std::string::npos);
}

TEST_CASE("dot export labels facilities and classes") {
  Instance inst = make_fig3();
  Placement s = fig3_placement();
  ClassSet cs = class_set(inst, s);
  std::string dot = to_dot(inst, s, &cs);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("facilities: f0") != std::string::npos);
  CHECK(dot.find("class: C2") != std::string::npos);
  CHECK(dot.find("\"v2\" -> \"f1\"") != std::string::npos);
}

TEST_SUITE_END();
