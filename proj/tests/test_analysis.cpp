#include <doctest.h>

#include "flg/analysis.hpp"
#include "flg/errors.hpp"
#include "support.hpp"

using namespace flg;
using namespace flg::test;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("the optimum of the clique family covers everything") {
  Instance inst = make_fig8(3);
  auto [placement, weight] = optimum_placement(inst);
  CHECK(placement.at == std::vector<VertexId>{3, 4, 5});  // the pendants
  CHECK(weight == Scalar(6));
}

TEST_CASE("enough facilities cover the whole graph") {
  Instance inst;
  inst.graph.add_vertex("a", Scalar(2));
  inst.graph.add_vertex("b", Scalar(3));
  inst.k = 2;
  inst.allowed.assign(2, {0, 1});
  auto [placement, weight] = optimum_placement(inst);
  CHECK(weight == Scalar(5));
  CHECK(placement.at == std::vector<VertexId>{0, 1});
}

TEST_CASE("the gadget optimum is found by exhaustive search") {
  Scalar eps(1, 100);
  Instance inst = make_fig5_right(eps);
  auto [placement, weight] = optimum_placement(inst);
  // Facilities on v1 and v5 cover all six clients.
  CHECK(placement.at == std::vector<VertexId>{0, 4});
  CHECK(weight == inst.graph.total_weight());
  CHECK(weight == Scalar(2) + Scalar(2) / Scalar::golden_ratio());
}

TEST_CASE("optimum guard") {
  Instance inst = make_fig8(3);
  CHECK_THROWS_AS(optimum_placement(inst, 10), GuardError);
}

TEST_CASE("the clique family realizes participation ratio two") {
  for (int k = 2; k <= 5; ++k) {
    Instance inst = make_fig8(k);
    PartialCertificate cert = fig8_certificate(inst);
    WelfareReport report = poa_certificate(inst, cert);
    CHECK(report.ratio == Scalar(2));
    CHECK(report.opt_weight == Scalar(2 * k));
    CHECK(report.state_weight == Scalar(k));
  }
}

TEST_CASE("an all-covering equilibrium has ratio one") {
  Instance inst = make_fig8(2);
  SpeResult result = find_spe(inst);
  WelfareReport report = poa_certificate(inst, result.certificate);
  CHECK(report.ratio == Scalar(1));
}

TEST_CASE("non-equilibrium certificates are refused") {
  Instance inst = make_fig5_left();
  PartialCertificate cert =
      certificate_from_policy(inst, place({0, 0}), greedy_policy());
  CHECK_THROWS_AS(poa_certificate(inst, cert), InputError);
}

TEST_CASE("reach values of the golden-ratio gadget") {
  Scalar eps(1, 100);
  Instance inst = make_fig5_right(eps);
  Scalar phi = Scalar::golden_ratio();
  auto reach = reach_table(inst, 0);
  CHECK(reach.at(0) == Scalar(2));                    // v1
  CHECK(reach.at(1) == Scalar(2) - eps);              // v2
  CHECK(reach.at(2) == phi);                          // v3
  CHECK(reach.at(3) == phi * phi / Scalar(2));        // v4
  CHECK(reach.at(4) == Scalar(2) / phi);              // v5
  CHECK(reach.at(5) == Scalar(2) - Scalar(2) / phi);  // v6
}

TEST_CASE("reach of an isolated vertex is its own weight") {
  Instance inst;
  inst.graph.add_vertex("x", Scalar(7, 3));
  inst.k = 1;
  inst.allowed = {{0}};
  CHECK(reach_table(inst, 0).at(0) == Scalar(7, 3));
  CHECK_THROWS_AS(reach_table(inst, 3), InputError);
}

TEST_CASE("formula reduction counts follow the closed forms") {
  CnfFormula tiny;
  tiny.variables = 1;
  tiny.clauses = {{1}, {1}, {1}, {1}};  // (x) four times, satisfiable
  Scalar alpha(5, 4), eps(1, 100);
  Instance inst = reduce_sat(tiny, alpha, eps);

  // Component sizes: 6 gadget + 2 escape + (2m + t + (m-1)t) formula.
  CHECK(inst.graph.vertex_count() == 8 + 2 * 1 + 4 + 0);
  CHECK(inst.k == 1 + 2);
  // Uniform weight m/(m(t+2)-1) = 1/5 on every formula vertex.
  for (int v = 8; v < inst.graph.vertex_count(); ++v)
    CHECK(inst.graph.weight[v] == Scalar(1, 5));
  // Restrictions: the movable facility sees the formula component plus v7;
  // the two gadget facilities see v1..v6 and v1..v6 plus v8.
  CHECK(inst.allowed[0].size() == 6 + 1);
  CHECK(inst.allowed[1] == std::vector<VertexId>{0, 1, 2, 3, 4, 5});
  CHECK(inst.allowed[2] == std::vector<VertexId>{0, 1, 2, 3, 4, 5, 7});

  CnfFormula two;
  two.variables = 2;
  two.clauses = {{1, -2}, {2}, {-1, 2}, {1, 2}};
  Instance larger = reduce_sat(two, alpha, eps);
  // |B| = (m-1) t = 4, weight m/(m(t+2)-1) = 2/11.
  CHECK(larger.graph.vertex_count() == 8 + 2 * 2 + 4 + 4);
  CHECK(larger.graph.weight[8] == Scalar(2, 11));
  CHECK(larger.k == 4);
}

TEST_CASE("reduction counts hold for random formulas") {
  SplitMix64 rng(73);
  for (int round = 0; round < 20; ++round) {
    CnfFormula formula;
    formula.variables = 1 + static_cast<int>(rng.below(4));
    int t = 4 + static_cast<int>(rng.below(5));
    for (int j = 0; j < t; ++j) {
      std::vector<int> clause;
      int len = 1 + static_cast<int>(rng.below(3));
      for (int l = 0; l < len; ++l) {
        int var = 1 + static_cast<int>(rng.below(formula.variables));
        clause.push_back(rng.below(2) ? var : -var);
      }
      formula.clauses.push_back(clause);
    }
    Instance inst = reduce_sat(formula, Scalar(5, 4), Scalar(1, 100));
    int m = formula.variables;
    CHECK(inst.graph.vertex_count() == 8 + 2 * m + t + (m - 1) * t);
    CHECK(inst.k == m + 2);
    Scalar unit = Scalar(m) / Scalar(static_cast<long>(m) * (t + 2) - 1);
    for (int v = 8; v < inst.graph.vertex_count(); ++v)
      CHECK(inst.graph.weight[v] == unit);
    for (int q = 0; q < m; ++q)
      CHECK(inst.allowed[q].size() ==
            static_cast<std::size_t>(2 * m + t + (m - 1) * t + 1));
  }
}

TEST_CASE("the satisfiable micro formula admits the stated certificate") {
  CnfFormula tiny;
  tiny.variables = 1;
  tiny.clauses = {{1}, {1}, {1}, {1}};
  Scalar alpha(5, 4), eps(1, 100);
  Instance inst = reduce_sat(tiny, alpha, eps);
  // Proof placement for the assignment x = true: the movable facility on
  // y1, the gadget facilities on v1 and v8.
  VertexId y1 = *inst.graph.find("y1");
  Placement base{{y1, *inst.graph.find("v1"), *inst.graph.find("v8")}};
  PartialCertificate cert =
      certificate_from_policy(inst, base, greedy_policy());
  CHECK(verify_spe(inst, cert, Alpha(alpha)).ok);
  // At the tight factor the same certificate stops verifying: the movable
  // facility can still reach v7's weight.
  LoadReport loads = facility_loads(inst, base, cert.at(base));
  CHECK(loads.load[0] == Scalar(6, 5));
}

TEST_CASE("formula validation") {
  CnfFormula short_formula;
  short_formula.variables = 1;
  short_formula.clauses = {{1}, {1}, {1}};
  CHECK_THROWS_AS(reduce_sat(short_formula, Scalar(5, 4), Scalar(1, 100)),
                  InputError);

  CnfFormula bad_literal;
  bad_literal.variables = 1;
  bad_literal.clauses = {{2}, {1}, {1}, {1}};
  CHECK_THROWS_AS(reduce_sat(bad_literal, Scalar(5, 4), Scalar(1, 100)),
                  InputError);

  CnfFormula ok;
  ok.variables = 1;
  ok.clauses = {{1}, {1}, {1}, {1}};
  CHECK_THROWS_AS(reduce_sat(ok, Scalar(1), Scalar(1, 100)), InputError);
  CHECK_THROWS_AS(reduce_sat(ok, Scalar(2), Scalar(1, 100)), InputError);
  CHECK_THROWS_AS(reduce_sat(ok, Scalar(5, 4), Scalar(1)), InputError);
  // alpha too close to phi for the chosen epsilon.
  CHECK_THROWS_AS(
      reduce_sat(ok, Scalar::golden_ratio() - Scalar(1, 1000), Scalar(1, 2)),
      InputError);
}

TEST_CASE("bundled instances carry the drawn weights and arcs") {
  Instance path = make_fig5_left();
  CHECK(path.graph.weight ==
        std::vector<Scalar>{Scalar(3), Scalar(2), Scalar(1)});
  CHECK(path.graph.has_edge(0, 1));
  CHECK(path.graph.has_edge(0, 2));
  CHECK(!path.graph.has_edge(1, 0));
  CHECK(path.k == 2);
  CHECK(path.unrestricted());

  Scalar eps(1, 100);
  Instance gadget = make_fig5_right(eps);
  Scalar phi = Scalar::golden_ratio();
  CHECK(gadget.graph.weight[0] == Scalar(2) / phi);
  CHECK(gadget.graph.weight[0] == Scalar(mpq_class(-1), mpq_class(1)));
  CHECK(gadget.graph.weight[4] ==
        Scalar(8) / phi - Scalar(2) - phi - phi * phi / Scalar(2) + eps);
  for (const Scalar& w : gadget.graph.weight) CHECK(w.sign() > 0);
  Scalar total;
  for (const Scalar& w : gadget.graph.weight) total += w;
  CHECK(total == Scalar(2) + Scalar(2) / phi);

  Instance clique = make_fig8(3);
  CHECK(clique.graph.vertex_count() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(clique.graph.has_edge(i, j) == (i != j));
  for (int i = 0; i < 3; ++i) {
    CHECK(clique.graph.has_edge(i, 3 + i));
    CHECK(!clique.graph.has_edge(3 + i, i));
  }

  Instance escape = make_fig7_g3(Scalar(5, 4));
  CHECK(escape.graph.weight[0] == Scalar(5, 4));
  CHECK(escape.graph.weight[1] ==
        Scalar(2) / (Scalar::golden_ratio() * Scalar(5, 4)));
  CHECK(escape.graph.has_edge(0, 1));

  Instance intro = make_fig1();
  CHECK(intro.graph.weight ==
        std::vector<Scalar>{Scalar(3), Scalar(1), Scalar(1, 1000),
                            Scalar(1, 1000)});
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(make_fig5_right(Scalar()), InputError);
  CHECK_THROWS_AS(make_fig5_right(Scalar(1)), InputError);
  CHECK_THROWS_AS(make_fig7_g3(Scalar(2)), InputError);
  CHECK_THROWS_AS(make_fig8(1), InputError);
  CHECK(make_fig7_g3(Scalar(1)).graph.vertex_count() == 2);
}

TEST_SUITE_END();
