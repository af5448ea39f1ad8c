#include <doctest.h>

#include "flg/errors.hpp"
#include "support.hpp"

using namespace flg;
using namespace flg::test;

TEST_SUITE_BEGIN("flow");

namespace {

FlowNetwork chain3() {
  // s -> a -> b -> t, all capacity 1.
  FlowNetwork net;
  net.node_count = 4;
  net.source = 0;
  net.sink = 3;
  net.arcs = {{0, 1, Scalar(1), 0}, {1, 2, Scalar(1), 0}, {2, 3, Scalar(1), 0}};
  return net;
}

FlowNetwork random_micro(SplitMix64& rng, bool with_costs) {
  // Layered DAG on up to 6 nodes, at most 10 arcs, small capacities.
  FlowNetwork net;
  net.node_count = 3 + static_cast<int>(rng.below(4));
  net.source = 0;
  net.sink = net.node_count - 1;
  int arcs = 1 + static_cast<int>(rng.below(10));
  for (int i = 0; i < arcs; ++i) {
    int from = static_cast<int>(rng.below(net.node_count - 1));
    int to = from + 1 +
             static_cast<int>(rng.below(net.node_count - 1 - from));
    if (from == net.sink || to == net.source) continue;
    mpz_class cost = 0;
    if (with_costs) cost = static_cast<long>(rng.below(17)) - 8;
    net.arcs.push_back(
        {from, to, Scalar(static_cast<long>(rng.below(4))), cost});
  }
  if (net.arcs.empty()) net.arcs.push_back({0, net.sink, Scalar(1), 0});
  return net;
}

}  // namespace

TEST_CASE("single arcs and parallel paths") {
  FlowNetwork net;
  net.node_count = 2;
  net.source = 0;
  net.sink = 1;
  net.arcs = {{0, 1, Scalar(7), 0}};
  CHECK(max_flow(net).value == Scalar(7));

  FlowNetwork twopath;
  twopath.node_count = 4;
  twopath.source = 0;
  twopath.sink = 3;
  twopath.arcs = {{0, 1, Scalar(2), 0},
                  {1, 3, Scalar(2), 0},
                  {0, 2, Scalar(3), 0},
                  {2, 3, Scalar(3), 0}};
  CHECK(max_flow(twopath).value == Scalar(5));

  FlowNetwork apart;
  apart.node_count = 3;
  apart.source = 0;
  apart.sink = 2;
  apart.arcs = {{0, 1, Scalar(4), 0}};
  CHECK(max_flow(apart).value == Scalar());  // disconnected, not an error
}

TEST_CASE("exact scalar capacities flow exactly") {
  FlowNetwork net;
  net.node_count = 3;
  net.source = 0;
  net.sink = 2;
  Scalar phi = Scalar::golden_ratio();
  net.arcs = {{0, 1, phi, 0}, {1, 2, Scalar(2) / phi, 0}};
  // min(phi, 2/phi) = 2/phi since phi^2 = phi + 1 > 2.
  CHECK(max_flow(net).value == Scalar(2) / phi);
}

TEST_CASE("duality against enumerated cuts on random micro networks") {
  SplitMix64 rng(31);
  for (int round = 0; round < 120; ++round) {
    FlowNetwork net = random_micro(rng, false);
    FlowResult result = max_flow(net);
    CHECK(result.value == oracle_min_cut(net));
    std::vector<char> side = max_source_side_min_cut(net, result);
    CHECK(cut_capacity(net, side) == result.value);
  }
}

TEST_CASE("the maximal source side is the largest minimum cut") {
  FlowNetwork net = chain3();
  FlowResult result = max_flow(net);
  std::vector<char> side = max_source_side_min_cut(net, result);
  // Every proper prefix of the chain is a minimum cut; the maximal one
  // keeps everything but the sink on the source side.
  CHECK(side == std::vector<char>{1, 1, 1, 0});

  // Enumerated cross-check: no minimum cut has a larger source side.
  for (std::size_t mask = 0; mask < 4; ++mask) {
    std::vector<char> candidate{1, static_cast<char>(mask & 1),
                                static_cast<char>((mask >> 1) & 1), 0};
    if (cut_capacity(net, candidate) == result.value)
      for (int v = 0; v < 4; ++v)
        if (candidate[v]) CHECK(side[v] == 1);
  }
}

TEST_CASE("stale flow results are rejected") {
  FlowNetwork net = chain3();
  FlowResult result = max_flow(net);
  result.flow[1] = Scalar(9);
  CHECK_THROWS_AS(max_source_side_min_cut(net, result), InputError);
}

TEST_CASE("max cost flow prefers the expensive parallel arc") {
  FlowNetwork net;
  net.node_count = 3;
  net.source = 0;
  net.sink = 2;
  net.arcs = {{0, 1, Scalar(1), 0},
              {1, 2, Scalar(1), 1},
              {1, 2, Scalar(1), 5}};
  FlowResult result = max_cost_flow(net);
  CHECK(result.value == Scalar(1));
  CHECK(result.cost == Scalar(5));
  CHECK(result.flow[2] == Scalar(1));
  CHECK(result.flow[1] == Scalar());
}

TEST_CASE("zero capacity network carries nothing") {
  FlowNetwork net;
  net.node_count = 2;
  net.source = 0;
  net.sink = 1;
  net.arcs = {{0, 1, Scalar(), 3}};
  FlowResult result = max_cost_flow(net);
  CHECK(result.value == Scalar());
  CHECK(result.cost == Scalar());
}

TEST_CASE("max cost flow matches enumeration and stays integral") {
  SplitMix64 rng(37);
  for (int round = 0; round < 120; ++round) {
    FlowNetwork net = random_micro(rng, true);
    FlowResult result = max_cost_flow(net);
    auto [best_value, best_cost] = oracle_max_cost_flow(net);
    CHECK(result.value == best_value);
    CHECK(result.cost == best_cost);
    CHECK(result.value == max_flow(net).value);
    for (const Scalar& f : result.flow) CHECK(f.is_integer());
  }
}

TEST_CASE("malformed networks are rejected") {
  FlowNetwork net;
  net.node_count = 2;
  net.source = 0;
  net.sink = 1;
  net.arcs = {{0, 1, Scalar(-1), 0}};
  CHECK_THROWS_AS(max_flow(net), InputError);

  FlowNetwork into_source;
  into_source.node_count = 3;
  into_source.source = 0;
  into_source.sink = 2;
  into_source.arcs = {{1, 0, Scalar(1), 0}};
  CHECK_THROWS_AS(max_flow(into_source), InputError);

  FlowNetwork fractional;
  fractional.node_count = 2;
  fractional.source = 0;
  fractional.sink = 1;
  fractional.arcs = {{0, 1, Scalar(1, 2), 0}};
  CHECK_THROWS_AS(max_cost_flow(fractional), InputError);

  FlowNetwork cyclic;
  cyclic.node_count = 4;
  cyclic.source = 0;
  cyclic.sink = 3;
  cyclic.arcs = {{0, 1, Scalar(1), 0},
                 {1, 2, Scalar(1), 0},
                 {2, 1, Scalar(1), 0},
                 {2, 3, Scalar(1), 0}};
  CHECK_THROWS_AS(max_cost_flow(cyclic), InputError);
}

TEST_SUITE_END();
