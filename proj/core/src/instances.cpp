#include "flg/instances.hpp"

#include <algorithm>

#include "flg/errors.hpp"

namespace flg {

namespace {

std::vector<VertexId> all_vertices(const HostGraph& g) {
  std::vector<VertexId> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return all;
}

void make_unrestricted(Instance& inst) {
  inst.allowed.assign(inst.k, all_vertices(inst.graph));
  inst.validate();
}

}  // namespace

Instance make_fig1() {
  Instance inst;
  HostGraph& g = inst.graph;
  VertexId c1 = g.add_vertex("c1", Scalar(3));
  VertexId c2 = g.add_vertex("c2", Scalar(1));
  // Drawn with weight 0; lifted to 1/1000 to keep client weights positive.
  // Small enough to preserve the depicted equilibrium structure.
  VertexId p1 = g.add_vertex("p1", Scalar(1, 1000));
  VertexId p2 = g.add_vertex("p2", Scalar(1, 1000));
  g.add_edge(c1, p1);
  g.add_edge(c1, p2);
  g.add_edge(c2, p1);
  g.add_edge(c2, p2);
  inst.k = 2;
  make_unrestricted(inst);
  return inst;
}

Placement fig1_placement() { return {{2, 3}}; }

Instance make_fig3() {
  Instance inst;
  HostGraph& g = inst.graph;
  VertexId f1 = g.add_vertex("f1", Scalar(1));
  VertexId f2 = g.add_vertex("f2", Scalar(1));
  VertexId f3 = g.add_vertex("f3", Scalar(1));
  std::vector<VertexId> v;
  for (int i = 1; i <= 6; ++i)
    v.push_back(g.add_vertex("v" + std::to_string(i), Scalar(1)));
  g.add_edge(f1, f2);
  g.add_edge(f2, f1);  // the one double-headed arrow of the drawing
  g.add_edge(f2, f3);
  g.add_edge(v[0], f1);
  g.add_edge(v[1], f1);
  g.add_edge(v[1], f2);
  g.add_edge(v[2], f2);
  g.add_edge(v[3], f3);
  g.add_edge(v[4], f3);
  g.add_edge(v[5], f3);
  inst.k = 3;
  make_unrestricted(inst);
  return inst;
}

Placement fig3_placement() { return {{0, 1, 2}}; }

Instance make_fig5_left() {
  Instance inst;
  HostGraph& g = inst.graph;
  VertexId w1 = g.add_vertex("w1", Scalar(3));
  VertexId w2 = g.add_vertex("w2", Scalar(2));
  VertexId w3 = g.add_vertex("w3", Scalar(1));
  g.add_edge(w1, w2);
  g.add_edge(w1, w3);
  inst.k = 2;
  make_unrestricted(inst);
  return inst;
}

Instance make_fig5_right(const Scalar& epsilon) {
  const Scalar phi = Scalar::golden_ratio();
  const Scalar two_over_phi = Scalar(2) / phi;
  if (epsilon.sign() <= 0 || !(epsilon < Scalar(2) - two_over_phi))
    throw InputError("fig5_right: epsilon must lie in (0, 2 - 2/phi)");
  Instance inst;
  HostGraph& g = inst.graph;
  VertexId v1 = g.add_vertex("v1", two_over_phi);
  VertexId v2 = g.add_vertex("v2", Scalar(2) - two_over_phi - epsilon);
  VertexId v3 = g.add_vertex("v3", phi - two_over_phi);
  VertexId v4 = g.add_vertex("v4", phi * phi / Scalar(2) - two_over_phi);
  // The drawn label omits the +epsilon, but the stated exact reach of v5
  // (2/phi) and the improvement chain around it force it; with the label
  // value the reach would come out epsilon short.
  VertexId v5 = g.add_vertex("v5", Scalar(8) / phi - Scalar(2) - phi -
                                       phi * phi / Scalar(2) + epsilon);
  VertexId v6 = g.add_vertex("v6", Scalar(2) - two_over_phi);
  g.add_edge(v1, v2);
  g.add_edge(v1, v3);
  g.add_edge(v1, v4);
  g.add_edge(v2, v5);
  g.add_edge(v3, v5);
  g.add_edge(v4, v5);
  g.add_edge(v6, v1);
  inst.k = 2;
  make_unrestricted(inst);
  return inst;
}

Instance make_fig7_g3(const Scalar& alpha) {
  const Scalar phi = Scalar::golden_ratio();
  if (alpha < Scalar(1) || !(alpha < phi))
    throw InputError("fig7_g3: alpha must lie in [1, phi)");
  Instance inst;
  HostGraph& g = inst.graph;
  VertexId v7 = g.add_vertex("v7", alpha);
  VertexId v8 = g.add_vertex("v8", Scalar(2) / (phi * alpha));
  g.add_edge(v7, v8);
  inst.k = 1;
  make_unrestricted(inst);
  return inst;
}

Instance make_fig8(int k) {
  if (k < 2) throw InputError("fig8: k must be at least 2");
  Instance inst;
  HostGraph& g = inst.graph;
  std::vector<VertexId> core, out;
  for (int i = 1; i <= k; ++i)
    core.push_back(g.add_vertex("c" + std::to_string(i), Scalar(1)));
  for (int i = 1; i <= k; ++i)
    out.push_back(g.add_vertex("o" + std::to_string(i), Scalar(1)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) g.add_edge(core[i], core[j]);
  for (int i = 0; i < k; ++i) g.add_edge(core[i], out[i]);
  inst.k = k;
  make_unrestricted(inst);
  return inst;
}

PartialCertificate fig8_certificate(const Instance& inst) {
  const int k = inst.k;
  if (inst.graph.vertex_count() != 2 * k || k < 2 || !inst.unrestricted())
    throw InputError("fig8_certificate: not a fig8 family instance");
  for (int i = 0; i < k; ++i)
    if (inst.graph.names[i] != "c" + std::to_string(i + 1) ||
        inst.graph.names[k + i] != "o" + std::to_string(i + 1))
      throw InputError("fig8_certificate: not a fig8 family instance");

  Placement base;
  for (int f = 0; f < k; ++f) base.at.push_back(f);  // facility f on c_{f+1}

  ClientProfile base_profile = zero_profile(inst);
  for (int f = 0; f < k; ++f) base_profile.prob[f][f] = Scalar(1);

  PartialCertificate cert;
  cert.base = base;
  cert.policy = "fig8(own-vertex base, pendant handoff)";
  cert.profile_at[base] = base_profile;
  for (FacilityId f = 0; f < k; ++f)
    for (VertexId u = 0; u < inst.graph.vertex_count(); ++u) {
      if (u == base.at[f]) continue;
      Placement dev = base;
      dev.at[f] = u;
      if (cert.profile_at.count(dev)) continue;
      ClientProfile sigma = base_profile;
      if (u >= k) {
        // Pendant vertex: its client is forced onto the mover, and the
        // mover's old client hands over to the lowest-id other facility.
        sigma.prob[u][f] = Scalar(1);
        sigma.prob[f] = std::vector<Scalar>(k, Scalar());
        FacilityId other = (f == 0) ? 1 : 0;
        sigma.prob[f][other] = Scalar(1);
      }
      // Core vertex: everyone keeps their facility; the mover stays in its
      // old client's range.
      cert.profile_at[dev] = sigma;
    }
  return cert;
}

std::uint64_t SplitMix64::next() {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  return next() % bound;
}

Instance make_random(const RandomSpec& spec) {
  if (spec.vertices < 1 || spec.k < 1)
    throw InputError("random instance: need at least one vertex and facility");
  if (spec.density_percent < 0 || spec.density_percent > 100)
    throw InputError("random instance: density must be a percentage");
  SplitMix64 rng(spec.seed);
  Instance inst;
  HostGraph& g = inst.graph;
  for (int v = 0; v < spec.vertices; ++v) {
    Scalar w(1);
    if (!spec.unit_weights) {
      long num = 1 + static_cast<long>(rng.below(6));
      long den = 1 + static_cast<long>(rng.below(3));
      w = Scalar(num, den);
      if (rng.below(4) == 0) {
        // Sprinkle in exact irrational weights now and then.
        long s = 5 + static_cast<long>(rng.below(4));
        w += Scalar(mpq_class(0), mpq_class(1, s));
      }
    }
    g.add_vertex("u" + std::to_string(v), w);
  }
  for (int a = 0; a < spec.vertices; ++a)
    for (int b = 0; b < spec.vertices; ++b) {
      if (a == b) continue;
      if (rng.below(100) < static_cast<std::uint64_t>(spec.density_percent))
        g.add_edge(a, b);
    }
  inst.k = spec.k;
  make_unrestricted(inst);
  return inst;
}

}  // namespace flg
