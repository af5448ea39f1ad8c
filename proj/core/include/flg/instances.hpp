#pragma once
#include <cstdint>
#include <string>

#include "flg/game.hpp"
#include "flg/spe.hpp"

namespace flg {

/// Bundled reference instances, addressable by family name from the CLI:
/// fig1, fig3, fig5_left, fig5_right (epsilon), fig7_g3 (alpha), fig8 (k),
/// and a seeded random family. Figure edges are realized as directed arcs
/// exactly as they are laid out; the two zero-weight locations of fig1 are
/// lifted to weight 1/1000 to keep all client weights positive.
Instance make_fig1();
Instance make_fig3();
Instance make_fig5_left();
Instance make_fig5_right(const Scalar& epsilon);
Instance make_fig7_g3(const Scalar& alpha);
Instance make_fig8(int k);

/// The canonical placement each figure is drawn with.
Placement fig1_placement();
Placement fig3_placement();

/// The half-coverage clique placement of the fig8 family together with the
/// full client profile that stabilizes it: clients sit on the facility of
/// their own vertex; a facility deviating to a pendant vertex picks up that
/// vertex's client while its old client moves to the lowest-id other
/// facility. Verifies at alpha = 1 and covers exactly half the clients.
PartialCertificate fig8_certificate(const Instance& inst);

struct RandomSpec {
  int vertices = 6;
  int k = 2;
  /// Edge probability as percent (0..100).
  int density_percent = 30;
  bool unit_weights = true;
  /// When false, weights are random small rationals, occasionally with an
  /// irrational component.
  std::uint64_t seed = 1;
};

Instance make_random(const RandomSpec& spec);

/// Deterministic xorshift generator shared by the random family and the
/// test harness, so seeded outputs are identical across platforms.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  /// Uniform-ish value in [0, bound), deterministic, bound > 0.
  std::uint64_t below(std::uint64_t bound);
};

}  // namespace flg
