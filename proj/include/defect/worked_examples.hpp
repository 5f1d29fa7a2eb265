#pragma once

// Two infinite instances modeled with towers:
//   * beta: Z -> Z[1/p] against the chain (1/n!)Z whose union is Q; the
//     comparison map for Dev_beta is Q -> 0.
//   * beta: Z[1/p] -> Q with H = Z; the induced map Z[1/p]/Z -> Q/Z splits,
//     but no left inverse lifts to Q -> Z[1/p] because Hom(Q, Z[1/p]) = 0.
// Z[1/p] is the Mult(p) tower, Q the factorial tower.

#include <vector>

#include "defect/tower.hpp"

namespace defect {

struct FgNonReport {
  Int p;
  std::size_t window = 0;
  /// Hom(Z[1/p], Z) = 0, so Dev_beta(F_n) = Hom(Z, F_n).
  TowerValue hom_zp_to_stage;
  std::vector<FpGroup> dev_levels;  ///< Dev_beta(F_n), n <= window
  /// Dev_beta(F_n) -> Dev_beta(F_{n+1}) injective, n < window.
  std::vector<bool> dev_transitions_mono;
  /// Dev_beta(Q) = 0: every f: Z -> Q extends along beta.
  Verdict dev_colim_zero;
  /// colim Dev_beta(F_n) != 0.
  Verdict colim_side_nonzero;
  Verdict phi_mono;
  Verdict phi_iso;
};

FgNonReport example_fg_non(const Int& p, std::size_t window);

struct LiftReport {
  Int p;
  std::size_t window = 0;
  /// Level of Q/Z receiving level k of Z[1/p]/Z.
  std::vector<std::size_t> target_level;
  /// The closed-form left inverse recovers the transition at every level.
  std::vector<bool> split_at_level;
  bool beta_bar_commutes = false;
  bool rho_commutes = false;
  Verdict split_mono;
  /// A lift Q -> Z[1/p] of the left inverse; CertifiedNo via Hom(Q, Z[1/p]) = 0.
  Verdict lift;
};

LiftReport example_nonliftable(const Int& p, std::size_t window);

struct DevPRow {
  FpGroup a;
  FpGroup dev;          ///< Dev_beta(A) for beta: Z -> Z[1/p]
  FpGroup quotient;     ///< A / D_p(A)
  Verdict hom_certificate;
  bool matches = false;
};

/// Dev_beta(A) for beta: Z -> Z[1/p] on finitely generated A.
DevPRow dev_into_localization(const FpGroup& a, const Int& p, std::size_t window);

}  // namespace defect
