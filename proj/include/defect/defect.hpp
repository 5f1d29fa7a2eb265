#pragma once

// The defect functor of a morphism beta: L -> P,
//     Dev_beta(X) = Hom(L, X) / { g o beta : g in Hom(P, X) },
// with its action on morphisms and the exact sequences it sits in.

#include <optional>

#include "defect/homext.hpp"

namespace defect {

class DefectValue {
 public:
  DefectValue(const Morphism& beta, const FpGroup& at);

  const Morphism& beta() const { return beta_; }
  const FpGroup& at() const { return at_; }
  /// Hom(L, X).
  const HomGroup& hom() const { return hom_; }
  /// Hom(P, X) -> Hom(L, X), precomposition with beta.
  const Morphism& induced() const { return induced_; }
  const FpGroup& carrier() const { return carrier_; }
  /// Hom(L, X).carrier -> carrier.
  const Morphism& projection() const { return projection_; }

  /// Class of alpha: L -> X.
  IntVector encode(const Morphism& alpha) const;
  /// Coset representative L -> X of a carrier element.
  Morphism representative(const IntVector& x) const;

 private:
  Morphism beta_;
  FpGroup at_;
  HomGroup hom_;
  Morphism induced_;
  FpGroup carrier_;
  Morphism projection_;
  IntMatrix section_;  // carrier coordinates -> Hom(L, X) carrier coordinates
};

DefectValue dev(const Morphism& beta, const FpGroup& x);

/// Dev_beta(f): [alpha] -> [f o alpha].
Morphism dev_map(const DefectValue& from, const DefectValue& to, const Morphism& f);
Morphism dev_map(const Morphism& beta, const Morphism& f);

/// Map Dev_{beta1}(X) -> Dev_{beta2}(X), [alpha] -> [alpha o h], for
/// h: src(beta2) -> src(beta1). The caller guarantees well-definedness.
Morphism defect_precompose(const DefectValue& from, const DefectValue& to, const Morphism& h);

struct DevExtCheck {
  bool invariants_match = false;
  bool iso = false;
  /// Dev_beta(X) -> Ext^1(coker beta, X), sending [alpha] to the class of the
  /// cocycle alpha o T, where beta o T is the syzygy inclusion.
  Morphism witness;
  /// Checked only when a test morphism f was supplied.
  std::optional<bool> natural;
  bool holds() const { return invariants_match && iso && natural.value_or(true); }
};

/// Requires beta mono and dst(beta) free; throws PreconditionFailed otherwise.
DevExtCheck dev_vs_ext_check(const Morphism& beta, const FpGroup& x, const std::optional<Morphism>& f = std::nullopt);

/// 0 -> Dev_{beta_bar} -> Dev_beta -> Dev_{pi_K} -> 0 evaluated at X.
struct RestrictionSequence {
  Morphism pi_k;      ///< L -> L/K
  Morphism beta_bar;  ///< L/K -> P
  DefectValue bar;
  DefectValue mid;
  DefectValue pi;
  Morphism first;
  Morphism second;
  bool mono = false;
  bool exact_middle = false;
  bool epi = false;
  bool exact() const { return mono && exact_middle && epi; }
};

RestrictionSequence restriction_sequence(const Morphism& beta, const FpGroup& x);

/// 0 -> (M,X) -> (M,Y) -> (M,Z) -> Dev(X) -> Dev(Y) -> Dev(Z), M = coker beta.
struct HalfExactSequence {
  std::vector<FpGroup> nodes;
  std::vector<Morphism> maps;
  bool first_mono = false;
  /// Exactness at (M,Y), (M,Z), Dev(X), Dev(Y).
  std::array<bool, 4> exact_at{};
  /// Dev(Y) -> Dev(Z) onto; expected when src(beta) is free as well.
  bool last_epi = false;
  bool exact() const;
};

/// Requires dst(beta) free and an exact input sequence.
HalfExactSequence half_exact_sequence(const Morphism& beta, const ShortExact& ses);

/// Dev_beta(Z) for beta between free groups.
FpGroup transpose(const Morphism& beta);

}  // namespace defect
