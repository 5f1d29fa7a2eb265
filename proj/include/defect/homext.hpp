#pragma once

// Hom and Ext^1 between finitely presented groups, realized as finitely
// presented carrier groups whose elements decode to explicit morphisms and
// cocycles.

#include <array>
#include <memory>
#include <vector>

#include "defect/fpab.hpp"

namespace defect {

/// Hom(src, dst) as a finitely presented group.
///
/// Construction: morphism_generators() gives matrices D_1..D_t spanning the
/// solutions M of M * R_src = R_dst * Q modulo matrices whose columns lie in
/// the relation lattice of dst. The raw carrier is Z^t modulo the lattice of
/// coefficient vectors c with sum c_j D_j == 0 (mod R_dst, columnwise); the
/// stored carrier is its Smith presentation.
class HomGroup {
 public:
  HomGroup(const FpGroup& src, const FpGroup& dst);

  const FpGroup& src() const;
  const FpGroup& dst() const;
  const FpGroup& carrier() const;

  /// Canonical carrier coordinates of f.
  IntVector encode(const Morphism& f) const;
  Morphism decode(const IntVector& x) const;
  /// decode of the i-th carrier generator.
  Morphism generator(std::size_t i) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

HomGroup hom_group(const FpGroup& a, const FpGroup& b);

/// Hom(A, B) -> Hom(A', B), x -> x o f, for f: A' -> A.
Morphism induced_pre(const Morphism& f, const FpGroup& b);
Morphism induced_pre(const Morphism& f, const HomGroup& from, const HomGroup& to);
/// Hom(A, B) -> Hom(A, B'), x -> g o x, for g: B -> B'.
Morphism induced_post(const Morphism& g, const FpGroup& a);
Morphism induced_post(const Morphism& g, const HomGroup& from, const HomGroup& to);

/// Ext^1(src, dst) computed from the free presentation
///     0 -> K -> F -> src -> 0,   F = Z^n (the generators of src),
/// with K free on a lattice basis of the relations of src. The carrier is
/// Hom(K, dst) / image(Hom(F, dst)); cocycles are morphisms K -> dst.
class ExtGroup {
 public:
  ExtGroup(const FpGroup& src, const FpGroup& dst);

  const FpGroup& src() const;
  const FpGroup& dst() const;
  const FpGroup& carrier() const;

  const FpGroup& free_cover() const;   ///< F
  const FpGroup& syzygies() const;     ///< K
  const Morphism& syzygy_incl() const; ///< K -> F
  const Morphism& cover() const;       ///< F -> src

  IntVector encode(const Morphism& cocycle) const;
  /// Representative cocycle K -> dst.
  Morphism cocycle(const IntVector& x) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

ExtGroup ext1(const FpGroup& a, const FpGroup& b);

/// Ext^1(A, B) -> Ext^1(A, B') induced by g: B -> B' on cocycles.
Morphism ext_induced_post(const Morphism& g, const ExtGroup& from, const ExtGroup& to);

/// 0 -> sub --incl--> middle --proj--> quot -> 0
struct ShortExact {
  Morphism incl;
  Morphism proj;
};

bool is_short_exact(const ShortExact& s);

/// Pushout of K -> F along the cocycle of x.
ShortExact ext_class_to_extension(const ExtGroup& e, const IntVector& x);
/// Class of an extension 0 -> dst(e) -> E -> src(e) -> 0.
IntVector extension_class(const ExtGroup& e, const ShortExact& s);

/// Connecting map Hom(A, Z) -> Ext^1(A, X) of 0 -> X -> Y -> Z -> 0:
/// phi o cover is lifted to F -> Y, restricted to K and factored through X.
Morphism connecting_map(const ShortExact& s, const HomGroup& hom_az, const ExtGroup& ext_ax);

/// Hom(A,X) -> Hom(A,Y) -> Hom(A,Z) -> Ext(A,X) -> Ext(A,Y) -> Ext(A,Z).
struct SixTerm {
  std::vector<FpGroup> nodes;
  std::vector<Morphism> maps;
  bool first_mono = false;
  /// Exactness at nodes 1..4.
  std::array<bool, 4> exact_at{};
  bool last_epi = false;
  bool all_exact() const;
};

SixTerm six_term_sequence(const FpGroup& a, const ShortExact& s);

}  // namespace defect
