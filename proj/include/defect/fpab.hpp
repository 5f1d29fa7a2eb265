#pragma once

// Finitely presented abelian groups and their homomorphisms.
//
// A group with n generators is Z^n modulo the column span of its relation
// matrix `rels` (n rows, one relator per column). A morphism A -> B is an
// integer matrix with B.ngens() rows and A.ngens() columns acting on
// coordinate columns from the left; it must send every relator of A into
// the relation lattice of B. Morphisms are cosets: two matrices describe the
// same morphism when their columns agree modulo the relations of B, and the
// stored matrix is always the canonical representative.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "defect/zlinalg.hpp"

namespace defect {

/// A matrix does not send relators into relators.
class IncompatibleWithRelations : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMono : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Isomorphism type: Z^rank + Z/f1 + ... + Z/fk with 2 <= f1 | f2 | ... | fk.
struct Invariants {
  std::size_t rank = 0;
  IntVector factors;

  bool is_zero() const { return rank == 0 && factors.empty(); }
  friend bool operator==(const Invariants&, const Invariants&) = default;
  /// "Z^2 + Z/2 + Z/12", "0" for the zero group.
  std::string to_string() const;
};

class FpGroup {
 public:
  /// The zero group (no generators).
  FpGroup();
  explicit FpGroup(IntMatrix rels);

  static FpGroup free(std::size_t rank);
  /// Z/n; cyclic(0) is Z.
  static FpGroup cyclic(const Int& n);
  static FpGroup from_invariants(const Invariants& inv);

  std::size_t ngens() const;
  const IntMatrix& rels() const;
  const Invariants& invariants() const;
  bool is_zero() const { return invariants().is_zero(); }
  bool is_free() const { return invariants().factors.empty(); }
  bool is_finite() const { return invariants().rank == 0; }
  /// Cardinality, or nothing for infinite groups.
  std::optional<Int> order() const;

  /// Canonical coordinates of the class of v.
  IntVector canonical(const IntVector& v) const;
  bool is_relation(const IntVector& v) const;
  const LatticeReducer& reducer() const;

  /// Same generator count and identical relation matrix.
  bool same_presentation(const FpGroup& other) const;
  bool isomorphic_to(const FpGroup& other) const { return invariants() == other.invariants(); }

  // Change of generators to the Smith presentation (see smith_form()).
  const IntMatrix& to_normal_matrix() const;
  const IntMatrix& from_normal_matrix() const;
  const IntMatrix& normal_rels() const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

/// Element of a group, stored in canonical coordinates.
class Element {
 public:
  Element(FpGroup parent, const IntVector& coords);
  const FpGroup& parent() const { return parent_; }
  const IntVector& coords() const { return coords_; }
  bool is_zero() const { return defect::is_zero(coords_); }
  friend bool operator==(const Element& a, const Element& b) { return a.coords_ == b.coords_; }
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a);

 private:
  FpGroup parent_;
  IntVector coords_;
};

class Morphism {
 public:
  /// Validates compatibility; throws IncompatibleWithRelations or InputError.
  Morphism(FpGroup src, FpGroup dst, const IntMatrix& mat);

  static Morphism identity(const FpGroup& g);
  static Morphism zero(const FpGroup& src, const FpGroup& dst);

  const FpGroup& src() const { return src_; }
  const FpGroup& dst() const { return dst_; }
  /// Canonical representative.
  const IntMatrix& matrix() const { return mat_; }

  IntVector apply(const IntVector& x) const;
  bool is_zero() const { return mat_.is_zero(); }

  friend bool operator==(const Morphism& f, const Morphism& g);
  friend Morphism operator+(const Morphism& f, const Morphism& g);
  friend Morphism operator-(const Morphism& f, const Morphism& g);
  friend Morphism operator-(const Morphism& f);

 private:
  FpGroup src_;
  FpGroup dst_;
  IntMatrix mat_;
};

/// g o f
Morphism compose(const Morphism& g, const Morphism& f);

struct Embedded {
  FpGroup group;
  Morphism incl;
};

struct Quotient {
  FpGroup group;
  Morphism proj;
};

struct DirectSum {
  FpGroup group;
  std::vector<Morphism> injections;
  std::vector<Morphism> projections;
};

struct PushoutResult {
  FpGroup object;
  Morphism rho;  ///< B -> X
  Morphism nu;   ///< C -> X
};

/// Smith presentation of G: generators are the nontrivial cyclic factors
/// (torsion first, in divisibility order, then the free part).
struct SmithForm {
  FpGroup normal;
  Morphism to_normal;
  Morphism from_normal;
};

SmithForm smith_form(const FpGroup& g);

DirectSum direct_sum(const std::vector<FpGroup>& groups);
DirectSum direct_sum(const FpGroup& a, const FpGroup& b);

/// The morphism X -> A + B with components f and g.
Morphism pair_into_sum(const Morphism& f, const Morphism& g, const DirectSum& sum);
/// The morphism A + B -> Y restricting to f and g.
Morphism copair_from_sum(const Morphism& f, const Morphism& g, const DirectSum& sum);

Embedded kernel(const Morphism& f);
Embedded image(const Morphism& f);
/// Presented by adjoining the columns of f to the relations of dst(f).
Quotient cokernel(const Morphism& f);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);
bool is_iso(const Morphism& f);

/// im(f) == ker(g) inside the middle group.
bool is_exact(const Morphism& f, const Morphism& g);

PushoutResult pushout(const Morphism& f, const Morphism& g);

/// g with g o f == id, or a certificate that none exists.
std::variant<Morphism, Infeasible> left_inverse_or_refute(const Morphism& f);
std::optional<Morphism> left_inverse(const Morphism& f);
/// s with f o s == id, or a certificate that none exists.
std::variant<Morphism, Infeasible> right_inverse_or_refute(const Morphism& f);
std::optional<Morphism> right_inverse(const Morphism& f);

Embedded subgroup_generated(const FpGroup& g, const std::vector<IntVector>& elements);
/// Throws NotMono if incl has a nonzero kernel.
Quotient quotient_by(const Morphism& incl);

/// Largest p-divisible subgroup (p prime); for finitely generated groups this
/// is the torsion component of order prime to p.
Embedded p_divisible_part(const FpGroup& g, const Int& p);
/// Torsion component of order coprime to c (c >= 1), the largest subgroup D
/// with c D = D.
Embedded coprime_torsion_part(const FpGroup& g, const Int& c);

bool is_prime(const Int& p);

/// Given an epimorphism p: Y -> Z and g: F -> Z with F free, some h: F -> Y
/// with p o h == g.
std::optional<Morphism> lift_through(const Morphism& p, const Morphism& g);
/// Given i: X -> Y and g: W -> Y whose image lies in im(i), some h: W -> X
/// with i o h == g.
std::optional<Morphism> factor_through(const Morphism& i, const Morphism& g);

/// The morphism src(q1) -> src(q2) descended along two cokernel-style
/// quotients: q2.proj o f factored through q1.proj. Throws
/// IncompatibleWithRelations if f does not descend.
Morphism descend(const Quotient& q1, const Quotient& q2, const Morphism& f);

/// Matrices spanning Hom(src, dst) modulo the relations of dst.
///
/// Unknowns are the entries of the generator-image matrix M together with
/// the auxiliary matrix Q in the compatibility equation M * R_src = R_dst * Q;
/// the solution lattice of this homogeneous system is projected onto the M
/// coordinates. The computation runs on Smith presentations of both groups
/// and the result is transported back through the change-of-generator maps.
std::vector<IntMatrix> morphism_generators(const FpGroup& src, const FpGroup& dst);

/// Joint integer linear system whose unknowns are morphisms between fixed
/// groups. Each congruence reads
///     sum_t left_t * X_t * right_t  ==  rhs   (mod relations of target),
/// where left_t maps dst(X_t) coordinates to target coordinates and right_t
/// maps the equation's source coordinates to src(X_t) coordinates.
class MorphismSystem {
 public:
  struct Term {
    IntMatrix left;
    std::size_t unknown;
    IntMatrix right;
  };

  std::size_t add_unknown(const FpGroup& src, const FpGroup& dst);
  void add_congruence(const FpGroup& target, const std::vector<Term>& terms, const IntMatrix& rhs);

  /// Assembled coefficient matrix and right-hand side (slack columns for the
  /// relation lattices are included).
  IntMatrix coefficients() const;
  IntVector rhs() const;

  std::variant<std::vector<Morphism>, Infeasible> solve() const;

 private:
  struct Unknown {
    FpGroup src;
    FpGroup dst;
    std::vector<IntMatrix> gens;
    std::size_t offset;
  };
  struct Block {
    std::size_t row_offset;
    std::size_t rows;
    IntMatrix slack;  // (I (x) R_target)
    std::vector<std::pair<std::size_t, IntMatrix>> columns;  // unknown -> rows x gens
    IntVector rhs;
  };
  std::vector<Unknown> unknowns_;
  std::vector<Block> blocks_;
  std::size_t unknown_cols_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace defect
