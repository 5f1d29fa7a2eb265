#pragma once

// Countable chains of finitely presented groups (ind-objects) and
// truncation-honest questions about their colimits.
//
// A tower is either one of a few closed-form patterns or a finite list of
// stages. Finite lists are read as eventually constant: past the last stored
// stage every stage equals the last one and transitions are identities.

#include <functional>
#include <string>
#include <vector>

#include "defect/defect.hpp"

namespace defect {

enum class TowerKind {
  Mult,       ///< stages Z, transitions multiplication by c
  Factorial,  ///< stages Z, transition i -> i+1 is multiplication by i+1; colimit Q
  Constant,   ///< stages G, identity transitions
  FiniteList,
};

class Tower {
 public:
  static Tower mult(const Int& c);
  static Tower factorial();
  static Tower constant(const FpGroup& g);
  static Tower finite(std::vector<FpGroup> stages, std::vector<Morphism> transitions);

  TowerKind kind() const { return kind_; }
  /// Multiplier of a Mult tower.
  const Int& multiplier() const { return c_; }

  FpGroup stage(std::size_t i) const;
  Morphism transition(std::size_t i) const;
  /// stage i -> stage j for i <= j.
  Morphism composite(std::size_t i, std::size_t j) const;

  /// Every transition is a monomorphism.
  bool mono() const { return mono_; }
  /// First index from which all transitions are identities, if the pattern
  /// has one.
  std::optional<std::size_t> stable_from() const;
  /// All stages are Z and transitions are scalars.
  bool scalar() const { return kind_ == TowerKind::Mult || kind_ == TowerKind::Factorial; }
  Int scalar_factor(std::size_t i) const;

  /// The pattern reproduces the given truncation exactly.
  bool matches(const std::vector<FpGroup>& stages, const std::vector<Morphism>& transitions) const;

  std::string describe() const;

 private:
  TowerKind kind_ = TowerKind::FiniteList;
  Int c_;
  std::vector<FpGroup> stages_;
  std::vector<Morphism> transitions_;
  bool mono_ = true;
};

/// Chain of partial sums of `groups`, the list repeated `replication` times,
/// with the canonical inclusions. An empty list gives the zero tower.
Tower direct_sum_as_tower(const std::vector<FpGroup>& groups, std::size_t replication = 1);

struct TruncatedColimit {
  FpGroup group;                   ///< stage N
  std::vector<Morphism> injections;  ///< v_i: stage i -> stage N, i <= N
};

/// Approximates the colimit from below by stage N.
TruncatedColimit colim_truncated(const Tower& t, std::size_t n);

/// A compatible family of maps between levels of two towers (or between a
/// group, viewed as a constant tower, and a tower).
struct TowerMorphism {
  Tower src;
  Tower dst;
  std::function<std::size_t(std::size_t)> reindex;
  std::function<Morphism(std::size_t)> level;  ///< src_k -> dst_{reindex(k)}
};

/// Squares commute for every k < window.
bool commutes(const TowerMorphism& m, std::size_t window);

enum class Outcome { CertifiedYes, CertifiedNo, Undetermined };

std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Undetermined;
  std::string certificate;           ///< tag naming the certificate kind
  std::vector<std::string> witness;  ///< printable witness data
  std::size_t window = 0;
  /// Re-verifies the witness from the retained data; empty for Undetermined.
  std::function<bool()> recheck;

  bool certified() const { return outcome != Outcome::Undetermined; }
  bool verify() const { return !recheck || recheck(); }
};

Verdict undetermined(std::size_t window, std::string why = {});

struct TowerValue {
  FpGroup value;  ///< certified value, or the value at the window
  Verdict verdict;
};

/// colim_i Hom(A, T_i), which is Hom(A, colim T) since A is finitely presented.
TowerValue hom_from_fp(const FpGroup& a, const Tower& t, std::size_t window);
/// lim_i Hom(T_i, B) = Hom(colim T, B).
TowerValue hom_to_fp(const Tower& t, const FpGroup& b, std::size_t window);

/// Verdicts on the comparison map colim Dev_beta(T_i) -> Dev_beta(colim T).
struct PhiVerdict {
  Verdict epi;
  Verdict mono;
  Verdict iso;
};

/// Kernels of Dev_beta(T_i) -> Dev_beta(T_N) for i <= N.
std::vector<FpGroup> phi_truncated_kernels(const Morphism& beta, const Tower& t, std::size_t n);

PhiVerdict phi_verdict(const Morphism& beta, const Tower& t, std::size_t window = 8);

/// iso verdict from epi and mono verdicts.
Verdict combine_iso(const Verdict& epi, const Verdict& mono);

}  // namespace defect
