#pragma once

// Checkers for factorization and splitting conditions on a morphism
// beta: L -> P. Every "there exists a map" question is compiled to one joint
// integer system and decided exactly; refutations carry the infeasibility
// certificate of that system.

#include <optional>
#include <vector>

#include "defect/tower.hpp"

namespace defect {

class NonCommutative : public InputError {
 public:
  using InputError::InputError;
};

class NonExact : public InputError {
 public:
  using InputError::InputError;
};

/// id_L - g o beta == h2 o h1.
bool factor_check_fp(const Morphism& beta, const Morphism& g, const FpGroup& via, const Morphism& h1,
                     const Morphism& h2);

struct SplitPair {
  Verdict verdict;
  std::optional<Morphism> g;   ///< P -> L component of the left inverse
  std::optional<Morphism> h2;  ///< F -> L component
};

/// Whether (beta, h)^t: L -> P + F is a split monomorphism.
SplitPair split_pair_check(const Morphism& beta, const Morphism& h);

struct LiftedSplit {
  Verdict verdict;
  Morphism beta_bar;               ///< L/H -> P/beta(H)
  bool quotient_splits = false;    ///< beta_bar has some left inverse
  std::optional<Morphism> g_bar;   ///< P/beta(H) -> L/H
  std::optional<Morphism> g;       ///< P -> L lifting g_bar
};

/// beta_bar is split mono with a left inverse that lifts to P -> L.
/// `h` is the inclusion of the subgroup H into L.
LiftedSplit lifted_split_check(const Morphism& beta, const Morphism& h);

struct SplittingSmall {
  Verdict verdict;
  std::vector<std::size_t> complement;  ///< indices outside F
  PushoutResult pushout;
  Morphism rho;                          ///< pushout object -> coker beta
  std::optional<Morphism> section;
};

/// Pushes beta out along the projection of sigma onto the summands outside
/// `f` and asks whether the induced map onto coker beta splits.
SplittingSmall splitting_small_check(const Morphism& beta, const std::vector<FpGroup>& family, const Morphism& sigma,
                                     const std::vector<std::size_t>& f);

/// Smallest F (by size, then lexicographically) of size at most `max_size`
/// for which splitting_small_check certifies.
std::optional<std::vector<std::size_t>> find_splitting_subset(const Morphism& beta,
                                                              const std::vector<FpGroup>& family,
                                                              const Morphism& sigma, std::size_t max_size);

struct ChainSplit {
  Verdict verdict;
  std::optional<std::size_t> index;  ///< first n where L/L_n -> P/beta(L_n) splits
  std::optional<Morphism> left_inverse;
};

/// `chain[i]` is the inclusion L_i -> L; the L_i must be nested.
ChainSplit def_omega_check(const Morphism& beta, const std::vector<Morphism>& chain);

/// Two rows A_i -> B_i -> C -> 0 with vertical maps alpha_0, beta_0 and the
/// identity on C.
struct TransferDiagram {
  Morphism nu0, pi0;
  Morphism nu1, pi1;
  Morphism alpha0, beta0;
};

struct Transfer {
  bool hypothesis = false;  ///< B_0 / ker beta_0 -> C splits
  std::optional<Morphism> rho;      ///< its section
  std::optional<Morphism> section;  ///< section of pi_1 built from rho
  bool conclusion = false;          ///< pi_1 o section == id
};

/// Throws NonCommutative or NonExact on malformed input.
Transfer splitting_transfer_check(const TransferDiagram& d);

struct AlmostProjective {
  Verdict verdict;
  FpGroup projective;  ///< free part
  FpGroup finite;      ///< torsion part
  Morphism split;      ///< M -> projective + finite
  Morphism inverse;    ///< projective + finite -> M
};

/// Writes M as a free group plus a finitely presented one with explicit
/// mutually inverse maps. Over Z every finitely generated group is finitely
/// presented, so this always certifies.
AlmostProjective almost_projective_check(const FpGroup& m);

}  // namespace defect
