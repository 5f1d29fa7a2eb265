#pragma once

// Property suites shared by `defect selftest` and the acceptance runner. Each
// suite counts cases and failures and keeps a description of the first
// failure. Randomized suites take an explicit seed.

#include <cstdint>
#include <string>

namespace defect::properties {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
  void fail(const std::string& what);
};

/// U A V = D, |det U| = |det V| = 1 and the divisibility chain, on random
/// matrices up to max_dim x max_dim with entries in [-entry, entry].
SuiteResult normal_forms(std::uint64_t seed, std::size_t count, std::size_t max_dim = 6, long entry = 20);

/// |Hom(A, B)| from the engine against brute-force enumeration, for every pair
/// of isomorphism types of order <= max_order.
SuiteResult hom_oracle(long max_order);

/// Ext(Z/n, Z/m) against coker(n on Z/m) and Z/gcd(n, m), lo <= n, m <= hi.
SuiteResult ext_formula(long lo, long hi);

/// Engine exactness against counting, on every extension of C by A with
/// |A| |C| <= max_order (each Ext class).
SuiteResult ses_counting(long max_order);

/// Dev_beta(X) against Ext(coker beta, X) for monomorphisms into free groups,
/// with naturality along a random X -> Y.
SuiteResult dev_vs_ext(std::uint64_t seed, std::size_t count);

/// The restriction sequence is exact at all three positions.
SuiteResult restriction(std::uint64_t seed, std::size_t count);

/// Six-term exactness with dst(beta) free, and the last map onto when
/// src(beta) is free as well.
SuiteResult six_term(std::uint64_t seed, std::size_t count);

/// Epimorphic beta and mono towers: Dev_beta(T_i) -> Dev_beta(T_N) injective.
SuiteResult mono_unions(std::uint64_t seed, std::size_t count, std::size_t window);

/// Phi epi on the partial-sum tower agrees with the existence of a finite
/// splitting subset (searched up to five summands).
SuiteResult splitting_small(std::uint64_t seed, std::size_t count);

/// Finitely presented source: the epi verdict is certified and rechecks.
SuiteResult fp_source_epi(std::uint64_t seed, std::size_t count, std::size_t window);

}  // namespace defect::properties
