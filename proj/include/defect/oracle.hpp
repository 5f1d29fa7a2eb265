#pragma once

// Brute-force ground truth on finite groups. Everything here works by
// enumerating elements of cyclic decompositions with machine integers and is
// deliberately independent of the lattice machinery used by the engine.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "defect/fpab.hpp"

namespace defect::oracle {

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kEnumerationLimit = 1'000'000;

/// Cyclic orders of the Smith generators of a finite group.
std::vector<std::int64_t> cyclic_orders(const FpGroup& g);

/// Every element of Z/o_1 + ... + Z/o_k in mixed radix order.
std::vector<std::vector<std::int64_t>> elements(const std::vector<std::int64_t>& orders);

/// A homomorphism given by the images of the Smith generators of its source,
/// in Smith coordinates of its target.
struct ExplicitHom {
  std::vector<std::vector<std::int64_t>> images;
};

/// All homomorphisms A -> B. Requires |A| * |B| <= kEnumerationLimit.
std::vector<ExplicitHom> enumerate_homs(const FpGroup& a, const FpGroup& b);

std::int64_t element_count(const FpGroup& g);

/// im(f) == ker(g), decided by enumerating A and B.
bool exact_by_counting(const Morphism& f, const Morphism& g);

/// One group for every isomorphism type of order <= max_order, by invariant
/// factors; the trivial group comes first.
std::vector<FpGroup> abelian_groups_up_to(std::int64_t max_order);

}  // namespace defect::oracle
