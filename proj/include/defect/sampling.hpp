#pragma once

// Seeded random objects for property suites. Every generator draws from the
// caller's engine only, so a fixed seed reproduces the same objects.

#include <random>

#include "defect/tower.hpp"

namespace defect::sampling {

using Rng = std::mt19937_64;

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi);

/// Up to `max_gens` generators and up to max_gens + 1 random relators.
FpGroup random_group(Rng& rng, std::size_t max_gens, long max_entry = 6);

/// Diagonal presentation with up to `max_factors` cyclic factors.
FpGroup random_finite_group(Rng& rng, std::size_t max_factors, long max_order);

/// Random integer combination of the generators of Hom(src, dst).
Morphism random_morphism(Rng& rng, const FpGroup& src, const FpGroup& dst, long range = 3);

/// Full-column-rank matrix Z^l -> Z^n with 1 <= n <= max_rank.
Morphism random_mono_into_free(Rng& rng, std::size_t max_rank = 3);

/// Projection of a random group onto its quotient by a random cyclic subgroup.
Morphism random_epi(Rng& rng, std::size_t max_gens = 3);

/// Random short exact sequence: an extension of random groups from a random
/// Ext class.
ShortExact random_short_exact(Rng& rng, std::size_t max_gens = 2, long max_entry = 4);

/// Finite tower of `length` stages where each transition is the inclusion of
/// a random extension.
Tower random_mono_tower(Rng& rng, std::size_t length, std::size_t max_gens = 2);

}  // namespace defect::sampling
