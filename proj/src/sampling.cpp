#include "defect/sampling.hpp"

namespace defect::sampling {

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

FpGroup random_group(Rng& rng, std::size_t max_gens, long max_entry) {
  std::uniform_int_distribution<std::size_t> ng(0, max_gens);
  std::size_t n = ng(rng);
  std::uniform_int_distribution<std::size_t> nr(0, n + 1);
  std::size_t r = nr(rng);
  return FpGroup(random_matrix(rng, n, r, -max_entry, max_entry));
}

FpGroup random_finite_group(Rng& rng, std::size_t max_factors, long max_order) {
  std::uniform_int_distribution<std::size_t> nf(0, max_factors);
  std::uniform_int_distribution<long> ord(1, max_order);
  IntVector d;
  for (std::size_t i = nf(rng); i > 0; --i) d.push_back(ord(rng));
  return FpGroup(IntMatrix::diagonal(d));
}

Morphism random_morphism(Rng& rng, const FpGroup& src, const FpGroup& dst, long range) {
  std::uniform_int_distribution<long> c(-range, range);
  IntMatrix m(dst.ngens(), src.ngens());
  for (const auto& g : morphism_generators(src, dst)) m = m + Int(c(rng)) * g;
  return Morphism(src, dst, m);
}

Morphism random_mono_into_free(Rng& rng, std::size_t max_rank) {
  std::uniform_int_distribution<std::size_t> dn(1, max_rank);
  std::size_t n = dn(rng);
  std::uniform_int_distribution<std::size_t> dl(0, n);
  std::size_t l = dl(rng);
  while (true) {
    IntMatrix m = random_matrix(rng, n, l, -4, 4);
    if (snf(m).rank == l) return Morphism(FpGroup::free(l), FpGroup::free(n), m);
  }
}

Morphism random_epi(Rng& rng, std::size_t max_gens) {
  FpGroup l = random_group(rng, max_gens, 5);
  return cokernel(random_morphism(rng, FpGroup::free(1), l)).proj;
}

ShortExact random_short_exact(Rng& rng, std::size_t max_gens, long max_entry) {
  FpGroup x = random_group(rng, max_gens, max_entry), z = random_group(rng, max_gens, max_entry);
  ExtGroup e(z, x);
  IntVector cls(e.carrier().ngens());
  for (auto& c : cls) c = static_cast<long>(rng() % 5);
  return ext_class_to_extension(e, cls);
}

Tower random_mono_tower(Rng& rng, std::size_t length, std::size_t max_gens) {
  std::vector<FpGroup> stages{random_group(rng, max_gens, 4)};
  std::vector<Morphism> trans;
  for (std::size_t i = 1; i < length; ++i) {
    FpGroup z = random_group(rng, 1, 4);
    ExtGroup e(z, stages.back());
    IntVector cls(e.carrier().ngens());
    for (auto& c : cls) c = static_cast<long>(rng() % 4);
    ShortExact s = ext_class_to_extension(e, cls);
    stages.push_back(s.incl.dst());
    trans.push_back(s.incl);
  }
  return Tower::finite(stages, trans);
}

}  // namespace defect::sampling
