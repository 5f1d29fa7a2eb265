#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defect/homext.hpp"
#include "defect/oracle.hpp"
#include "support.hpp"

using namespace defect;
using defect::testing::random_finite_group;
using defect::testing::random_group;
using defect::testing::random_morphism;

namespace {

Invariants inv(std::size_t rank, IntVector factors) { return Invariants{rank, std::move(factors)}; }

Morphism scalar(const FpGroup& a, const FpGroup& b, long c) { return Morphism(a, b, IntMatrix{{c}}); }

IntVector random_element(std::mt19937_64& rng, const FpGroup& g, long range = 5) {
  std::uniform_int_distribution<long> d(-range, range);
  IntVector v(g.ngens());
  for (auto& x : v) x = d(rng);
  return g.canonical(v);
}

}  // namespace

TEST_CASE("hom_group: reference cases") {
  FpGroup b(IntMatrix{{4, 0}, {0, 0}});
  CHECK(hom_group(FpGroup::free(1), b).carrier().isomorphic_to(b));

  // 1 -> x with 4x = 0 in Z/6 leaves x in {0, 3}.
  auto h = hom_group(FpGroup::cyclic(4), FpGroup::cyclic(6));
  CHECK(h.carrier().invariants() == inv(0, {2}));
  CHECK(oracle::enumerate_homs(FpGroup::cyclic(4), FpGroup::cyclic(6)).size() == 2);
  Morphism g = h.generator(0);
  CHECK(g.matrix() == IntMatrix{{3}});
}

TEST_CASE("hom_group: Hom(Z/a, Z/b) = Z/gcd(a, b)") {
  for (long a = 1; a <= 12; ++a)
    for (long b = 1; b <= 12; ++b) {
      auto h = hom_group(FpGroup::cyclic(a), FpGroup::cyclic(b));
      long g = std::gcd(a, b);
      CHECK(*h.carrier().order() == g);
    }
  CHECK(hom_group(FpGroup::cyclic(5), FpGroup::free(2)).carrier().is_zero());
  CHECK(hom_group(FpGroup::free(2), FpGroup::free(3)).carrier().invariants() == inv(6, {}));
}

TEST_CASE("hom_group: encode and decode are inverse and additive") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 80; ++t) {
    FpGroup a = random_group(rng, 3, 6), b = random_group(rng, 3, 6);
    HomGroup h(a, b);
    Morphism f = random_morphism(rng, a, b), g = random_morphism(rng, a, b);
    CHECK(h.decode(h.encode(f)) == f);
    CHECK(h.encode(f + g) == h.carrier().canonical(add(h.encode(f), h.encode(g))));
    IntVector x = random_element(rng, h.carrier());
    CHECK(h.encode(h.decode(x)) == x);
  }
}

TEST_CASE("hom_group: carrier order matches the enumeration oracle on small finite groups") {
  auto groups = oracle::abelian_groups_up_to(12);
  for (const auto& a : groups)
    for (const auto& b : groups) {
      auto count = oracle::enumerate_homs(a, b).size();
      CHECK(*hom_group(a, b).carrier().order() == Int(static_cast<unsigned long>(count)));
    }
}

TEST_CASE("induced_pre: spec examples and naturality") {
  FpGroup z = FpGroup::free(1), z4 = FpGroup::cyclic(4);
  HomGroup h(z, z4);
  Morphism pre = induced_pre(scalar(z, z, 2), h, h);
  CHECK(pre.matrix() == IntMatrix{{2}});
  CHECK(induced_pre(Morphism::identity(z), z4) == Morphism::identity(h.carrier()));
  CHECK(induced_pre(Morphism::zero(z, z), z4).is_zero());

  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    FpGroup a1 = random_group(rng, 2, 5), a = random_group(rng, 2, 5), b = random_group(rng, 2, 5);
    Morphism f = random_morphism(rng, a1, a);
    HomGroup from(a, b), to(a1, b);
    Morphism m = induced_pre(f, from, to);
    IntVector x = random_element(rng, from.carrier());
    CHECK(to.decode(m.apply(x)) == compose(from.decode(x), f));
  }
}

TEST_CASE("induced_pre is contravariant and induced_post is covariant") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 40; ++t) {
    FpGroup a2 = random_group(rng, 2, 4), a1 = random_group(rng, 2, 4), a = random_group(rng, 2, 4),
            b = random_group(rng, 2, 4);
    Morphism g = random_morphism(rng, a2, a1), f = random_morphism(rng, a1, a);
    CHECK(induced_pre(compose(f, g), b) == compose(induced_pre(g, b), induced_pre(f, b)));

    FpGroup b1 = random_group(rng, 2, 4), b2 = random_group(rng, 2, 4);
    Morphism u = random_morphism(rng, b, b1), v = random_morphism(rng, b1, b2);
    CHECK(induced_post(compose(v, u), a) == compose(induced_post(v, a), induced_post(u, a)));
  }
  FpGroup z = FpGroup::free(1), z4 = FpGroup::cyclic(4);
  CHECK(induced_post(Morphism(z4, z4, IntMatrix{{2}}), z).matrix() == IntMatrix{{2}});
  CHECK(induced_post(Morphism::identity(z4), z) == Morphism::identity(hom_group(z, z4).carrier()));
}

TEST_CASE("ext1: reference cases") {
  FpGroup b(IntMatrix{{6, 0}, {0, 0}});
  CHECK(ext1(FpGroup::free(1), b).carrier().is_zero());
  CHECK(ext1(FpGroup::cyclic(4), FpGroup::cyclic(6)).carrier().invariants() == inv(0, {2}));
  // Ext(Z/n, B) = B / nB, computed directly as a cokernel.
  for (long n = 2; n <= 9; ++n) {
    Morphism times_n(b, b, Int(n) * IntMatrix::identity(2));
    CHECK(ext1(FpGroup::cyclic(n), b).carrier().isomorphic_to(cokernel(times_n).group));
  }
}

TEST_CASE("ext1: presentation independence") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 60; ++t) {
    FpGroup a = random_group(rng, 3, 6), b = random_group(rng, 3, 6);
    // Redundant presentation: an extra generator equal to a combination of the
    // old ones, and a duplicated relator.
    const std::size_t n = a.ngens();
    IntVector combo = random_element(rng, FpGroup::free(n), 3);
    IntMatrix rels(n + 1, a.rels().cols() + 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < a.rels().cols(); ++j) rels(i, j) = a.rels()(i, j);
    for (std::size_t i = 0; i < n; ++i) rels(i, a.rels().cols()) = combo[i];
    rels(n, a.rels().cols()) = -1;
    if (a.rels().cols() > 0)
      for (std::size_t i = 0; i < n; ++i) rels(i, a.rels().cols() + 1) = 2 * a.rels()(i, 0);
    FpGroup a2(rels);
    REQUIRE(a2.isomorphic_to(a));
    CHECK(ext1(a, b).carrier().isomorphic_to(ext1(a2, b).carrier()));
  }
}

TEST_CASE("ext_class_to_extension: reference cases") {
  FpGroup z2 = FpGroup::cyclic(2), z = FpGroup::free(1);
  ExtGroup e(z2, z2);
  REQUIRE(e.carrier().invariants() == inv(0, {2}));
  ShortExact split = ext_class_to_extension(e, {0});
  CHECK(is_short_exact(split));
  CHECK(split.incl.dst().invariants() == inv(0, {2, 2}));
  ShortExact nonsplit = ext_class_to_extension(e, {1});
  CHECK(is_short_exact(nonsplit));
  CHECK(nonsplit.incl.dst().invariants() == inv(0, {4}));
  CHECK(extension_class(e, nonsplit) == IntVector{1});

  ExtGroup ez(z2, z);
  REQUIRE(ez.carrier().invariants() == inv(0, {2}));
  ShortExact s = ext_class_to_extension(ez, {1});
  CHECK(is_short_exact(s));
  CHECK(s.incl.dst().invariants() == inv(1, {}));
}

TEST_CASE("ext_class_to_extension: classes round trip") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 50; ++t) {
    FpGroup a = random_group(rng, 2, 5), b = random_group(rng, 2, 5);
    ExtGroup e(a, b);
    IntVector x = random_element(rng, e.carrier());
    ShortExact s = ext_class_to_extension(e, x);
    CHECK(is_short_exact(s));
    CHECK(extension_class(e, s) == x);
  }
}

TEST_CASE("six-term Hom/Ext sequence is exact") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 40; ++t) {
    FpGroup a = random_group(rng, 2, 5), x = random_group(rng, 2, 5), z = random_group(rng, 2, 5);
    ExtGroup e(z, x);
    ShortExact s = ext_class_to_extension(e, random_element(rng, e.carrier()));
    SixTerm six = six_term_sequence(a, s);
    CHECK(six.first_mono);
    CHECK(six.exact_at[0]);
    CHECK(six.exact_at[1]);
    CHECK(six.exact_at[2]);
    CHECK(six.exact_at[3]);
    CHECK(six.last_epi);
  }
}

TEST_CASE("six-term sequence for 0 -> Z -> Z -> Z/2 -> 0 against Z/2") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::cyclic(2);
  ShortExact s{scalar(z, z, 2), scalar(z, z2, 1)};
  SixTerm six = six_term_sequence(z2, s);
  CHECK(six.all_exact());
  // Hom(Z/2, Z/2) = Z/2 maps isomorphically onto Ext(Z/2, Z) = Z/2.
  CHECK(is_iso(six.maps[2]));
}
