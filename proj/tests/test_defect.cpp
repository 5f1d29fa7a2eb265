#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defect/defect.hpp"
#include "support.hpp"

using namespace defect;
using defect::testing::random_group;
using defect::testing::random_morphism;

namespace {

Invariants inv(std::size_t rank, IntVector factors) { return Invariants{rank, std::move(factors)}; }

Morphism scalar(const FpGroup& a, const FpGroup& b, long c) { return Morphism(a, b, IntMatrix{{c}}); }

// A monomorphism into a free group: a random full-column-rank integer matrix.
Morphism random_mono_into_free(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dn(1, 3);
  std::size_t n = dn(rng);
  std::uniform_int_distribution<std::size_t> dl(0, n);
  std::size_t l = dl(rng);
  while (true) {
    IntMatrix m = defect::testing::random_matrix(rng, n, l, -4, 4);
    if (snf(m).rank == l) return Morphism(FpGroup::free(l), FpGroup::free(n), m);
  }
}

}  // namespace

TEST_CASE("dev: reference cases") {
  FpGroup z = FpGroup::free(1), z4 = FpGroup::cyclic(4), zero;
  FpGroup x(IntMatrix{{6, 0}, {0, 0}});
  CHECK(dev(Morphism::zero(zero, z), x).carrier().is_zero());
  // P = 0: Dev is Hom(L, -).
  FpGroup l(IntMatrix{{4}, {0}});
  CHECK(dev(Morphism::zero(l, zero), x).carrier().isomorphic_to(hom_group(l, x).carrier()));
  // Hom(Z, Z/4) = Z/4 and precomposition with 2 has image 2 Z/4.
  CHECK(dev(scalar(z, z, 2), z4).carrier().invariants() == inv(0, {2}));
}

TEST_CASE("dev: projection is onto and kills the image of Hom(beta, X)") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    FpGroup l = random_group(rng, 3, 5), p = random_group(rng, 3, 5), x = random_group(rng, 3, 5);
    Morphism beta = random_morphism(rng, l, p);
    DefectValue d(beta, x);
    CHECK(is_epi(d.projection()));
    CHECK(compose(d.projection(), d.induced()).is_zero());
    CHECK(is_exact(d.induced(), d.projection()));
    // Representatives re-encode to their class.
    for (std::size_t i = 0; i < d.carrier().ngens(); ++i) {
      IntVector e(d.carrier().ngens(), 0);
      e[i] = 1;
      CHECK(d.encode(d.representative(e)) == d.carrier().canonical(e));
    }
  }
}

TEST_CASE("dev: additive in X") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    FpGroup l = random_group(rng, 3, 5), p = random_group(rng, 3, 5);
    FpGroup x = random_group(rng, 2, 5), y = random_group(rng, 2, 5);
    Morphism beta = random_morphism(rng, l, p);
    FpGroup lhs = dev(beta, direct_sum(x, y).group).carrier();
    FpGroup rhs = direct_sum(dev(beta, x).carrier(), dev(beta, y).carrier()).group;
    CHECK(lhs.isomorphic_to(rhs));
  }
}

TEST_CASE("dev_map: spec examples and functoriality") {
  FpGroup z = FpGroup::free(1), z4 = FpGroup::cyclic(4), z2 = FpGroup::cyclic(2);
  Morphism beta = scalar(z, z, 2);
  Morphism m = dev_map(beta, scalar(z4, z2, 1));
  CHECK(m.src().invariants() == inv(0, {2}));
  CHECK(m.dst().invariants() == inv(0, {2}));
  CHECK(is_iso(m));
  CHECK(dev_map(beta, Morphism::identity(z4)) == Morphism::identity(dev(beta, z4).carrier()));
  CHECK(dev_map(beta, Morphism::zero(z4, z2)).is_zero());

  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    FpGroup l = random_group(rng, 2, 5), p = random_group(rng, 2, 5);
    FpGroup x = random_group(rng, 2, 5), y = random_group(rng, 2, 5), w = random_group(rng, 2, 5);
    Morphism b = random_morphism(rng, l, p);
    Morphism f = random_morphism(rng, x, y), g = random_morphism(rng, y, w);
    DefectValue dx(b, x), dy(b, y), dw(b, w);
    CHECK(dev_map(dx, dw, compose(g, f)) == compose(dev_map(dy, dw, g), dev_map(dx, dy, f)));
    // Naturality against the projections from Hom(L, -).
    Morphism hom_f = induced_post(f, dx.hom(), dy.hom());
    CHECK(compose(dy.projection(), hom_f) == compose(dev_map(dx, dy, f), dx.projection()));
  }
}

TEST_CASE("dev_vs_ext_check: reference cases") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::free(2);
  FpGroup x(IntMatrix{{12, 0}, {0, 0}});
  for (long n = 1; n <= 6; ++n) {
    Morphism beta = scalar(z, z, n);
    auto r = dev_vs_ext_check(beta, x);
    CHECK(r.holds());
    Morphism times_n(x, x, Int(n) * IntMatrix::identity(2));
    CHECK(dev(beta, x).carrier().isomorphic_to(cokernel(times_n).group));
  }
  CHECK(dev(Morphism::identity(z), x).carrier().is_zero());
  CHECK(dev_vs_ext_check(Morphism::identity(z), x).holds());

  Morphism d23(z2, z2, IntMatrix{{2, 0}, {0, 3}});
  FpGroup z12 = FpGroup::cyclic(12);
  auto r = dev_vs_ext_check(d23, z12);
  CHECK(r.holds());
  CHECK(dev(d23, z12).carrier().invariants() == inv(0, {6}));

  CHECK_THROWS_AS(dev_vs_ext_check(Morphism::zero(z, z), x), PreconditionFailed);
  CHECK_THROWS_AS(dev_vs_ext_check(scalar(z, FpGroup::cyclic(5), 1), x), PreconditionFailed);
}

TEST_CASE("dev_vs_ext_check: random monomorphisms into free groups") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 60; ++t) {
    Morphism beta = random_mono_into_free(rng);
    FpGroup x = random_group(rng, 3, 6), y = random_group(rng, 3, 6);
    auto r = dev_vs_ext_check(beta, x, random_morphism(rng, x, y));
    CHECK(r.invariants_match);
    CHECK(r.iso);
    CHECK(r.natural.value_or(false));
  }
}

TEST_CASE("restriction_sequence: reference cases") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::free(2), z4 = FpGroup::cyclic(4);
  auto mono = restriction_sequence(scalar(z, z, 3), z4);
  CHECK(mono.exact());
  CHECK(mono.pi.carrier().is_zero());

  auto zero = restriction_sequence(Morphism::zero(z2, z), z4);
  CHECK(zero.exact());
  CHECK(zero.bar.carrier().is_zero());

  auto r = restriction_sequence(Morphism(z2, z, IntMatrix{{2, 0}}), z4);
  CHECK(r.exact());
  CHECK(*r.mid.carrier().order() == *r.bar.carrier().order() * *r.pi.carrier().order());
}

TEST_CASE("restriction_sequence: exact on random inputs") {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 80; ++t) {
    FpGroup l = random_group(rng, 4, 5), p = random_group(rng, 4, 5), x = random_group(rng, 3, 5);
    auto r = restriction_sequence(random_morphism(rng, l, p), x);
    CHECK(r.mono);
    CHECK(r.exact_middle);
    CHECK(r.epi);
  }
}

TEST_CASE("half_exact_sequence: reference cases") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::cyclic(2), z3 = FpGroup::cyclic(3);
  Morphism beta = scalar(z, z, 2);
  ShortExact ses{scalar(z, z, 2), scalar(z, z2, 1)};
  auto h = half_exact_sequence(beta, ses);
  CHECK(h.exact());
  CHECK(h.last_epi);

  DirectSum s = direct_sum(z3, z2);
  ShortExact split{s.injections[0], s.projections[1]};
  auto hs = half_exact_sequence(beta, split);
  CHECK(hs.exact());
  CHECK(hs.maps[2].is_zero());

  CHECK_THROWS_AS(half_exact_sequence(scalar(z, z2, 1), ses), PreconditionFailed);
  ShortExact bad{scalar(z, z, 2), Morphism::zero(z, z2)};
  CHECK_THROWS_AS(half_exact_sequence(beta, bad), PreconditionFailed);
}

TEST_CASE("half_exact_sequence: random sequences, free source gives right exactness") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<std::size_t> dim(0, 2);
    FpGroup l = random_group(rng, 2, 5);
    FpGroup p = FpGroup::free(dim(rng));
    FpGroup x = random_group(rng, 2, 4), z = random_group(rng, 2, 4);
    ExtGroup e(z, x);
    IntVector cls(e.carrier().ngens());
    for (auto& c : cls) c = static_cast<long>(rng() % 5);
    ShortExact ses = ext_class_to_extension(e, cls);
    CHECK(half_exact_sequence(random_morphism(rng, l, p), ses).exact());

    FpGroup lf = FpGroup::free(dim(rng));
    auto h = half_exact_sequence(random_morphism(rng, lf, p), ses);
    CHECK(h.exact());
    CHECK(h.last_epi);
  }
}

TEST_CASE("dev_map along an epimorphism is onto when L is free") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<std::size_t> dim(0, 3);
    FpGroup l = FpGroup::free(dim(rng)), p = random_group(rng, 3, 5);
    FpGroup y = random_group(rng, 3, 5);
    Morphism beta = random_morphism(rng, l, p);
    // Any quotient of Y gives an epimorphism.
    Morphism g = random_morphism(rng, FpGroup::free(1), y);
    Quotient q = cokernel(g);
    CHECK(is_epi(dev_map(beta, q.proj)));
  }
}

TEST_CASE("transpose: reference cases") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::free(2);
  for (long n = 1; n <= 7; ++n) CHECK(*transpose(scalar(z, z, n)).order() == n);
  CHECK(transpose(Morphism::identity(z2)).is_zero());
  CHECK(transpose(Morphism(z2, z2, IntMatrix{{2, 0}, {0, 3}})).invariants() == inv(0, {6}));
  Morphism wide(z2, z, IntMatrix{{2, 4}});
  CHECK(transpose(wide).isomorphic_to(FpGroup(IntMatrix{{2}, {4}})));
  CHECK_THROWS_AS(transpose(scalar(z, FpGroup::cyclic(3), 1)), PreconditionFailed);
}
