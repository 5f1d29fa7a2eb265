#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defect/tower.hpp"
#include "support.hpp"

using namespace defect;
using defect::testing::random_group;
using defect::testing::random_morphism;

namespace {

Invariants inv(std::size_t rank, IntVector factors) { return Invariants{rank, std::move(factors)}; }

Morphism scalar(const FpGroup& a, const FpGroup& b, long c) { return Morphism(a, b, IntMatrix{{c}}); }

// A chain of extensions: stage i+1 is an extension of a random group by stage i.
Tower random_mono_tower(std::mt19937_64& rng, std::size_t length) {
  std::vector<FpGroup> stages{random_group(rng, 2, 4)};
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

}  // namespace

TEST_CASE("colim_truncated: reference cases") {
  FpGroup z6 = FpGroup::cyclic(6);
  auto c = colim_truncated(Tower::constant(z6), 5);
  CHECK(c.group.same_presentation(z6));
  for (const auto& v : c.injections) CHECK(v == Morphism::identity(z6));

  auto m = colim_truncated(Tower::mult(2), 3);
  CHECK(m.group.is_free());
  CHECK(m.injections.size() == 4);
  CHECK(m.injections[0].matrix() == IntMatrix{{8}});
  CHECK(m.injections[3].matrix() == IntMatrix{{1}});

  auto f = colim_truncated(Tower::factorial(), 3);
  CHECK(f.injections[1].matrix() == IntMatrix{{6}});
  CHECK(f.injections[0].matrix() == IntMatrix{{6}});
  CHECK(f.injections[2].matrix() == IntMatrix{{3}});
}

TEST_CASE("finite towers validate and read as eventually constant") {
  FpGroup z = FpGroup::free(1), z2 = FpGroup::cyclic(2);
  CHECK_THROWS_AS(Tower::finite({}, {}), InputError);
  CHECK_THROWS_AS(Tower::finite({z, z}, {}), InputError);
  CHECK_THROWS_AS(Tower::finite({z, z2}, {scalar(z2, z, 0)}), InputError);
  Tower t = Tower::finite({z, z}, {scalar(z, z, 3)});
  CHECK(t.mono());
  CHECK(t.stable_from() == std::optional<std::size_t>(1));
  CHECK(t.transition(5) == Morphism::identity(z));
  CHECK(t.composite(0, 7).matrix() == IntMatrix{{3}});
  CHECK(t.matches({z, z, z}, {scalar(z, z, 3), scalar(z, z, 1)}));
  CHECK_FALSE(Tower::finite({z, z2}, {scalar(z, z2, 1)}).mono());
}

TEST_CASE("direct_sum_as_tower: reference cases") {
  auto t = direct_sum_as_tower({FpGroup::cyclic(2), FpGroup::cyclic(3), FpGroup::cyclic(4)});
  CHECK(t.mono());
  CHECK(t.stage(0).invariants() == inv(0, {2}));
  CHECK(t.stage(1).invariants() == inv(0, {6}));
  CHECK(t.stage(2).invariants() == inv(0, {2, 12}));
  CHECK(direct_sum_as_tower({}).stage(0).is_zero());
  auto f = direct_sum_as_tower({FpGroup::free(1)}, 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(f.stage(i).invariants() == inv(i + 1, {}));
  CHECK(f.mono());
}

TEST_CASE("hom_from_fp: reference cases") {
  auto a = hom_from_fp(FpGroup::cyclic(2), Tower::factorial(), 8);
  CHECK(a.verdict.outcome == Outcome::CertifiedYes);
  CHECK(a.value.is_zero());
  CHECK(a.verdict.verify());

  auto b = hom_from_fp(FpGroup::free(1), Tower::mult(3), 5);
  CHECK(b.verdict.outcome == Outcome::Undetermined);
  CHECK(b.value.invariants() == inv(1, {}));
  CHECK_FALSE(b.verdict.recheck);

  auto c = hom_from_fp(FpGroup::free(1), Tower::constant(FpGroup::cyclic(6)), 8);
  CHECK(c.verdict.outcome == Outcome::CertifiedYes);
  CHECK(c.value.invariants() == inv(0, {6}));
  CHECK(c.verdict.verify());
}

TEST_CASE("hom_from_fp agrees with the truncated colimit when certified") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    Tower tw = random_mono_tower(rng, 3);
    FpGroup a = random_group(rng, 2, 4);
    auto r = hom_from_fp(a, tw, 4);
    REQUIRE(r.verdict.outcome == Outcome::CertifiedYes);
    CHECK(r.verdict.verify());
    CHECK(r.value.isomorphic_to(hom_group(a, colim_truncated(tw, 4).group).carrier()));
  }
}

TEST_CASE("hom_to_fp: reference cases") {
  for (long p : {2, 3, 5}) {
    auto r = hom_to_fp(Tower::mult(p), FpGroup::free(1), 8);
    CHECK(r.verdict.outcome == Outcome::CertifiedYes);
    CHECK(r.verdict.certificate == "divisibility");
    CHECK(r.value.is_zero());
    CHECK(r.verdict.verify());
  }
  FpGroup g(IntMatrix{{4, 0}, {0, 0}});
  FpGroup b(IntMatrix{{6}, {0}});
  auto c = hom_to_fp(Tower::constant(g), b, 8);
  CHECK(c.verdict.outcome == Outcome::CertifiedYes);
  CHECK(c.value.isomorphic_to(hom_group(g, b).carrier()));

  auto m = hom_to_fp(Tower::mult(2), FpGroup::cyclic(3), 8);
  CHECK(m.verdict.outcome == Outcome::CertifiedYes);
  CHECK(m.value.invariants() == inv(0, {3}));
  CHECK(m.verdict.verify());

  // Z/12 against doubling keeps only the 3-part.
  CHECK(hom_to_fp(Tower::mult(2), FpGroup::cyclic(12), 8).value.invariants() == inv(0, {3}));
  auto q = hom_to_fp(Tower::factorial(), FpGroup(IntMatrix{{12, 0}, {0, 0}}), 8);
  CHECK(q.value.is_zero());
  CHECK(q.verdict.verify());
}

TEST_CASE("phi_verdict: finitely presented source certifies epi with rechecked witnesses") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 30; ++t) {
    FpGroup l = random_group(rng, 2, 4), p = random_group(rng, 2, 4);
    Morphism beta = random_morphism(rng, l, p);
    Tower tw = random_mono_tower(rng, 3);
    for (std::size_t w : {1u, 3u}) {
      auto v = phi_verdict(beta, tw, w);
      CHECK(v.epi.outcome == Outcome::CertifiedYes);
      CHECK(v.epi.verify());
    }
  }
  auto m = phi_verdict(scalar(FpGroup::free(1), FpGroup::free(1), 2), Tower::mult(3), 2);
  CHECK(m.epi.outcome == Outcome::CertifiedYes);
  CHECK(m.epi.verify());
}

TEST_CASE("phi_verdict: epi beta and mono tower give injectivity") {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 30; ++t) {
    FpGroup l = random_group(rng, 2, 4);
    // A quotient of L gives an epimorphism.
    Quotient q = cokernel(random_morphism(rng, FpGroup::free(1), l));
    Tower tw = random_mono_tower(rng, 4);
    for (const auto& k : phi_truncated_kernels(q.proj, tw, 3)) CHECK(k.is_zero());
    auto v = phi_verdict(q.proj, Tower::finite({tw.stage(0), tw.stage(1)}, {tw.transition(0)}), 0);
    CHECK(v.mono.certified());
    CHECK(v.mono.verify());
  }
  auto v = phi_verdict(Morphism::identity(FpGroup::free(1)), Tower::mult(2), 4);
  CHECK(v.mono.outcome == Outcome::CertifiedYes);
  CHECK(v.mono.certificate == "epi-beta-mono-tower");
  CHECK(v.iso.outcome == Outcome::CertifiedYes);
  CHECK(v.iso.verify());
}

TEST_CASE("verdicts are monotone in the window") {
  FpGroup z = FpGroup::free(1);
  Morphism beta = scalar(z, z, 2);
  Tower t = Tower::finite({z, z, z}, {scalar(z, z, 2), scalar(z, z, 5)});
  auto early = phi_verdict(beta, t, 1);
  CHECK(early.mono.outcome == Outcome::Undetermined);
  for (std::size_t w = 2; w <= 5; ++w) {
    auto v = phi_verdict(beta, t, w);
    CHECK(v.mono.outcome == Outcome::CertifiedYes);
    CHECK(v.iso.verify());
  }
}

TEST_CASE("tower morphisms commute") {
  // Doubling tower into the factorial tower at the same level: squares need
  // x2 = x(k+1), so only the reindexed version commutes.
  TowerMorphism bad{Tower::mult(2), Tower::factorial(), [](std::size_t k) { return k; },
                    [](std::size_t) { return Morphism::identity(FpGroup::free(1)); }};
  CHECK_FALSE(commutes(bad, 3));
  TowerMorphism same{Tower::mult(2), Tower::mult(2), [](std::size_t k) { return k + 1; },
                     [](std::size_t) { return Morphism(FpGroup::free(1), FpGroup::free(1), IntMatrix{{2}}); }};
  CHECK(commutes(same, 5));
}
