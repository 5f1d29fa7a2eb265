#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "defect/oracle.hpp"
#include "defect/worked_examples.hpp"

using namespace defect;

TEST_CASE("Z in Z[1/p] against the factorial chain") {
  for (long p : {2, 3, 5}) {
    for (std::size_t w : {1u, 4u, 8u}) {
      auto r = example_fg_non(p, w);
      CHECK(r.hom_zp_to_stage.verdict.certificate == "divisibility");
      REQUIRE(r.dev_levels.size() == w + 1);
      for (const auto& d : r.dev_levels) CHECK(d.invariants() == Invariants{1, {}});
      for (bool b : r.dev_transitions_mono) CHECK(b);
      CHECK(r.dev_colim_zero.outcome == Outcome::CertifiedYes);
      CHECK(r.dev_colim_zero.verify());
      CHECK(r.colim_side_nonzero.verify());
      CHECK(r.phi_mono.outcome == Outcome::CertifiedNo);
      CHECK(r.phi_iso.outcome == Outcome::CertifiedNo);
      CHECK(r.phi_iso.certificate == "divisibility");
      CHECK(r.phi_iso.verify());
    }
  }
  CHECK_THROWS_AS(example_fg_non(4, 2), InputError);
}

TEST_CASE("Z[1/p]/Z in Q/Z splits but the left inverse does not lift") {
  for (long p : {2, 3, 5, 7}) {
    auto r = example_nonliftable(p, 6);
    REQUIRE(r.split_at_level.size() == 7);
    for (bool b : r.split_at_level) CHECK(b);
    CHECK(r.beta_bar_commutes);
    CHECK(r.rho_commutes);
    CHECK(r.split_mono.outcome == Outcome::CertifiedYes);
    CHECK(r.split_mono.verify());
    CHECK(r.lift.outcome == Outcome::CertifiedNo);
    CHECK(r.lift.verify());
  }
  // p^k divides m! first at m = 2, 4, 4, 6 for p = 2.
  auto r = example_nonliftable(2, 4);
  CHECK(r.target_level == std::vector<std::size_t>{0, 2, 4, 4, 6});
}

TEST_CASE("Dev into the localization is A / D_p(A)") {
  for (long p : {2, 3, 5}) {
    for (std::size_t r = 0; r <= 3; ++r) {
      auto row = dev_into_localization(FpGroup::free(r), p, 8);
      CHECK(row.matches);
      CHECK(row.dev.invariants() == Invariants{r, {}});
      CHECK(row.hom_certificate.verify());
    }
    // Finite groups: |A / D_p(A)| = |A| / |p^k A| for large k, by enumeration.
    for (const auto& a : oracle::abelian_groups_up_to(24)) {
      auto row = dev_into_localization(a, p, 8);
      CHECK(row.matches);
      auto orders = oracle::cyclic_orders(a);
      std::set<std::vector<std::int64_t>> image;
      for (auto x : oracle::elements(orders)) {
        for (std::size_t i = 0; i < x.size(); ++i)
          for (int k = 0; k < 6; ++k) x[i] = (x[i] * p) % orders[i];
        image.insert(x);
      }
      CHECK(*row.dev.order() == oracle::element_count(a) / static_cast<std::int64_t>(image.size()));
    }
  }
}
