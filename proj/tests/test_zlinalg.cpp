#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defect/zlinalg.hpp"
#include "support.hpp"

using namespace defect;
using defect::testing::box_has_solution;
using defect::testing::gcd_euclid;
using defect::testing::invariant_factors_by_minors;
using defect::testing::random_matrix;

namespace {

bool is_hnf(const HnfResult& r) {
  const IntMatrix& h = r.h;
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t p = r.pivots[i];
    if (h(i, p) <= 0) return false;
    for (std::size_t j = 0; j < p; ++j)
      if (h(i, j) != 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    if (i > 0 && r.pivots[i - 1] >= p) return false;
  }
  for (std::size_t i = r.rank; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) return false;
  return true;
}

bool is_snf(const SnfResult& r) {
  const IntMatrix& d = r.d;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  IntVector diag = r.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if ((i < r.rank) != (diag[i] != 0)) return false;
    if (i + 1 < r.rank && diag[i + 1] % diag[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf: reference cases") {
  auto r = hnf(IntMatrix{{0}});
  CHECK(r.h == IntMatrix{{0}});
  CHECK(r.u == IntMatrix{{1}});

  // gcd(4, 6) = 2
  CHECK(gcd_euclid(4, 6) == 2);
  r = hnf(IntMatrix{{4}, {6}});
  CHECK(r.h == IntMatrix{{2}, {0}});
  CHECK(r.u * IntMatrix{{4}, {6}} == r.h);

  r = hnf(IntMatrix::identity(3));
  CHECK(r.h.is_identity());
  CHECK(r.u.is_identity());
}

TEST_CASE("hnf: random matrices are in normal form with unimodular transform") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t m = rng() % 6 + 1, n = rng() % 6 + 1;
    IntMatrix a = random_matrix(rng, m, n, -20, 20);
    auto r = hnf(a);
    CHECK(r.u * a == r.h);
    CHECK(abs(determinant(r.u)) == 1);
    CHECK(is_hnf(r));
  }
}

TEST_CASE("hnf is a normal form: equal row lattices give equal H") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = random_matrix(rng, 4, 3, -9, 9);
    // Random unimodular row operations leave the row lattice unchanged.
    IntMatrix w = IntMatrix::identity(4);
    for (int k = 0; k < 6; ++k) {
      std::size_t i = rng() % 4, j = rng() % 4;
      if (i != j) w.add_row_multiple(i, j, Int(static_cast<long>(rng() % 5) - 2));
    }
    CHECK(hnf(a).h == hnf(w * a).h);
  }
}

TEST_CASE("snf: reference cases") {
  IntMatrix a{{2, 4}, {6, 8}};
  // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
  CHECK(invariant_factors_by_minors(a) == IntVector{2, 4});
  auto r = snf(a);
  CHECK(r.d == IntMatrix{{2, 0}, {0, 4}});
  CHECK(r.u * a * r.v == r.d);

  CHECK(snf(IntMatrix{{1}}).d == IntMatrix{{1}});
  CHECK(snf(IntMatrix::zero(2, 2)).d.is_zero());
}

TEST_CASE("snf: agrees with the determinantal-divisor oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t m = rng() % 4 + 1, n = rng() % 4 + 1;
    IntMatrix a = random_matrix(rng, m, n, -12, 12);
    auto r = snf(a);
    REQUIRE(r.u * a * r.v == r.d);
    CHECK(is_snf(r));
    CHECK(r.diagonal() == invariant_factors_by_minors(a));
  }
}

TEST_CASE("snf: degenerate shapes") {
  auto r = snf(IntMatrix(0, 3));
  CHECK(r.rank == 0);
  CHECK(r.v.is_identity());
  r = snf(IntMatrix(3, 0));
  CHECK(r.u.is_identity());
  r = snf(IntMatrix{{0, 0, 5}});
  CHECK(r.d == IntMatrix{{5, 0, 0}});
}

TEST_CASE("snf: negative pivots are absorbed into V") {
  auto r = snf(IntMatrix{{-3}});
  CHECK(r.d == IntMatrix{{3}});
  CHECK(r.v == IntMatrix{{-1}});
}

TEST_CASE("snf keeps exact values well beyond machine integers") {
  Int big("123456789012345678901234567890");
  IntMatrix a(2, 2, {big, Int(0), Int(0), big * 6});
  auto r = snf(a);
  CHECK(r.d(0, 0) == big);
  CHECK(r.d(1, 1) == big * 6);
  CHECK(r.u * a * r.v == r.d);
}

TEST_CASE("solve: reference cases") {
  CHECK(solve(IntMatrix{{2}}, IntVector{4}) == IntVector{2});
  CHECK_FALSE(solve(IntMatrix{{2}}, IntVector{3}).has_value());
  IntMatrix a{{2, 3}};
  auto x = solve(a, IntVector{1});
  REQUIRE(x.has_value());
  CHECK(a * *x == IntVector{1});
  CHECK_THROWS_AS(solve(a, IntVector{1, 2}), InputError);
}

TEST_CASE("solve: solutions verify, refusals are confirmed by box search and certificates") {
  std::mt19937_64 rng(14);
  int refused = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t m = rng() % 3 + 1, n = rng() % 3 + 1;
    IntMatrix a = random_matrix(rng, m, n, -4, 4);
    IntVector b(m);
    for (auto& v : b) v = static_cast<long>(rng() % 9) - 4;
    LinearSolver s(a);
    auto r = s.solve_or_refute(b);
    if (auto* x = std::get_if<IntVector>(&r)) {
      CHECK(a * *x == b);
    } else {
      ++refused;
      CHECK(refutes(a, b, std::get<Infeasible>(r)));
      CHECK_FALSE(box_has_solution(a, b, 6));
    }
  }
  CHECK(refused > 10);
}

TEST_CASE("kernel_basis: reference cases") {
  auto k = kernel_basis(IntMatrix{{1, 0}});
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == 0);
  CHECK(abs(k(1, 0)) == 1);

  k = kernel_basis(IntMatrix{{2, -2}});
  REQUIRE(k.cols() == 1);
  CHECK(IntMatrix{{2, -2}} * k == IntMatrix{{0}});
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == k(1, 0));

  CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
}

TEST_CASE("kernel_basis: spans every small kernel vector") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 60; ++t) {
    IntMatrix a = random_matrix(rng, 2, 3, -3, 3);
    IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == 3 - snf(a).rank);
    LinearSolver in_span(k);
    for (long x = -3; x <= 3; ++x)
      for (long y = -3; y <= 3; ++y)
        for (long z = -3; z <= 3; ++z) {
          IntVector v{x, y, z};
          if (is_zero(a * v)) CHECK(in_span.solve(v).has_value());
        }
  }
}

TEST_CASE("lattice reducer gives canonical residues") {
  IntMatrix gens{{2, 0}, {0, 3}};
  LatticeReducer red(gens, 2);
  CHECK(red.reduce({5, 7}) == IntVector{1, 1});
  CHECK(red.reduce({-1, -1}) == IntVector{1, 2});
  CHECK(red.contains({4, -9}));
  CHECK_FALSE(red.contains({1, 0}));
}

TEST_CASE("determinant and unimodular inverse") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 50; ++t) {
    IntMatrix a = random_matrix(rng, 4, 4, -5, 5);
    CHECK(determinant(a) == defect::testing::det_cofactor(a));
  }
  IntMatrix u{{2, 1}, {1, 1}};
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2}}), InputError);
}

TEST_CASE("kron and vec satisfy vec(L X R) = (R^T kron L) vec(X)") {
  std::mt19937_64 rng(17);
  IntMatrix l = random_matrix(rng, 2, 3, -3, 3);
  IntMatrix x = random_matrix(rng, 3, 4, -3, 3);
  IntMatrix r = random_matrix(rng, 4, 2, -3, 3);
  CHECK(vec(l * x * r) == kron(r.transpose(), l) * vec(x));
  CHECK(unvec(vec(x), 3, 4) == x);
}
