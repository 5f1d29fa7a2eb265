#pragma once

// Shared helpers for the test suites: seeded random objects and brute-force
// oracles that do not go through the normal-form code they check.

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "defect/fpab.hpp"
#include "defect/sampling.hpp"
#include "defect/zlinalg.hpp"

namespace defect::testing {

using sampling::random_finite_group;
using sampling::random_group;
using sampling::random_matrix;
using sampling::random_morphism;


inline long gcd_euclid(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Cofactor-expansion determinant; independent of the Bareiss routine.
inline Int det_cofactor(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Int minor = det_cofactor(m.select_rows(rows).select_columns(cols));
    total += (j % 2 == 0 ? 1 : -1) * m(0, j) * minor;
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

/// Determinantal divisors: g_k = gcd of all k x k minors (g_0 = 1). The
/// invariant factors are d_k = g_k / g_{k-1}.
inline IntVector invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  IntVector g{1};
  for (std::size_t k = 1; k <= r; ++k) {
    Int acc = 0;
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
        Int d = det_cofactor(a.select_rows(rs).select_columns(cs));
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
      });
    });
    g.push_back(acc);
  }
  IntVector d;
  for (std::size_t k = 1; k <= r; ++k) d.push_back(g[k - 1] == 0 ? Int(0) : Int(g[k] / g[k - 1]));
  return d;
}

/// Exhaustive search for an integer solution inside [-bound, bound]^n.
inline bool box_has_solution(const IntMatrix& a, const IntVector& b, long bound) {
  const std::size_t n = a.cols();
  IntVector x(n, -bound);
  if (n == 0) return is_zero(b);
  while (true) {
    if (a * x == b) return true;
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) return false;
    x[i] += 1;
  }
}

}  // namespace defect::testing
