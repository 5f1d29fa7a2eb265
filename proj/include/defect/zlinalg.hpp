#pragma once

// Exact integer matrix algebra over unbounded integers.
//
// Conventions used throughout the library:
//   * matrices are dense and row-major;
//   * vectors are plain std::vector<Int> treated as columns;
//   * every routine is a pure function of its arguments.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace defect {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Raised on malformed arguments (dimension mismatch, bad parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix diagonal(const IntVector& diag);
  static IntMatrix from_column(const IntVector& v);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Int>& entries() const { return data_; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix column_range(std::size_t begin, std::size_t end) const;
  IntMatrix row_range(std::size_t begin, std::size_t end) const;

  bool is_zero() const;
  bool is_identity() const;

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const Int& s, const IntMatrix& a);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// [a | b]
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
/// [a ; b]
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
/// Kronecker product a (x) b.
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
/// Column-major flattening, the convention paired with kron: vec(L X R) = (R^T (x) L) vec(X).
IntVector vec(const IntMatrix& m);
IntMatrix unvec(const IntVector& v, std::size_t rows, std::size_t cols);

bool is_zero(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Int& s, const IntVector& v);
Int dot(const IntVector& a, const IntVector& b);

/// Floor division: q = floor(a / b), b != 0.
Int floor_div(const Int& a, const Int& b);
/// Least nonnegative residue of a modulo |m|; m != 0.
Int mod_floor(const Int& a, const Int& m);

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Normal forms

/// Row-style Hermite normal form: U * A = H.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
  /// pivot column of each of the first `rank` rows of h (strictly increasing)
  std::vector<std::size_t> pivots;
};

/// H has positive pivots, entries above each pivot reduced into [0, pivot),
/// and zero rows at the bottom. U is unimodular.
HnfResult hnf(const IntMatrix& a);

/// Smith normal form: U * A * V = D.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  std::size_t rank = 0;
  /// d(i,i) for i < min(rows, cols)
  IntVector diagonal() const;
};

/// D is diagonal with nonnegative entries d1 | d2 | ... ; zeros last.
SnfResult snf(const IntMatrix& a);

/// Inverse of a unimodular matrix. Throws InputError if `u` is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& u);

// ---------------------------------------------------------------------------
// Linear systems

/// Witness that A x = b has no integer solution: a row vector w and modulus
/// m >= 2 with w * A == 0 (mod m) and w . b != 0 (mod m). (w/m is a rational
/// functional that is integral on the column lattice of A but not on b.)
struct Infeasible {
  IntVector w;
  Int modulus;
};

/// True iff `cert` refutes integer solvability of A x = b.
bool refutes(const IntMatrix& a, const IntVector& b, const Infeasible& cert);

/// Reusable integer solver for a fixed coefficient matrix (SNF computed once).
class LinearSolver {
 public:
  explicit LinearSolver(const IntMatrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return snf_.rank; }

  std::optional<IntVector> solve(const IntVector& b) const;
  std::variant<IntVector, Infeasible> solve_or_refute(const IntVector& b) const;
  /// Column-by-column solve of A X = B.
  std::optional<IntMatrix> solve(const IntMatrix& b) const;
  /// Columns form a Z-basis of {x : A x = 0}.
  IntMatrix kernel_basis() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  SnfResult snf_;
};

/// Some integer x with A x = b, or nothing if none exists.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);
std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b);

/// Z-basis of the integer kernel {x : A x = 0}, as columns.
/// Column count is cols(A) - rank(A).
IntMatrix kernel_basis(const IntMatrix& a);

/// Z-basis (as columns) of the lattice spanned by the columns of `gens`.
IntMatrix lattice_basis(const IntMatrix& gens);

/// Canonical residues modulo the lattice spanned by the columns of a matrix.
/// Reduction runs against the row-style HNF of the transposed generators, so
/// two vectors are congruent iff their reductions are identical.
class LatticeReducer {
 public:
  LatticeReducer() = default;
  LatticeReducer(const IntMatrix& gens, std::size_t dim);

  std::size_t dim() const { return dim_; }
  IntVector reduce(IntVector v) const;
  bool contains(const IntVector& v) const;
  /// Basis rows of the lattice in echelon form.
  const IntMatrix& basis_rows() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t dim_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace defect
