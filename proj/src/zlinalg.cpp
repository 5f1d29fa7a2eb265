#include "defect/zlinalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace defect {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw InputError("IntMatrix: entry count does not match shape");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::from_column(const IntVector& v) {
  return IntMatrix(v.size(), 1, v);
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  if (v.size() != rows_) throw InputError("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
  return m;
}

IntMatrix IntMatrix::column_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Int& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += factor * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Int& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product: inner dimensions differ");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Int& y = b(k, j);
        if (y != 0) c(i, j) += x * y;
      }
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw InputError("matrix-vector product: dimension mismatch");
  IntVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (a(i, k) != 0 && v[k] != 0) r[i] += a(i, k) * v[k];
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x = -x;
  return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    if (i + 1 < m.rows()) os << '\n';
  }
  return os;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hcat: row counts differ");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InputError("vcat: column counts differ");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return c;
}

IntVector vec(const IntMatrix& m) {
  IntVector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, j));
  return v;
}

IntMatrix unvec(const IntVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw InputError("unvec: length mismatch");
  IntMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
  return m;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("vector sum: length mismatch");
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("vector difference: length mismatch");
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

IntVector scale(const Int& s, const IntVector& v) {
  IntVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  Int am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------

HnfResult hnf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HnfResult res{a, IntMatrix::identity(m), 0, {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on column c over rows r.., always pivoting on the smallest entry.
    while (true) {
      std::size_t best = m;
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        ++nonzero;
        if (best == m || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (nonzero == 0) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      if (nonzero == 1) break;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = floor_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

IntVector SnfResult::diagonal() const {
  IntVector v(std::min(d.rows(), d.cols()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = d(i, i);
  return v;
}

namespace {

// Position of the smallest nonzero |entry| in d[t.., t..], if any.
std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {{i, j}};
      if (abs(d(i, j)) == 1) return best;
    }
  return best;
}

}  // namespace

SnfResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfResult res{a, IntMatrix::identity(m), IntMatrix::identity(n), 0};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    auto p = min_pivot(d, t);
    if (!p) break;
    d.swap_rows(t, p->first);
    u.swap_rows(t, p->first);
    d.swap_cols(t, p->second);
    v.swap_cols(t, p->second);
    while (true) {
      // Clear column t below the pivot.
      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) residue = true;
      }
      if (residue) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && (best == t || abs(d(i, t)) < abs(d(best, t)))) best = i;
        d.swap_rows(t, best);
        u.swap_rows(t, best);
        continue;
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) residue = true;
      }
      if (residue) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && (best == t || abs(d(t, j)) < abs(d(t, best)))) best = j;
        d.swap_cols(t, best);
        v.swap_cols(t, best);
        continue;
      }
      // Pivot must divide the whole trailing block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      d.negate_col(t);
      v.negate_col(t);
    }
  }
  res.rank = t;
  return res;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw InputError("unimodular_inverse: matrix is not square");
  HnfResult r = hnf(u);
  if (!r.h.is_identity()) throw InputError("unimodular_inverse: matrix is not unimodular");
  return r.u;
}

// ---------------------------------------------------------------------------

bool refutes(const IntMatrix& a, const IntVector& b, const Infeasible& cert) {
  if (cert.modulus < 2 || cert.w.size() != a.rows() || b.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Int s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += cert.w[i] * a(i, j);
    if (mod_floor(s, cert.modulus) != 0) return false;
  }
  return mod_floor(dot(cert.w, b), cert.modulus) != 0;
}

LinearSolver::LinearSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), snf_(snf(a)) {}

std::variant<IntVector, Infeasible> LinearSolver::solve_or_refute(const IntVector& b) const {
  if (b.size() != rows_) throw InputError("solve: right-hand side has wrong length");
  IntVector c = snf_.u * b;
  IntVector y(cols_);
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    const Int& di = snf_.d(i, i);
    if (c[i] % di != 0) return Infeasible{snf_.u.row(i), di};
    mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
  }
  for (std::size_t i = snf_.rank; i < rows_; ++i)
    if (c[i] != 0) return Infeasible{snf_.u.row(i), 2 * abs(c[i])};
  return snf_.v * y;
}

std::optional<IntVector> LinearSolver::solve(const IntVector& b) const {
  auto r = solve_or_refute(b);
  if (auto* x = std::get_if<IntVector>(&r)) return std::move(*x);
  return std::nullopt;
}

std::optional<IntMatrix> LinearSolver::solve(const IntMatrix& b) const {
  if (b.rows() != rows_) throw InputError("solve: right-hand side has wrong row count");
  IntMatrix x(cols_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto col = solve(b.column(j));
    if (!col) return std::nullopt;
    x.set_column(j, *col);
  }
  return x;
}

IntMatrix LinearSolver::kernel_basis() const {
  std::vector<std::size_t> idx;
  for (std::size_t j = snf_.rank; j < cols_; ++j) idx.push_back(j);
  return snf_.v.select_columns(idx);
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) {
  return LinearSolver(a).solve(b);
}

std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
  return LinearSolver(a).solve(b);
}

IntMatrix kernel_basis(const IntMatrix& a) { return LinearSolver(a).kernel_basis(); }

IntMatrix lattice_basis(const IntMatrix& gens) {
  HnfResult r = hnf(gens.transpose());
  return r.h.row_range(0, r.rank).transpose();
}

LatticeReducer::LatticeReducer(const IntMatrix& gens, std::size_t dim) : dim_(dim) {
  if (gens.rows() != dim) throw InputError("LatticeReducer: generator length mismatch");
  HnfResult r = hnf(gens.transpose());
  basis_ = r.h.row_range(0, r.rank);
  pivots_ = r.pivots;
}

IntVector LatticeReducer::reduce(IntVector v) const {
  if (v.size() != dim_) throw InputError("LatticeReducer: vector length mismatch");
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::size_t p = pivots_[i];
    Int q = floor_div(v[p], basis_(i, p));
    if (q == 0) continue;
    for (std::size_t j = p; j < dim_; ++j)
      if (basis_(i, j) != 0) v[j] -= q * basis_(i, j);
  }
  return v;
}

bool LatticeReducer::contains(const IntVector& v) const { return is_zero(reduce(v)); }

}  // namespace defect
