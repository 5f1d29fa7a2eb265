#include "defect/fpab.hpp"

#include <sstream>
#include <utility>

namespace defect {

std::string Invariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << '^' << rank;
    first = false;
  }
  for (const auto& f : factors) {
    if (!first) os << " + ";
    os << "Z/" << f;
    first = false;
  }
  return os.str();
}

struct FpGroup::Data {
  std::size_t ngens = 0;
  IntMatrix rels;
  LatticeReducer reducer;
  Invariants inv;
  IntMatrix to_normal;
  IntMatrix from_normal;
  IntMatrix normal_rels;
};

FpGroup::FpGroup() : FpGroup(IntMatrix(0, 0)) {}

FpGroup::FpGroup(IntMatrix rels) {
  const std::size_t n = rels.rows();
  auto d = std::make_shared<Data>();
  d->ngens = n;
  d->reducer = LatticeReducer(rels, n);
  SnfResult s = snf(rels);
  IntMatrix uinv = unimodular_inverse(s.u);
  std::vector<std::size_t> torsion;
  std::vector<std::size_t> freeidx;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d(i, i) != 1) torsion.push_back(i);
  for (std::size_t i = s.rank; i < n; ++i) freeidx.push_back(i);
  d->inv.rank = freeidx.size();
  for (std::size_t i : torsion) d->inv.factors.push_back(s.d(i, i));
  std::vector<std::size_t> kept = torsion;
  kept.insert(kept.end(), freeidx.begin(), freeidx.end());
  d->to_normal = s.u.select_rows(kept);
  d->from_normal = uinv.select_columns(kept);
  d->normal_rels = IntMatrix(kept.size(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) d->normal_rels(i, i) = s.d(torsion[i], torsion[i]);
  d->rels = std::move(rels);
  d_ = std::move(d);
}

FpGroup FpGroup::free(std::size_t rank) { return FpGroup(IntMatrix(rank, 0)); }

FpGroup FpGroup::cyclic(const Int& n) {
  if (n == 0) return free(1);
  return FpGroup(IntMatrix(1, 1, {abs(n)}));
}

FpGroup FpGroup::from_invariants(const Invariants& inv) {
  const std::size_t t = inv.factors.size();
  IntMatrix rels(t + inv.rank, t);
  for (std::size_t i = 0; i < t; ++i) rels(i, i) = inv.factors[i];
  return FpGroup(std::move(rels));
}

std::size_t FpGroup::ngens() const { return d_->ngens; }
const IntMatrix& FpGroup::rels() const { return d_->rels; }
const Invariants& FpGroup::invariants() const { return d_->inv; }
const LatticeReducer& FpGroup::reducer() const { return d_->reducer; }
const IntMatrix& FpGroup::to_normal_matrix() const { return d_->to_normal; }
const IntMatrix& FpGroup::from_normal_matrix() const { return d_->from_normal; }
const IntMatrix& FpGroup::normal_rels() const { return d_->normal_rels; }

std::optional<Int> FpGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Int n = 1;
  for (const auto& f : invariants().factors) n *= f;
  return n;
}

IntVector FpGroup::canonical(const IntVector& v) const { return d_->reducer.reduce(v); }
bool FpGroup::is_relation(const IntVector& v) const { return d_->reducer.contains(v); }

bool FpGroup::same_presentation(const FpGroup& other) const {
  return d_ == other.d_ || (d_->ngens == other.d_->ngens && d_->rels == other.d_->rels);
}

// ---------------------------------------------------------------------------

Element::Element(FpGroup parent, const IntVector& coords)
    : parent_(std::move(parent)), coords_(parent_.canonical(coords)) {}

Element operator+(const Element& a, const Element& b) {
  if (!a.parent_.same_presentation(b.parent_)) throw InputError("element sum: different groups");
  return Element(a.parent_, add(a.coords_, b.coords_));
}

Element operator-(const Element& a) { return Element(a.parent_, scale(-1, a.coords_)); }

// ---------------------------------------------------------------------------

Morphism::Morphism(FpGroup src, FpGroup dst, const IntMatrix& mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(dst_.ngens(), src_.ngens()) {
  if (mat.rows() != dst_.ngens() || mat.cols() != src_.ngens())
    throw InputError("morphism matrix must have shape ngens(dst) x ngens(src)");
  const IntMatrix images = mat * src_.rels();
  for (std::size_t j = 0; j < images.cols(); ++j)
    if (!dst_.is_relation(images.column(j)))
      throw IncompatibleWithRelations("matrix does not send relator " + std::to_string(j) +
                                      " of the source into the relations of the target");
  for (std::size_t j = 0; j < mat.cols(); ++j) mat_.set_column(j, dst_.canonical(mat.column(j)));
}

Morphism Morphism::identity(const FpGroup& g) { return {g, g, IntMatrix::identity(g.ngens())}; }

Morphism Morphism::zero(const FpGroup& src, const FpGroup& dst) {
  return {src, dst, IntMatrix(dst.ngens(), src.ngens())};
}

IntVector Morphism::apply(const IntVector& x) const { return dst_.canonical(mat_ * x); }

namespace {

void require_parallel(const Morphism& f, const Morphism& g, const char* what) {
  if (!f.src().same_presentation(g.src()) || !f.dst().same_presentation(g.dst()))
    throw InputError(std::string(what) + ": morphisms are not parallel");
}

}  // namespace

bool operator==(const Morphism& f, const Morphism& g) {
  require_parallel(f, g, "morphism comparison");
  return f.mat_ == g.mat_;
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  require_parallel(f, g, "morphism sum");
  return {f.src_, f.dst_, f.mat_ + g.mat_};
}

Morphism operator-(const Morphism& f, const Morphism& g) {
  require_parallel(f, g, "morphism difference");
  return {f.src_, f.dst_, f.mat_ - g.mat_};
}

Morphism operator-(const Morphism& f) { return {f.src_, f.dst_, -f.mat_}; }

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!f.dst().same_presentation(g.src())) throw InputError("compose: morphisms are not composable");
  return {f.src(), g.dst(), g.matrix() * f.matrix()};
}

// ---------------------------------------------------------------------------

SmithForm smith_form(const FpGroup& g) {
  FpGroup normal(g.normal_rels());
  return {normal, Morphism(g, normal, g.to_normal_matrix()), Morphism(normal, g, g.from_normal_matrix())};
}

DirectSum direct_sum(const std::vector<FpGroup>& groups) {
  IntMatrix rels(0, 0);
  for (const auto& g : groups) rels = block_diag(rels, g.rels());
  FpGroup sum(rels);
  DirectSum out{sum, {}, {}};
  std::size_t offset = 0;
  for (const auto& g : groups) {
    IntMatrix inj(sum.ngens(), g.ngens());
    IntMatrix proj(g.ngens(), sum.ngens());
    for (std::size_t i = 0; i < g.ngens(); ++i) {
      inj(offset + i, i) = 1;
      proj(i, offset + i) = 1;
    }
    out.injections.emplace_back(g, sum, inj);
    out.projections.emplace_back(sum, g, proj);
    offset += g.ngens();
  }
  return out;
}

DirectSum direct_sum(const FpGroup& a, const FpGroup& b) { return direct_sum(std::vector<FpGroup>{a, b}); }

Morphism pair_into_sum(const Morphism& f, const Morphism& g, const DirectSum& sum) {
  if (!f.src().same_presentation(g.src())) throw InputError("pair_into_sum: sources differ");
  return compose(sum.injections.at(0), f) + compose(sum.injections.at(1), g);
}

Morphism copair_from_sum(const Morphism& f, const Morphism& g, const DirectSum& sum) {
  if (!f.dst().same_presentation(g.dst())) throw InputError("copair_from_sum: targets differ");
  return compose(f, sum.projections.at(0)) + compose(g, sum.projections.at(1));
}

namespace {

// Basis (columns) of {x in Z^n : f(x) is a relation of dst(f)}; this lattice
// contains the relations of src(f).
IntMatrix preimage_of_relations(const Morphism& f) {
  const std::size_t n = f.src().ngens();
  IntMatrix k = kernel_basis(hcat(f.matrix(), f.dst().rels()));
  return lattice_basis(k.row_range(0, n));
}

}  // namespace

Embedded kernel(const Morphism& f) {
  IntMatrix basis = preimage_of_relations(f);
  auto rels = solve(basis, f.src().rels());
  if (!rels) throw std::logic_error("kernel: relations not contained in kernel lattice");
  FpGroup k(*rels);
  return {k, Morphism(k, f.src(), basis)};
}

Embedded image(const Morphism& f) {
  FpGroup im(preimage_of_relations(f));
  return {im, Morphism(im, f.dst(), f.matrix())};
}

Quotient cokernel(const Morphism& f) {
  FpGroup c(hcat(f.dst().rels(), f.matrix()));
  return {c, Morphism(f.dst(), c, IntMatrix::identity(f.dst().ngens()))};
}

bool is_mono(const Morphism& f) { return kernel(f).group.is_zero(); }
bool is_epi(const Morphism& f) { return cokernel(f).group.is_zero(); }
bool is_iso(const Morphism& f) { return is_mono(f) && is_epi(f); }

bool is_exact(const Morphism& f, const Morphism& g) {
  if (!f.dst().same_presentation(g.src())) throw InputError("is_exact: morphisms are not composable");
  if (!compose(g, f).is_zero()) return false;
  LatticeReducer image_lattice(hcat(f.matrix(), f.dst().rels()), f.dst().ngens());
  IntMatrix ker = preimage_of_relations(g);
  for (std::size_t j = 0; j < ker.cols(); ++j)
    if (!image_lattice.contains(ker.column(j))) return false;
  return true;
}

PushoutResult pushout(const Morphism& f, const Morphism& g) {
  if (!f.src().same_presentation(g.src())) throw InputError("pushout: morphisms have different sources");
  DirectSum s = direct_sum(f.dst(), g.dst());
  Morphism h = pair_into_sum(f, -g, s);
  Quotient q = cokernel(h);
  return {q.group, compose(q.proj, s.injections[0]), compose(q.proj, s.injections[1])};
}

namespace {

std::variant<Morphism, Infeasible> single(const MorphismSystem& sys) {
  auto r = sys.solve();
  if (auto* inf = std::get_if<Infeasible>(&r)) return *inf;
  return std::get<std::vector<Morphism>>(r).front();
}

template <typename T>
std::optional<Morphism> value_or_none(const std::variant<Morphism, T>& r) {
  if (auto* m = std::get_if<Morphism>(&r)) return *m;
  return std::nullopt;
}

}  // namespace

std::variant<Morphism, Infeasible> left_inverse_or_refute(const Morphism& f) {
  MorphismSystem sys;
  std::size_t g = sys.add_unknown(f.dst(), f.src());
  const IntMatrix id = IntMatrix::identity(f.src().ngens());
  sys.add_congruence(f.src(), {{id, g, f.matrix()}}, id);
  return single(sys);
}

std::optional<Morphism> left_inverse(const Morphism& f) { return value_or_none(left_inverse_or_refute(f)); }

std::variant<Morphism, Infeasible> right_inverse_or_refute(const Morphism& f) {
  MorphismSystem sys;
  std::size_t s = sys.add_unknown(f.dst(), f.src());
  const IntMatrix id = IntMatrix::identity(f.dst().ngens());
  sys.add_congruence(f.dst(), {{f.matrix(), s, id}}, id);
  return single(sys);
}

std::optional<Morphism> right_inverse(const Morphism& f) { return value_or_none(right_inverse_or_refute(f)); }

Embedded subgroup_generated(const FpGroup& g, const std::vector<IntVector>& elements) {
  IntMatrix gens = IntMatrix::from_columns(g.ngens(), elements);
  return image(Morphism(FpGroup::free(elements.size()), g, gens));
}

Quotient quotient_by(const Morphism& incl) {
  if (!is_mono(incl)) throw NotMono("quotient_by: inclusion has a nonzero kernel");
  return cokernel(incl);
}

bool is_prime(const Int& p) {
  if (p < 2) return false;
  Int pc = p;
  return mpz_probab_prime_p(pc.get_mpz_t(), 40) > 0;
}

Embedded coprime_torsion_part(const FpGroup& g, const Int& c) {
  if (c < 1) throw InputError("coprime_torsion_part: modulus must be positive");
  const auto& factors = g.invariants().factors;
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Int part = factors[i];
    Int common;
    while (true) {
      mpz_gcd(common.get_mpz_t(), part.get_mpz_t(), c.get_mpz_t());
      if (common == 1) break;
      part /= common;
    }
    if (part == 1) continue;
    // (factor / part) * e_i generates the part of Z/factor coprime to c.
    gens.push_back(scale(factors[i] / part, g.from_normal_matrix().column(i)));
  }
  return subgroup_generated(g, gens);
}

Embedded p_divisible_part(const FpGroup& g, const Int& p) {
  if (!is_prime(p)) throw InputError("p_divisible_part: " + p.get_str() + " is not prime");
  return coprime_torsion_part(g, p);
}

std::optional<Morphism> lift_through(const Morphism& p, const Morphism& g) {
  if (!p.dst().same_presentation(g.dst())) throw InputError("lift_through: targets differ");
  MorphismSystem sys;
  std::size_t h = sys.add_unknown(g.src(), p.src());
  sys.add_congruence(p.dst(), {{p.matrix(), h, IntMatrix::identity(g.src().ngens())}}, g.matrix());
  return value_or_none(single(sys));
}

std::optional<Morphism> factor_through(const Morphism& i, const Morphism& g) {
  if (!i.dst().same_presentation(g.dst())) throw InputError("factor_through: targets differ");
  MorphismSystem sys;
  std::size_t h = sys.add_unknown(g.src(), i.src());
  sys.add_congruence(i.dst(), {{i.matrix(), h, IntMatrix::identity(g.src().ngens())}}, g.matrix());
  return value_or_none(single(sys));
}

Morphism descend(const Quotient& q1, const Quotient& q2, const Morphism& f) {
  const FpGroup& a = q1.proj.src();
  if (q1.group.ngens() != a.ngens() ||
      !(q1.proj == Morphism(a, q1.group, IntMatrix::identity(a.ngens()))))
    throw InputError("descend: source quotient must keep the generators of its parent");
  return {q1.group, q2.group, q2.proj.matrix() * f.matrix()};
}

// ---------------------------------------------------------------------------

std::vector<IntMatrix> morphism_generators(const FpGroup& src, const FpGroup& dst) {
  const IntMatrix& rs = src.normal_rels();
  const IntMatrix& rd = dst.normal_rels();
  const std::size_t n = rs.rows();
  const std::size_t a = rs.cols();
  const std::size_t k = rd.rows();
  if (n == 0 || k == 0) return {};
  // (R_s^T (x) I_k) vec(M) - (I_a (x) R_d) vec(Q) = 0
  IntMatrix system = hcat(kron(rs.transpose(), IntMatrix::identity(k)), -kron(IntMatrix::identity(a), rd));
  IntMatrix sol = kernel_basis(system).row_range(0, k * n);
  IntMatrix basis = lattice_basis(sol);
  std::vector<IntMatrix> out;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    IntMatrix m = dst.from_normal_matrix() * unvec(basis.column(j), k, n) * src.to_normal_matrix();
    bool trivial = true;
    for (std::size_t c = 0; c < m.cols() && trivial; ++c) trivial = dst.is_relation(m.column(c));
    if (!trivial) out.push_back(std::move(m));
  }
  return out;
}

std::size_t MorphismSystem::add_unknown(const FpGroup& src, const FpGroup& dst) {
  Unknown u{src, dst, morphism_generators(src, dst), unknown_cols_};
  unknown_cols_ += u.gens.size();
  unknowns_.push_back(std::move(u));
  return unknowns_.size() - 1;
}

void MorphismSystem::add_congruence(const FpGroup& target, const std::vector<Term>& terms,
                                    const IntMatrix& rhs) {
  if (rhs.rows() != target.ngens()) throw InputError("congruence: right-hand side has wrong row count");
  const std::size_t q = rhs.cols();
  Block blk{rows_, target.ngens() * q, kron(IntMatrix::identity(q), target.rels()), {}, vec(rhs)};
  for (const auto& t : terms) {
    const Unknown& u = unknowns_.at(t.unknown);
    if (t.left.rows() != target.ngens() || t.left.cols() != u.dst.ngens() ||
        t.right.rows() != u.src.ngens() || t.right.cols() != q)
      throw InputError("congruence: term shapes do not match the unknown");
    IntMatrix cols(blk.rows, u.gens.size());
    for (std::size_t j = 0; j < u.gens.size(); ++j) cols.set_column(j, vec(t.left * u.gens[j] * t.right));
    blk.columns.emplace_back(t.unknown, std::move(cols));
  }
  rows_ += blk.rows;
  blocks_.push_back(std::move(blk));
}

IntMatrix MorphismSystem::coefficients() const {
  std::size_t slack_cols = 0;
  for (const auto& b : blocks_) slack_cols += b.slack.cols();
  IntMatrix a(rows_, unknown_cols_ + slack_cols);
  std::size_t slack_offset = unknown_cols_;
  for (const auto& b : blocks_) {
    for (const auto& [u, cols] : b.columns) {
      const std::size_t off = unknowns_[u].offset;
      for (std::size_t i = 0; i < cols.rows(); ++i)
        for (std::size_t j = 0; j < cols.cols(); ++j) a(b.row_offset + i, off + j) += cols(i, j);
    }
    for (std::size_t i = 0; i < b.slack.rows(); ++i)
      for (std::size_t j = 0; j < b.slack.cols(); ++j) a(b.row_offset + i, slack_offset + j) = b.slack(i, j);
    slack_offset += b.slack.cols();
  }
  return a;
}

IntVector MorphismSystem::rhs() const {
  IntVector r;
  r.reserve(rows_);
  for (const auto& b : blocks_) r.insert(r.end(), b.rhs.begin(), b.rhs.end());
  return r;
}

std::variant<std::vector<Morphism>, Infeasible> MorphismSystem::solve() const {
  LinearSolver solver(coefficients());
  auto r = solver.solve_or_refute(rhs());
  if (auto* inf = std::get_if<Infeasible>(&r)) return *inf;
  const IntVector& x = std::get<IntVector>(r);
  std::vector<Morphism> out;
  for (const auto& u : unknowns_) {
    IntMatrix m(u.dst.ngens(), u.src.ngens());
    for (std::size_t j = 0; j < u.gens.size(); ++j)
      if (x[u.offset + j] != 0) m = m + x[u.offset + j] * u.gens[j];
    out.emplace_back(u.src, u.dst, m);
  }
  return out;
}

}  // namespace defect
