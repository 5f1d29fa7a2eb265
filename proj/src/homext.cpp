#include "defect/homext.hpp"

#include <stdexcept>

namespace defect {

namespace {

// Z^t modulo the columns of `rels`, re-presented on its Smith generators.
struct Simplified {
  FpGroup carrier;
  IntMatrix to;    // raw coordinates -> carrier coordinates
  IntMatrix from;  // carrier coordinates -> raw coordinates
};

Simplified simplify(const IntMatrix& rels) {
  FpGroup raw(rels);
  return {FpGroup(raw.normal_rels()), raw.to_normal_matrix(), raw.from_normal_matrix()};
}

IntMatrix columns_to_matrix(std::size_t rows, const std::vector<IntVector>& cols) {
  return IntMatrix::from_columns(rows, cols);
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

struct HomGroup::Data {
  FpGroup src;
  FpGroup dst;
  std::vector<IntMatrix> gens;
  // [vec(D_1) ... vec(D_t) | I_n (x) R_dst]
  LinearSolver solver;
  FpGroup carrier;
  IntMatrix to;
  IntMatrix from;
};

HomGroup::HomGroup(const FpGroup& src, const FpGroup& dst) {
  std::vector<IntMatrix> gens = morphism_generators(src, dst);
  const std::size_t n = src.ngens();
  const std::size_t k = dst.ngens();
  const std::size_t t = gens.size();
  IntMatrix coeffs(k * n, t);
  for (std::size_t j = 0; j < t; ++j) coeffs.set_column(j, vec(gens[j]));
  IntMatrix system = hcat(coeffs, kron(IntMatrix::identity(n), dst.rels()));
  IntMatrix rels = lattice_basis(kernel_basis(system).row_range(0, t));
  if (rels.rows() != t) rels = IntMatrix(t, 0);
  Simplified s = simplify(rels);
  d_ = std::make_shared<Data>(
      Data{src, dst, std::move(gens), LinearSolver(system), std::move(s.carrier), std::move(s.to), std::move(s.from)});
}

const FpGroup& HomGroup::src() const { return d_->src; }
const FpGroup& HomGroup::dst() const { return d_->dst; }
const FpGroup& HomGroup::carrier() const { return d_->carrier; }

IntVector HomGroup::encode(const Morphism& f) const {
  if (f.src().ngens() != d_->src.ngens() || f.dst().ngens() != d_->dst.ngens())
    throw InputError("HomGroup::encode: morphism has the wrong shape");
  const std::size_t t = d_->gens.size();
  if (t == 0) return {};
  auto x = d_->solver.solve(vec(f.matrix()));
  if (!x) throw std::logic_error("HomGroup::encode: morphism outside the span of the Hom generators");
  IntVector c(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(t));
  return d_->carrier.canonical(d_->to * c);
}

Morphism HomGroup::decode(const IntVector& x) const {
  if (x.size() != d_->carrier.ngens()) throw InputError("HomGroup::decode: wrong coordinate count");
  IntMatrix m(d_->dst.ngens(), d_->src.ngens());
  if (!x.empty()) {
    IntVector c = d_->from * x;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) m = m + c[j] * d_->gens[j];
  }
  return {d_->src, d_->dst, m};
}

Morphism HomGroup::generator(std::size_t i) const { return decode(unit(d_->carrier.ngens(), i)); }

HomGroup hom_group(const FpGroup& a, const FpGroup& b) { return HomGroup(a, b); }

Morphism induced_pre(const Morphism& f, const HomGroup& from, const HomGroup& to) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < from.carrier().ngens(); ++i) cols.push_back(to.encode(compose(from.generator(i), f)));
  return {from.carrier(), to.carrier(), columns_to_matrix(to.carrier().ngens(), cols)};
}

Morphism induced_pre(const Morphism& f, const FpGroup& b) {
  return induced_pre(f, hom_group(f.dst(), b), hom_group(f.src(), b));
}

Morphism induced_post(const Morphism& g, const HomGroup& from, const HomGroup& to) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < from.carrier().ngens(); ++i) cols.push_back(to.encode(compose(g, from.generator(i))));
  return {from.carrier(), to.carrier(), columns_to_matrix(to.carrier().ngens(), cols)};
}

Morphism induced_post(const Morphism& g, const FpGroup& a) {
  return induced_post(g, hom_group(a, g.src()), hom_group(a, g.dst()));
}

// ---------------------------------------------------------------------------

struct ExtGroup::Data {
  FpGroup src;
  FpGroup dst;
  FpGroup free_cover;
  FpGroup syzygies;
  Morphism incl;
  Morphism cover;
  FpGroup carrier;
  IntMatrix to;
  IntMatrix from;
};

ExtGroup::ExtGroup(const FpGroup& src, const FpGroup& dst) {
  const std::size_t n = src.ngens();
  const std::size_t k = dst.ngens();
  IntMatrix kb = lattice_basis(src.rels());
  if (kb.rows() != n) kb = IntMatrix(n, 0);
  const std::size_t r = kb.cols();
  FpGroup f = FpGroup::free(n);
  FpGroup syz = FpGroup::free(r);
  // Hom(K, dst) has coordinates vec(C) modulo I_r (x) R_dst; the image of
  // Hom(F, dst) is spanned by vec(M * Kb) = (Kb^T (x) I_k) vec(M).
  IntMatrix rels = hcat(kron(kb.transpose(), IntMatrix::identity(k)), kron(IntMatrix::identity(r), dst.rels()));
  if (rels.rows() != k * r) rels = IntMatrix(k * r, 0);
  Simplified s = simplify(rels);
  d_ = std::make_shared<Data>(Data{src, dst, f, syz, Morphism(syz, f, kb), Morphism(f, src, IntMatrix::identity(n)),
                                   std::move(s.carrier), std::move(s.to), std::move(s.from)});
}

const FpGroup& ExtGroup::src() const { return d_->src; }
const FpGroup& ExtGroup::dst() const { return d_->dst; }
const FpGroup& ExtGroup::carrier() const { return d_->carrier; }
const FpGroup& ExtGroup::free_cover() const { return d_->free_cover; }
const FpGroup& ExtGroup::syzygies() const { return d_->syzygies; }
const Morphism& ExtGroup::syzygy_incl() const { return d_->incl; }
const Morphism& ExtGroup::cover() const { return d_->cover; }

IntVector ExtGroup::encode(const Morphism& cocycle) const {
  if (cocycle.src().ngens() != d_->syzygies.ngens() || cocycle.dst().ngens() != d_->dst.ngens())
    throw InputError("ExtGroup::encode: cocycle has the wrong shape");
  return d_->carrier.canonical(d_->to * vec(cocycle.matrix()));
}

Morphism ExtGroup::cocycle(const IntVector& x) const {
  if (x.size() != d_->carrier.ngens()) throw InputError("ExtGroup::cocycle: wrong coordinate count");
  const std::size_t k = d_->dst.ngens();
  const std::size_t r = d_->syzygies.ngens();
  IntVector raw = x.empty() ? IntVector(k * r, 0) : d_->from * x;
  return {d_->syzygies, d_->dst, unvec(raw, k, r)};
}

ExtGroup ext1(const FpGroup& a, const FpGroup& b) { return ExtGroup(a, b); }

Morphism ext_induced_post(const Morphism& g, const ExtGroup& from, const ExtGroup& to) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < from.carrier().ngens(); ++i) {
    Morphism c = from.cocycle(unit(from.carrier().ngens(), i));
    cols.push_back(to.encode(Morphism(to.syzygies(), to.dst(), g.matrix() * c.matrix())));
  }
  return {from.carrier(), to.carrier(), columns_to_matrix(to.carrier().ngens(), cols)};
}

bool is_short_exact(const ShortExact& s) {
  return is_mono(s.incl) && is_exact(s.incl, s.proj) && is_epi(s.proj);
}

ShortExact ext_class_to_extension(const ExtGroup& e, const IntVector& x) {
  Morphism c = e.cocycle(x);
  PushoutResult po = pushout(e.syzygy_incl(), c);
  // The pushout keeps the generators of F + B; project onto F and then A.
  const std::size_t n = e.free_cover().ngens();
  IntMatrix proj(e.src().ngens(), po.object.ngens());
  for (std::size_t i = 0; i < n; ++i) proj(i, i) = 1;
  return {po.nu, Morphism(po.object, e.src(), proj)};
}

IntVector extension_class(const ExtGroup& e, const ShortExact& s) {
  auto h = lift_through(s.proj, e.cover());
  if (!h) throw PreconditionFailed("extension_class: projection is not onto");
  auto c = factor_through(s.incl, compose(*h, e.syzygy_incl()));
  if (!c) throw PreconditionFailed("extension_class: sequence is not exact in the middle");
  return e.encode(*c);
}

Morphism connecting_map(const ShortExact& s, const HomGroup& hom_az, const ExtGroup& ext_ax) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < hom_az.carrier().ngens(); ++i) {
    Morphism phi = hom_az.generator(i);
    auto h = lift_through(s.proj, Morphism(ext_ax.free_cover(), s.proj.dst(), phi.matrix() * ext_ax.cover().matrix()));
    if (!h) throw PreconditionFailed("connecting_map: projection is not onto");
    auto c = factor_through(s.incl, compose(*h, ext_ax.syzygy_incl()));
    if (!c) throw PreconditionFailed("connecting_map: sequence is not exact in the middle");
    cols.push_back(ext_ax.encode(*c));
  }
  return {hom_az.carrier(), ext_ax.carrier(), columns_to_matrix(ext_ax.carrier().ngens(), cols)};
}

bool SixTerm::all_exact() const {
  for (bool b : exact_at)
    if (!b) return false;
  return first_mono && last_epi;
}

SixTerm six_term_sequence(const FpGroup& a, const ShortExact& s) {
  const FpGroup& x = s.incl.src();
  const FpGroup& y = s.incl.dst();
  const FpGroup& z = s.proj.dst();
  HomGroup hx(a, x), hy(a, y), hz(a, z);
  ExtGroup ex(a, x), ey(a, y), ez(a, z);
  SixTerm out;
  out.nodes = {hx.carrier(), hy.carrier(), hz.carrier(), ex.carrier(), ey.carrier(), ez.carrier()};
  out.maps = {induced_post(s.incl, hx, hy), induced_post(s.proj, hy, hz), connecting_map(s, hz, ex),
              ext_induced_post(s.incl, ex, ey), ext_induced_post(s.proj, ey, ez)};
  out.first_mono = is_mono(out.maps[0]);
  for (std::size_t i = 0; i < 4; ++i) out.exact_at[i] = is_exact(out.maps[i], out.maps[i + 1]);
  out.last_epi = is_epi(out.maps[4]);
  return out;
}

}  // namespace defect
