#include "defect/defect.hpp"

#include <stdexcept>

namespace defect {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

DefectValue::DefectValue(const Morphism& beta, const FpGroup& at)
    : beta_(beta),
      at_(at),
      hom_(beta.src(), at),
      induced_(induced_pre(beta, HomGroup(beta.dst(), at), hom_)),
      carrier_(hom_.carrier()),
      projection_(Morphism::identity(hom_.carrier())),
      section_(IntMatrix::identity(hom_.carrier().ngens())) {
  // With P = 0 nothing is divided out and Dev_beta(X) is Hom(L, X) itself.
  if (beta.dst().is_zero()) return;
  Quotient q = cokernel(induced_);
  SmithForm sf = smith_form(q.group);
  carrier_ = sf.normal;
  projection_ = compose(sf.to_normal, q.proj);
  section_ = sf.from_normal.matrix();
}

IntVector DefectValue::encode(const Morphism& alpha) const { return projection_.apply(hom_.encode(alpha)); }

Morphism DefectValue::representative(const IntVector& x) const {
  if (x.size() != carrier_.ngens()) throw InputError("DefectValue::representative: wrong coordinate count");
  return hom_.decode(hom_.carrier().canonical(section_ * x));
}

DefectValue dev(const Morphism& beta, const FpGroup& x) { return DefectValue(beta, x); }

Morphism dev_map(const DefectValue& from, const DefectValue& to, const Morphism& f) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < from.carrier().ngens(); ++i)
    cols.push_back(to.encode(compose(f, from.representative(unit(from.carrier().ngens(), i)))));
  return {from.carrier(), to.carrier(), IntMatrix::from_columns(to.carrier().ngens(), cols)};
}

Morphism dev_map(const Morphism& beta, const Morphism& f) { return dev_map(dev(beta, f.src()), dev(beta, f.dst()), f); }

Morphism defect_precompose(const DefectValue& from, const DefectValue& to, const Morphism& h) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < from.carrier().ngens(); ++i)
    cols.push_back(to.encode(compose(from.representative(unit(from.carrier().ngens(), i)), h)));
  return {from.carrier(), to.carrier(), IntMatrix::from_columns(to.carrier().ngens(), cols)};
}

// ---------------------------------------------------------------------------

namespace {

// T with beta o T equal to the syzygy inclusion of e, modulo relations of P.
IntMatrix syzygy_through_beta(const Morphism& beta, const ExtGroup& e) {
  const IntMatrix& kb = e.syzygy_incl().matrix();
  auto t = solve(hcat(beta.matrix(), beta.dst().rels()), kb);
  if (!t) throw std::logic_error("dev_vs_ext_check: syzygies do not come from L");
  return t->row_range(0, beta.src().ngens());
}

Morphism dev_to_ext(const DefectValue& d, const ExtGroup& e, const IntMatrix& t) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < d.carrier().ngens(); ++i) {
    Morphism alpha = d.representative(unit(d.carrier().ngens(), i));
    cols.push_back(e.encode(Morphism(e.syzygies(), e.dst(), alpha.matrix() * t)));
  }
  return {d.carrier(), e.carrier(), IntMatrix::from_columns(e.carrier().ngens(), cols)};
}

}  // namespace

DevExtCheck dev_vs_ext_check(const Morphism& beta, const FpGroup& x, const std::optional<Morphism>& f) {
  if (!beta.dst().is_free()) throw PreconditionFailed("dev_vs_ext_check: target of beta is not free");
  if (!is_mono(beta)) throw PreconditionFailed("dev_vs_ext_check: beta is not a monomorphism");
  FpGroup c = cokernel(beta).group;
  DefectValue d(beta, x);
  ExtGroup e(c, x);
  IntMatrix t = syzygy_through_beta(beta, e);
  Morphism w = dev_to_ext(d, e, t);
  DevExtCheck out{d.carrier().isomorphic_to(e.carrier()), is_iso(w), w, std::nullopt};
  if (f) {
    if (!f->src().same_presentation(x)) throw InputError("dev_vs_ext_check: test morphism does not start at X");
    DefectValue dy(beta, f->dst());
    ExtGroup ey(c, f->dst());
    Morphism wy = dev_to_ext(dy, ey, t);
    out.natural = compose(wy, dev_map(d, dy, *f)) == compose(ext_induced_post(*f, e, ey), w);
  }
  return out;
}

RestrictionSequence restriction_sequence(const Morphism& beta, const FpGroup& x) {
  Embedded k = kernel(beta);
  Quotient q = cokernel(k.incl);
  Morphism beta_bar(q.group, beta.dst(), beta.matrix());
  DefectValue bar(beta_bar, x), mid(beta, x), pi(q.proj, x);
  Morphism first = defect_precompose(bar, mid, q.proj);
  Morphism second = defect_precompose(mid, pi, Morphism::identity(beta.src()));
  RestrictionSequence out{q.proj, beta_bar, bar, mid, pi, first, second};
  out.mono = is_mono(first);
  out.exact_middle = is_exact(first, second);
  out.epi = is_epi(second);
  return out;
}

bool HalfExactSequence::exact() const {
  for (bool b : exact_at)
    if (!b) return false;
  return first_mono;
}

HalfExactSequence half_exact_sequence(const Morphism& beta, const ShortExact& ses) {
  if (!beta.dst().is_free()) throw PreconditionFailed("half_exact_sequence: target of beta is not free");
  if (!is_short_exact(ses)) throw PreconditionFailed("half_exact_sequence: input sequence is not short exact");
  const Morphism& i = ses.incl;
  const Morphism& p = ses.proj;
  Quotient cq = cokernel(beta);
  const FpGroup& m = cq.group;
  HomGroup hx(m, i.src()), hy(m, i.dst()), hz(m, p.dst());
  DefectValue dx(beta, i.src()), dy(beta, i.dst()), dz(beta, p.dst());

  // Connecting map: phi o q lifts through p because P is free; its restriction
  // along beta lands in the image of i.
  std::vector<IntVector> cols;
  for (std::size_t g = 0; g < hz.carrier().ngens(); ++g) {
    Morphism phi = hz.generator(g);
    auto h = lift_through(p, compose(phi, cq.proj));
    if (!h) throw std::logic_error("half_exact_sequence: no lift from a free group");
    auto c = factor_through(i, compose(*h, beta));
    if (!c) throw std::logic_error("half_exact_sequence: restriction does not factor through X");
    cols.push_back(dx.encode(*c));
  }
  Morphism delta(hz.carrier(), dx.carrier(), IntMatrix::from_columns(dx.carrier().ngens(), cols));

  HalfExactSequence out;
  out.nodes = {hx.carrier(), hy.carrier(), hz.carrier(), dx.carrier(), dy.carrier(), dz.carrier()};
  out.maps = {induced_post(i, hx, hy), induced_post(p, hy, hz), delta, dev_map(dx, dy, i), dev_map(dy, dz, p)};
  out.first_mono = is_mono(out.maps[0]);
  for (std::size_t n = 0; n < 4; ++n) out.exact_at[n] = is_exact(out.maps[n], out.maps[n + 1]);
  out.last_epi = is_epi(out.maps[4]);
  return out;
}

FpGroup transpose(const Morphism& beta) {
  if (!beta.src().is_free() || !beta.dst().is_free())
    throw PreconditionFailed("transpose: source and target must be free");
  return dev(beta, FpGroup::free(1)).carrier();
}

}  // namespace defect
