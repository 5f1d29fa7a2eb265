#include "defect/tower.hpp"

#include <sstream>

namespace defect {

namespace {

FpGroup integers() { return FpGroup::free(1); }

Morphism scalar_map(const FpGroup& z, const Int& c) { return Morphism(z, z, IntMatrix(1, 1, {c})); }

std::string inline_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j > 0 ? " " : "") << m(i, j);
  }
  os << ']';
  return os.str();
}

Verdict certified(Outcome o, std::size_t window, std::string tag, std::vector<std::string> witness,
                  std::function<bool()> recheck) {
  return Verdict{o, std::move(tag), std::move(witness), window, std::move(recheck)};
}

}  // namespace

// ---------------------------------------------------------------------------

Tower Tower::mult(const Int& c) {
  Tower t;
  t.kind_ = TowerKind::Mult;
  t.c_ = c;
  t.mono_ = c != 0;
  return t;
}

Tower Tower::factorial() {
  Tower t;
  t.kind_ = TowerKind::Factorial;
  return t;
}

Tower Tower::constant(const FpGroup& g) {
  Tower t;
  t.kind_ = TowerKind::Constant;
  t.stages_ = {g};
  return t;
}

Tower Tower::finite(std::vector<FpGroup> stages, std::vector<Morphism> transitions) {
  if (stages.empty()) throw InputError("tower: at least one stage is required");
  if (transitions.size() + 1 != stages.size())
    throw InputError("tower: need exactly one transition between consecutive stages");
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (!transitions[i].src().same_presentation(stages[i]) || !transitions[i].dst().same_presentation(stages[i + 1]))
      throw InputError("tower: transition " + std::to_string(i) + " does not connect stages " + std::to_string(i) +
                       " and " + std::to_string(i + 1));
  Tower t;
  t.kind_ = TowerKind::FiniteList;
  t.stages_ = std::move(stages);
  t.transitions_ = std::move(transitions);
  for (const auto& m : t.transitions_) t.mono_ = t.mono_ && is_mono(m);
  return t;
}

FpGroup Tower::stage(std::size_t i) const {
  switch (kind_) {
    case TowerKind::Mult:
    case TowerKind::Factorial:
      return integers();
    case TowerKind::Constant:
      return stages_.front();
    case TowerKind::FiniteList:
      return stages_[std::min(i, stages_.size() - 1)];
  }
  throw std::logic_error("unknown tower kind");
}

Int Tower::scalar_factor(std::size_t i) const {
  if (kind_ == TowerKind::Mult) return c_;
  if (kind_ == TowerKind::Factorial) return Int(static_cast<unsigned long>(i + 1));
  throw InputError("scalar_factor: tower is not scalar");
}

Morphism Tower::transition(std::size_t i) const {
  if (scalar()) return scalar_map(integers(), scalar_factor(i));
  if (kind_ == TowerKind::FiniteList && i + 1 < stages_.size()) return transitions_[i];
  return Morphism::identity(stage(i));
}

Morphism Tower::composite(std::size_t i, std::size_t j) const {
  if (i > j) throw InputError("composite: indices out of order");
  if (scalar()) {
    Int c = 1;
    for (std::size_t k = i; k < j; ++k) c *= scalar_factor(k);
    return scalar_map(integers(), c);
  }
  Morphism m = Morphism::identity(stage(i));
  for (std::size_t k = i; k < j; ++k) m = compose(transition(k), m);
  return m;
}

std::optional<std::size_t> Tower::stable_from() const {
  switch (kind_) {
    case TowerKind::Constant:
      return 0;
    case TowerKind::FiniteList:
      return stages_.size() - 1;
    case TowerKind::Mult:
      if (c_ == 1) return 0;
      return std::nullopt;
    case TowerKind::Factorial:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Tower::matches(const std::vector<FpGroup>& stages, const std::vector<Morphism>& transitions) const {
  if (transitions.size() + 1 != stages.size()) return false;
  for (std::size_t i = 0; i < stages.size(); ++i)
    if (!stage(i).same_presentation(stages[i])) return false;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transition(i).matrix() != transitions[i].matrix()) return false;
  return true;
}

std::string Tower::describe() const {
  switch (kind_) {
    case TowerKind::Mult:
      return "mult " + c_.get_str();
    case TowerKind::Factorial:
      return "factorial";
    case TowerKind::Constant:
      return "const " + stages_.front().invariants().to_string();
    case TowerKind::FiniteList:
      return "list of " + std::to_string(stages_.size()) + " stages";
  }
  return "";
}

Tower direct_sum_as_tower(const std::vector<FpGroup>& groups, std::size_t replication) {
  std::vector<FpGroup> all;
  for (std::size_t r = 0; r < replication; ++r) all.insert(all.end(), groups.begin(), groups.end());
  if (all.empty()) return Tower::finite({FpGroup()}, {});
  std::vector<FpGroup> stages;
  std::vector<Morphism> incl;
  for (std::size_t k = 0; k < all.size(); ++k) {
    std::vector<FpGroup> prefix(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k + 1));
    stages.push_back(direct_sum(prefix).group);
    if (k > 0) {
      const FpGroup& a = stages[k - 1];
      const FpGroup& b = stages[k];
      IntMatrix m(b.ngens(), a.ngens());
      for (std::size_t i = 0; i < a.ngens(); ++i) m(i, i) = 1;
      incl.emplace_back(a, b, m);
    }
  }
  return Tower::finite(std::move(stages), std::move(incl));
}

TruncatedColimit colim_truncated(const Tower& t, std::size_t n) {
  TruncatedColimit out{t.stage(n), {}};
  for (std::size_t i = 0; i <= n; ++i) out.injections.push_back(t.composite(i, n));
  return out;
}

bool commutes(const TowerMorphism& m, std::size_t window) {
  for (std::size_t k = 0; k < window; ++k) {
    std::size_t a = m.reindex(k), b = m.reindex(k + 1);
    if (a > b) return false;
    Morphism lhs = compose(m.dst.composite(a, b), m.level(k));
    Morphism rhs = compose(m.level(k + 1), m.src.transition(k));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::CertifiedYes:
      return "CertifiedYes";
    case Outcome::CertifiedNo:
      return "CertifiedNo";
    case Outcome::Undetermined:
      return "Undetermined";
  }
  return "";
}

Verdict undetermined(std::size_t window, std::string why) {
  Verdict v;
  v.window = window;
  if (!why.empty()) v.witness.push_back(std::move(why));
  return v;
}

// ---------------------------------------------------------------------------

TowerValue hom_from_fp(const FpGroup& a, const Tower& t, std::size_t window) {
  if (auto s = t.stable_from(); s && *s <= window) {
    const std::size_t from = *s;
    return {hom_group(a, t.stage(from)).carrier(),
            certified(Outcome::CertifiedYes, window, "stabilized",
                      {"transitions are identities from stage " + std::to_string(from)},
                      [a, t, from, window] {
                        for (std::size_t i = from; i < std::max(window, from + 1); ++i)
                          if (!is_iso(induced_post(t.transition(i), a))) return false;
                        return true;
                      })};
  }
  if (t.scalar()) {
    const std::size_t r = a.invariants().rank;
    if (r == 0)
      return {FpGroup(), certified(Outcome::CertifiedYes, window, "torsion-source",
                                   {"Hom(A, Z) = 0 at every stage since A is torsion"},
                                   [a] { return hom_group(a, FpGroup::free(1)).carrier().is_zero(); })};
    if (t.kind() == TowerKind::Mult && abs(t.multiplier()) == 1)
      return {FpGroup::free(r), certified(Outcome::CertifiedYes, window, "invertible-transitions",
                                          {"every transition is an automorphism"},
                                          [a, t] { return is_iso(induced_post(t.transition(0), a)); })};
    if (t.kind() == TowerKind::Mult && t.multiplier() == 0)
      return {FpGroup(), certified(Outcome::CertifiedYes, window, "zero-transitions",
                                   {"every transition is zero"},
                                   [a, t] { return induced_post(t.transition(0), a).is_zero(); })};
  }
  return {hom_group(a, t.stage(window)).carrier(),
          undetermined(window, "Hom system does not stabilize within the window")};
}

namespace {

// Smallest e with every invariant factor of the torsion of g dividing c^e, if
// one exists below a generous bound.
std::optional<unsigned> primary_exponent(const FpGroup& g, const Int& c) {
  for (unsigned e = 0; e < 256; ++e) {
    Int ce;
    mpz_pow_ui(ce.get_mpz_t(), c.get_mpz_t(), e);
    bool all = true;
    for (const auto& f : g.invariants().factors) all = all && ce % f == 0;
    if (all) return e;
  }
  return std::nullopt;
}

}  // namespace

TowerValue hom_to_fp(const Tower& t, const FpGroup& b, std::size_t window) {
  if (auto s = t.stable_from()) {
    if (*s > window)
      return {hom_group(t.stage(window), b).carrier(), undetermined(window, "window ends before the stable stage")};
    const std::size_t from = *s;
    return {hom_group(t.stage(from), b).carrier(),
            certified(Outcome::CertifiedYes, window, "stabilized",
                      {"transitions are identities from stage " + std::to_string(from)},
                      [b, t, from, window] {
                        for (std::size_t i = from; i < std::max(window, from + 1); ++i)
                          if (!is_iso(induced_pre(t.transition(i), b))) return false;
                        return true;
                      })};
  }
  if (t.kind() == TowerKind::Mult) {
    const Int c = abs(t.multiplier());
    if (c == 0)
      return {FpGroup(), certified(Outcome::CertifiedYes, window, "zero-transitions", {"every transition is zero"},
                                   [] { return true; })};
    if (c == 1)
      return {hom_group(FpGroup::free(1), b).carrier(),
              certified(Outcome::CertifiedYes, window, "invertible-transitions", {"every transition is an automorphism"},
                        [b, t] { return is_iso(induced_pre(t.transition(0), b)); })};
    // A compatible family is determined by an element b_0 that is divisible by
    // every power of c. In a finitely generated group those elements form the
    // torsion part of order prime to c.
    Embedded d = coprime_torsion_part(b, c);
    FpGroup rest = cokernel(d.incl).group;
    auto e = primary_exponent(FpGroup::from_invariants(Invariants{0, rest.invariants().factors}), c);
    std::vector<std::string> w{"limit elements are divisible by every power of " + c.get_str(),
                               "torsion prime to " + c.get_str() + ": " + d.group.invariants().to_string(),
                               "remaining torsion is killed by " + c.get_str() + "^" + std::to_string(e.value_or(0))};
    return {d.group, certified(Outcome::CertifiedYes, window, "divisibility", std::move(w), [b, c, d] {
              FpGroup dd = d.group;
              if (!is_iso(Morphism(dd, dd, c * IntMatrix::identity(dd.ngens())))) return false;
              FpGroup r = cokernel(d.incl).group;
              return primary_exponent(FpGroup::from_invariants(Invariants{0, r.invariants().factors}), c).has_value();
            })};
  }
  if (t.kind() == TowerKind::Factorial) {
    // Elements of the limit are divisible by every integer; a finitely
    // generated group has no such element besides 0.
    Int exponent = b.invariants().factors.empty() ? Int(1) : b.invariants().factors.back();
    std::vector<std::string> w{"limit elements are divisible by every integer",
                               "torsion exponent " + exponent.get_str() + " divides a product of " +
                                   exponent.get_str() + " consecutive transition factors"};
    return {FpGroup(), certified(Outcome::CertifiedYes, window, "divisibility", std::move(w), [t, exponent, window] {
              if (!exponent.fits_ulong_p()) return false;
              const unsigned long e = exponent.get_ui();
              for (std::size_t i = 0; i <= window; ++i) {
                Int prod = 1;
                for (unsigned long j = 0; j < e; ++j) prod *= t.scalar_factor(i + j);
                if (prod % exponent != 0) return false;
              }
              return true;
            })};
  }
  return {hom_group(t.stage(window), b).carrier(), undetermined(window)};
}

// ---------------------------------------------------------------------------

std::vector<FpGroup> phi_truncated_kernels(const Morphism& beta, const Tower& t, std::size_t n) {
  DefectValue top(beta, t.stage(n));
  std::vector<FpGroup> out;
  for (std::size_t i = 0; i <= n; ++i) {
    DefectValue d(beta, t.stage(i));
    out.push_back(kernel(dev_map(d, top, t.composite(i, n))).group);
  }
  return out;
}

namespace {

struct EpiWitness {
  Morphism f;
  std::size_t k;
  Morphism h;  // L -> T_k
  Morphism g;  // P -> T_N
};

// f = g beta + v_{kN} h with the smallest k.
EpiWitness find_epi_witness(const Morphism& beta, const Tower& t, std::size_t n, const Morphism& f) {
  const FpGroup& l = beta.src();
  const FpGroup top = t.stage(n);
  for (std::size_t k = 0; k <= n; ++k) {
    MorphismSystem sys;
    std::size_t h = sys.add_unknown(l, t.stage(k));
    std::size_t g = sys.add_unknown(beta.dst(), top);
    sys.add_congruence(top,
                       {{t.composite(k, n).matrix(), h, IntMatrix::identity(l.ngens())},
                        {IntMatrix::identity(top.ngens()), g, beta.matrix()}},
                       f.matrix());
    auto r = sys.solve();
    if (auto* sol = std::get_if<std::vector<Morphism>>(&r)) return {f, k, (*sol)[0], (*sol)[1]};
  }
  throw std::logic_error("epi witness search failed at the top stage");
}

bool check_epi_witness(const Morphism& beta, const Tower& t, std::size_t n, const EpiWitness& w) {
  return w.f == compose(w.g, beta) + compose(t.composite(w.k, n), w.h);
}

}  // namespace

PhiVerdict phi_verdict(const Morphism& beta, const Tower& t, std::size_t window) {
  const std::size_t n = window;
  PhiVerdict out;

  // Epi: the source of beta is finitely presented, so every f: L -> colim
  // factors through a stage. The witnesses exhibit f = g beta + v_k h for the
  // generators of Hom(L, T_N).
  HomGroup hl(beta.src(), t.stage(n));
  std::vector<EpiWitness> ws;
  std::vector<std::string> lines{"source is finitely presented"};
  for (std::size_t j = 0; j < hl.carrier().ngens(); ++j) {
    EpiWitness w = find_epi_witness(beta, t, n, hl.generator(j));
    lines.push_back("generator " + std::to_string(j) + ": k=" + std::to_string(w.k) +
                    " h=" + inline_matrix(w.h.matrix()) + " g=" + inline_matrix(w.g.matrix()));
    ws.push_back(std::move(w));
  }
  out.epi = certified(Outcome::CertifiedYes, window, "finitely-presented-source", std::move(lines), [beta, t, n, ws] {
    for (const auto& w : ws)
      if (!check_epi_witness(beta, t, n, w)) return false;
    return true;
  });

  if (auto s = t.stable_from(); s && *s <= window) {
    const std::size_t from = *s;
    out.mono = certified(Outcome::CertifiedYes, window, "eventually-constant",
                         {"colimit is stage " + std::to_string(from)}, [t, from, window] {
                           for (std::size_t i = from; i < std::max(window, from + 1); ++i)
                             if (!(t.transition(i) == Morphism::identity(t.stage(i)))) return false;
                           return true;
                         });
  } else if (t.mono() && is_epi(beta)) {
    auto kernels = phi_truncated_kernels(beta, t, n);
    bool zero = true;
    for (const auto& k : kernels) zero = zero && k.is_zero();
    if (zero) {
      out.mono = certified(Outcome::CertifiedYes, window, "epi-beta-mono-tower",
                           {"beta is onto and every transition is mono",
                            "Dev(T_i) -> Dev(T_N) is injective for all i <= " + std::to_string(n)},
                           [beta, t, n] {
                             if (!is_epi(beta)) return false;
                             for (std::size_t i = 0; i < n; ++i)
                               if (!is_mono(t.transition(i))) return false;
                             for (const auto& k : phi_truncated_kernels(beta, t, n))
                               if (!k.is_zero()) return false;
                             return true;
                           });
    } else {
      out.mono = undetermined(window, "nonzero truncated kernel");
    }
  } else {
    out.mono = undetermined(window, "no structural certificate for injectivity");
  }
  out.iso = combine_iso(out.epi, out.mono);
  return out;
}

Verdict combine_iso(const Verdict& epi, const Verdict& mono) {
  const std::size_t window = std::max(epi.window, mono.window);
  if (epi.outcome == Outcome::CertifiedNo) return epi;
  if (mono.outcome == Outcome::CertifiedNo) return mono;
  if (epi.outcome == Outcome::CertifiedYes && mono.outcome == Outcome::CertifiedYes) {
    std::vector<std::string> w;
    for (const auto& s : epi.witness) w.push_back("epi: " + s);
    for (const auto& s : mono.witness) w.push_back("mono: " + s);
    return certified(Outcome::CertifiedYes, window, epi.certificate + "+" + mono.certificate, std::move(w),
                     [epi, mono] { return epi.verify() && mono.verify(); });
  }
  return undetermined(window, "injectivity or surjectivity not certified");
}

}  // namespace defect
