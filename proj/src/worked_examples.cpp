#include "defect/worked_examples.hpp"

#include <stdexcept>

namespace defect {

namespace {

FpGroup integers() { return FpGroup::free(1); }

Int factorial(std::size_t n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Int power(const Int& b, std::size_t e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Exponent of p in m!.
std::size_t valuation_of_factorial(std::size_t m, const Int& p) {
  std::size_t v = 0;
  Int q = p;
  while (q <= m) {
    v += Int(static_cast<unsigned long>(m) / q).get_ui();
    q *= p;
  }
  return v;
}

// Smallest m >= from with n! p^k | m!.
std::size_t factorial_cover(std::size_t n, const Int& p, std::size_t k, std::size_t from) {
  const Int need = factorial(n) * power(p, k);
  for (std::size_t m = from;; ++m)
    if (factorial(m) % need == 0) return m;
}

Morphism times(const FpGroup& a, const FpGroup& b, const Int& c) { return Morphism(a, b, IntMatrix(1, 1, {c})); }

void require_prime(const Int& p, const char* who) {
  if (!is_prime(p)) throw InputError(std::string(who) + ": p must be prime");
}

Verdict make(Outcome o, std::size_t window, std::string tag, std::vector<std::string> w, std::function<bool()> re) {
  return Verdict{o, std::move(tag), std::move(w), window, std::move(re)};
}

// The extension of f_n: 1 |-> 1/n! along Z -> Z[1/p], as a map of towers
// from the doubling-style tower into the factorial tower.
TowerMorphism extension_of_generator(const Int& p, std::size_t n) {
  auto reindex = [p, n](std::size_t k) { return factorial_cover(n, p, k, n); };
  auto level = [p, n, reindex](std::size_t k) {
    return times(integers(), integers(), factorial(reindex(k)) / (factorial(n) * power(p, k)));
  };
  return TowerMorphism{Tower::mult(p), Tower::factorial(), reindex, level};
}

bool extension_checks(const Int& p, std::size_t n, std::size_t window) {
  TowerMorphism g = extension_of_generator(p, n);
  const Tower q = Tower::factorial();
  // Level 0 of Z[1/p] is the source of beta, so g beta is the level-0 map.
  Morphism f_n = Morphism::identity(integers());
  if (!(g.level(0) == compose(q.composite(n, g.reindex(0)), f_n))) return false;
  return commutes(g, window);
}

}  // namespace

FgNonReport example_fg_non(const Int& p, std::size_t window) {
  require_prime(p, "example_fg_non");
  FgNonReport r;
  r.p = p;
  r.window = window;
  const Tower q = Tower::factorial();

  // Since Hom(Z[1/p], F_n) = 0, Dev_beta(F_n) is Hom(Z, F_n); the map Z -> 0
  // models beta for every stage.
  r.hom_zp_to_stage = hom_to_fp(Tower::mult(p), integers(), window);
  if (r.hom_zp_to_stage.verdict.outcome != Outcome::CertifiedYes || !r.hom_zp_to_stage.value.is_zero())
    throw std::logic_error("example_fg_non: Hom(Z[1/p], Z) not certified zero");
  const Morphism beta0 = Morphism::zero(integers(), FpGroup());

  std::vector<DefectValue> devs;
  for (std::size_t n = 0; n <= window; ++n) {
    devs.emplace_back(beta0, q.stage(n));
    r.dev_levels.push_back(devs.back().carrier());
  }
  for (std::size_t n = 0; n < window; ++n)
    r.dev_transitions_mono.push_back(is_mono(dev_map(devs[n], devs[n + 1], q.transition(n))));

  std::vector<std::string> ext_lines{"Hom(Z, F_n) is generated by f_n: 1 -> 1/n!",
                                     "f_n extends to Z[1/p] -> Q via 1/p^k -> 1/(n! p^k)"};
  for (std::size_t n = 0; n <= window; ++n) {
    TowerMorphism g = extension_of_generator(p, n);
    ext_lines.push_back("n=" + std::to_string(n) + ": level 0 lands in stage " + std::to_string(g.reindex(0)) +
                        ", level " + std::to_string(window) + " in stage " + std::to_string(g.reindex(window)));
  }
  r.dev_colim_zero = make(Outcome::CertifiedYes, window, "divisibility", std::move(ext_lines), [p, window] {
    for (std::size_t n = 0; n <= window; ++n)
      if (!extension_checks(p, n, window)) return false;
    return true;
  });

  auto colim_side = [p, window] {
    const Morphism b0 = Morphism::zero(integers(), FpGroup());
    const Tower t = Tower::factorial();
    DefectValue top(b0, t.stage(window));
    for (std::size_t n = 0; n <= window; ++n) {
      DefectValue d(b0, t.stage(n));
      if (d.carrier().is_zero()) return false;
      if (!is_mono(dev_map(d, top, t.composite(n, window)))) return false;
    }
    return true;
  };
  std::vector<std::string> side_lines;
  for (std::size_t n = 0; n <= window; ++n)
    side_lines.push_back("Dev(F_" + std::to_string(n) + ") = " + r.dev_levels[n].invariants().to_string() +
                         (n < window ? (r.dev_transitions_mono[n] ? ", injective onward" : ", not injective onward")
                                     : ""));
  r.colim_side_nonzero = make(Outcome::CertifiedYes, window, "injective-transitions", side_lines, colim_side);

  r.phi_mono = make(Outcome::CertifiedNo, window, "divisibility",
                    {"colim Dev(F_n) is nonzero and Dev(Q) = 0", "the class of f_0 lies in the kernel of Phi"},
                    [v1 = r.dev_colim_zero, v2 = r.colim_side_nonzero] { return v1.verify() && v2.verify(); });
  Verdict epi = make(Outcome::CertifiedYes, window, "zero-target", {"Dev(Q) = 0"},
                     [v = r.dev_colim_zero] { return v.verify(); });
  r.phi_iso = combine_iso(epi, r.phi_mono);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct QuotientTowers {
  Int p;
  std::size_t window;
  std::size_t top_m;  // last stored stage of Q/Z
  std::size_t top_a;  // last stored stage of Z[1/p]/Z
  Tower zp;           // stage k = Z/p^k, transitions x p
  Tower qz;           // stage m = Z/m!, transitions x(m+1)

  std::size_t cover(std::size_t k) const { return factorial_cover(0, p, k, 0); }

  Morphism beta_bar(std::size_t k) const {
    const std::size_t m = cover(k);
    return times(zp.stage(k), qz.stage(m), factorial(m) / power(p, k));
  }

  // p-primary component of x/m!, in the basis 1/p^a.
  Morphism rho(std::size_t m) const {
    const std::size_t a = valuation_of_factorial(m, p);
    const Int pa = power(p, a);
    const Int u = factorial(m) / pa;
    Int t;
    if (pa == 1)
      t = 0;
    else if (!mpz_invert(t.get_mpz_t(), u.get_mpz_t(), pa.get_mpz_t()))
      throw std::logic_error("rho: unit part not invertible");
    return times(qz.stage(m), zp.stage(a), t);
  }
};

QuotientTowers quotient_towers(const Int& p, std::size_t window) {
  QuotientTowers q{p, window, 0, 0, Tower::mult(1), Tower::mult(1)};
  q.top_m = factorial_cover(0, p, window, 0);
  q.top_a = valuation_of_factorial(q.top_m, p);
  std::vector<FpGroup> zs, qs;
  std::vector<Morphism> zt, qt;
  for (std::size_t k = 0; k <= q.top_a; ++k) {
    zs.push_back(FpGroup::cyclic(power(p, k)));
    if (k > 0) zt.push_back(times(zs[k - 1], zs[k], p));
  }
  for (std::size_t m = 0; m <= q.top_m; ++m) {
    qs.push_back(FpGroup::cyclic(factorial(m)));
    if (m > 0) qt.push_back(times(qs[m - 1], qs[m], Int(static_cast<unsigned long>(m))));
  }
  q.zp = Tower::finite(zs, zt);
  q.qz = Tower::finite(qs, qt);
  return q;
}

// Smallest prime not dividing p.
Int coprime_prime(const Int& p) {
  for (Int q = 2;; ++q)
    if (is_prime(q) && p % q != 0) return q;
}

}  // namespace

LiftReport example_nonliftable(const Int& p, std::size_t window) {
  require_prime(p, "example_nonliftable");
  LiftReport r;
  r.p = p;
  r.window = window;
  const QuotientTowers qt = quotient_towers(p, window);

  for (std::size_t k = 0; k <= window; ++k) {
    const std::size_t m = qt.cover(k);
    r.target_level.push_back(m);
    const std::size_t a = valuation_of_factorial(m, p);
    r.split_at_level.push_back(compose(qt.rho(m), qt.beta_bar(k)) == qt.zp.composite(k, a));
  }
  TowerMorphism bb{qt.zp, qt.qz, [qt](std::size_t k) { return qt.cover(k); },
                   [qt](std::size_t k) { return qt.beta_bar(k); }};
  TowerMorphism rh{qt.qz, qt.zp, [p](std::size_t m) { return valuation_of_factorial(m, p); },
                   [qt](std::size_t m) { return qt.rho(m); }};
  r.beta_bar_commutes = commutes(bb, window);
  r.rho_commutes = commutes(rh, qt.top_m);

  bool all = r.beta_bar_commutes && r.rho_commutes;
  for (bool b : r.split_at_level) all = all && b;
  std::vector<std::string> lines{"left inverse: x/m! -> p-primary part of x/m!",
                                 "Z[1/p]/Z level k enters Q/Z at the first m with p^k | m!",
                                 "levels checked: 0.." + std::to_string(window)};
  r.split_mono = make(all ? Outcome::CertifiedYes : Outcome::CertifiedNo, window, "closed-form-left-inverse",
                      std::move(lines), [p, window] {
                        const QuotientTowers t = quotient_towers(p, window);
                        for (std::size_t k = 0; k <= window; ++k) {
                          const std::size_t m = t.cover(k);
                          if (!(compose(t.rho(m), t.beta_bar(k)) ==
                                t.zp.composite(k, valuation_of_factorial(m, p))))
                            return false;
                        }
                        TowerMorphism b{t.zp, t.qz, [t](std::size_t k) { return t.cover(k); },
                                        [t](std::size_t k) { return t.beta_bar(k); }};
                        TowerMorphism h{t.qz, t.zp, [p](std::size_t m) { return valuation_of_factorial(m, p); },
                                        [t](std::size_t m) { return t.rho(m); }};
                        return commutes(b, window) && commutes(h, t.top_m);
                      });

  // A lift g: Q -> Z[1/p] has q-divisible image, and Z[1/p] has no nonzero
  // q-divisible element for q prime to p. So g = 0, its reduction is 0, and
  // 0 is not a left inverse because Z[1/p]/Z is nonzero.
  const Int q = coprime_prime(p);
  r.lift = make(Outcome::CertifiedNo, window, "hom-vanishing",
                {"Hom(Q, Z[1/p]) = 0", "Q is " + q.get_str() + "-divisible: the factorial tower enters stage " +
                                           q.get_str() + " by x" + q.get_str(),
                 "stages of Z[1/p] are Z with no " + q.get_str() + "-divisible part and gcd(" + p.get_str() + ", " +
                     q.get_str() + ") = 1",
                 "Z[1/p]/Z is nonzero at level 1"},
                [p, q] {
                  if (!is_prime(q) || gcd(p, q) != 1) return false;
                  if (Tower::factorial().scalar_factor(q.get_ui() - 1) % q != 0) return false;
                  if (!p_divisible_part(Tower::mult(p).stage(0), q).group.is_zero()) return false;
                  return !FpGroup::cyclic(p).is_zero();
                });
  return r;
}

// ---------------------------------------------------------------------------

DevPRow dev_into_localization(const FpGroup& a, const Int& p, std::size_t window) {
  require_prime(p, "dev_into_localization");
  DevPRow row;
  row.a = a;
  // Restricting Hom(Z[1/p], A) to Z picks the stage-0 element of each
  // compatible family; those elements form the subgroup certified below.
  TowerValue hom = hom_to_fp(Tower::mult(p), a, window);
  row.hom_certificate = hom.verdict;
  Embedded d = coprime_torsion_part(a, p);
  if (!d.group.isomorphic_to(hom.value)) throw std::logic_error("dev_into_localization: limit mismatch");
  HomGroup hz(integers(), a);
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < d.group.ngens(); ++j) {
    IntVector e(d.group.ngens(), 0);
    e[j] = 1;
    cols.push_back(hz.encode(Morphism(integers(), a, IntMatrix::from_columns(a.ngens(), {d.incl.apply(e)}))));
  }
  Morphism restriction(FpGroup::free(cols.size()), hz.carrier(), IntMatrix::from_columns(hz.carrier().ngens(), cols));
  row.dev = smith_form(cokernel(restriction).group).normal;
  row.quotient = smith_form(cokernel(p_divisible_part(a, p).incl).group).normal;
  row.matches = row.dev.isomorphic_to(row.quotient);
  return row;
}

}  // namespace defect
