#include "defect/oracle.hpp"

#include <functional>
#include <set>

namespace defect::oracle {

namespace {

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) throw TooLarge("value exceeds machine integers");
  return x.get_si();
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t product(const std::vector<std::int64_t>& v) {
  std::int64_t p = 1;
  for (auto x : v) {
    if (p > kEnumerationLimit / x) throw TooLarge("group exceeds the enumeration limit");
    p *= x;
  }
  return p;
}

// Matrix of f in Smith coordinates, entries reduced modulo the target orders.
std::vector<std::vector<std::int64_t>> normal_action(const Morphism& f, const std::vector<std::int64_t>& dst_orders) {
  IntMatrix m = f.dst().to_normal_matrix() * f.matrix() * f.src().from_normal_matrix();
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Int r = m(i, j) % dst_orders[i];
      out[i][j] = mod(to_i64(r), dst_orders[i]);
    }
  return out;
}

std::vector<std::int64_t> apply(const std::vector<std::vector<std::int64_t>>& a, const std::vector<std::int64_t>& x,
                                const std::vector<std::int64_t>& orders) {
  std::vector<std::int64_t> y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = mod(acc + a[i][j] * x[j], orders[i]);
    y[i] = acc;
  }
  return y;
}

bool all_zero(const std::vector<std::int64_t>& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

std::vector<std::int64_t> cyclic_orders(const FpGroup& g) {
  if (!g.is_finite()) throw InputError("oracle: group is infinite");
  std::vector<std::int64_t> out;
  for (const auto& f : g.invariants().factors) out.push_back(to_i64(f));
  return out;
}

std::vector<std::vector<std::int64_t>> elements(const std::vector<std::int64_t>& orders) {
  product(orders);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(orders.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == orders[i] - 1) x[i++] = 0;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

std::vector<ExplicitHom> enumerate_homs(const FpGroup& a, const FpGroup& b) {
  auto ao = cyclic_orders(a);
  auto bo = cyclic_orders(b);
  std::int64_t na = product(ao), nb = product(bo);
  if (na > kEnumerationLimit / nb) throw TooLarge("enumerate_homs: |A| * |B| exceeds the enumeration limit");
  auto belems = elements(bo);
  // A generator of order o may go to any x with o x = 0.
  std::vector<std::vector<std::vector<std::int64_t>>> choices;
  for (auto o : ao) {
    std::vector<std::vector<std::int64_t>> ok;
    for (const auto& x : belems) {
      bool killed = true;
      for (std::size_t i = 0; i < x.size() && killed; ++i) killed = mod(o * x[i], bo[i]) == 0;
      if (killed) ok.push_back(x);
    }
    choices.push_back(std::move(ok));
  }
  std::vector<ExplicitHom> out;
  ExplicitHom cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& x : choices[i]) {
      cur.images.push_back(x);
      rec(i + 1);
      cur.images.pop_back();
    }
  };
  rec(0);
  return out;
}

std::int64_t element_count(const FpGroup& g) { return static_cast<std::int64_t>(elements(cyclic_orders(g)).size()); }

bool exact_by_counting(const Morphism& f, const Morphism& g) {
  if (!f.dst().same_presentation(g.src())) throw InputError("exact_by_counting: morphisms are not composable");
  auto ao = cyclic_orders(f.src());
  auto bo = cyclic_orders(f.dst());
  auto co = cyclic_orders(g.dst());
  auto fa = normal_action(f, bo);
  auto ga = normal_action(g, co);
  std::set<std::vector<std::int64_t>> im;
  for (const auto& x : elements(ao)) {
    auto y = apply(fa, x, bo);
    if (!all_zero(apply(ga, y, co))) return false;
    im.insert(y);
  }
  std::size_t ker = 0;
  for (const auto& y : elements(bo))
    if (all_zero(apply(ga, y, co))) ++ker;
  return ker == im.size();
}

std::vector<FpGroup> abelian_groups_up_to(std::int64_t max_order) {
  std::vector<FpGroup> out;
  std::vector<std::int64_t> chain;
  std::function<void(std::int64_t)> rec = [&](std::int64_t order) {
    IntVector d(chain.begin(), chain.end());
    out.push_back(FpGroup::from_invariants(Invariants{0, d}));
    const std::int64_t last = chain.empty() ? 1 : chain.back();
    for (std::int64_t next = (chain.empty() ? 2 : last); order * next <= max_order; next += last) {
      chain.push_back(next);
      rec(order * next);
      chain.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace defect::oracle
