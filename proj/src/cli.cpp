#include "defect/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "defect/criteria.hpp"
#include "defect/input.hpp"
#include "defect/oracle.hpp"
#include "defect/properties.hpp"
#include "defect/worked_examples.hpp"

namespace defect::cli {

namespace {

struct Options {
  std::string file;
  std::size_t window = 8;
  std::uint64_t seed = 0;
  std::string expect;
  bool require_certified = false;
  bool verify_witness = false;
  long prime = 2;
};

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

class Report {
 public:
  explicit Report(const Options& o) : opts_(o) {}

  void add(const std::string& key, const std::string& value) { lines_.push_back(key + ": " + value); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

  void matrix(const std::string& key, const IntMatrix& m) {
    lines_.push_back(key + ":");
    for (const auto& row : matrix_lines(m)) lines_.push_back("  " + row);
  }

  void group(const std::string& prefix, const FpGroup& g) {
    add(prefix + "group", g.invariants().to_string());
    add(prefix + "invariant_factors", invariant_factors_string(g.invariants()));
  }

  void verdict(const std::string& prefix, const Verdict& v) {
    add(prefix + "verdict", to_string(v.outcome));
    if (v.certified()) add(prefix + "certificate", v.certificate);
    add(prefix + "window", v.window);
    for (const auto& w : v.witness) add(prefix + "witness", w);
    if (opts_.verify_witness && v.certified()) {
      const bool ok = v.verify();
      add(prefix + "witness_check", std::string(ok ? "pass" : "fail"));
      witness_failed_ = witness_failed_ || !ok;
    }
  }

  /// The verdict that --expect and --require-certified refer to.
  void primary(const Verdict& v) {
    primary_ = v;
    verdict("", v);
  }

  void computed() { add("verdict", std::string("computed")); }

  const std::optional<Verdict>& primary_verdict() const { return primary_; }
  bool witness_failed() const { return witness_failed_; }

  std::string str() const {
    std::string s;
    for (const auto& l : lines_) s += l + "\n";
    return s;
  }

 private:
  const Options& opts_;
  std::vector<std::string> lines_;
  std::optional<Verdict> primary_;
  bool witness_failed_ = false;
};

Verdict simple(bool ok, std::string yes_tag, std::vector<std::string> witness, std::function<bool()> recheck,
               std::size_t window = 0) {
  return Verdict{ok ? Outcome::CertifiedYes : Outcome::CertifiedNo, std::move(yes_tag), std::move(witness), window,
                 std::move(recheck)};
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  if (s == "-" || s == "none") return out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("index list must look like 0,2,3 or '-', got '" + s + "'");
    out.push_back(std::stoul(item));
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i > 0 ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_snf(Report& r, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  IntMatrix a = parse_matrix_rows(in, path);
  SnfResult s = snf(a);
  r.add("command", std::string("snf"));
  r.add("rows", a.rows());
  r.add("cols", a.cols());
  r.add("rank", s.rank);
  FpGroup coker(a);
  r.group("cokernel.", coker);
  r.matrix("D", s.d);
  r.matrix("U", s.u);
  r.matrix("V", s.v);
  r.primary(simple(s.u * a * s.v == s.d, "unimodular-transform", {"U A V = D"}, [a, s] {
    return s.u * a * s.v == s.d && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
  }));
}

void cmd_invariants(Report& r, const Workspace& ws, const std::string& name) {
  FpGroup g = ws.group(name);
  r.add("command", std::string("invariants"));
  r.add("name", name);
  r.add("generators", g.ngens());
  r.group("", g);
  auto o = g.order();
  r.add("order", o ? o->get_str() : std::string("infinite"));
  r.computed();
}

void cmd_hom(Report& r, const Workspace& ws, const std::string& a, const std::string& b) {
  HomGroup h(ws.group(a), ws.group(b));
  r.add("command", std::string("hom"));
  r.add("source", a);
  r.add("target", b);
  r.group("", h.carrier());
  for (std::size_t i = 0; i < h.carrier().ngens(); ++i)
    r.add("generator." + std::to_string(i), inline_matrix(h.generator(i).matrix()));
  r.computed();
}

void cmd_ext(Report& r, const Workspace& ws, const std::string& a, const std::string& b) {
  ExtGroup e(ws.group(a), ws.group(b));
  r.add("command", std::string("ext"));
  r.add("source", a);
  r.add("target", b);
  r.group("", e.carrier());
  r.computed();
}

void cmd_dev(Report& r, const Workspace& ws, const std::string& beta, const std::string& at) {
  const Morphism& b = ws.morphism(beta);
  DefectValue d(b, ws.group(at));
  r.add("command", std::string("dev"));
  r.add("beta", beta);
  r.add("at", at);
  r.group("hom.", d.hom().carrier());
  r.group("", d.carrier());
  r.computed();
}

void cmd_dev_vs_ext(Report& r, const Workspace& ws, const std::string& beta, const std::string& at) {
  const Morphism& b = ws.morphism(beta);
  FpGroup x = ws.group(at);
  DevExtCheck c = dev_vs_ext_check(b, x);
  r.add("command", std::string("dev-vs-ext"));
  r.add("beta", beta);
  r.add("at", at);
  r.group("dev.", c.witness.src());
  r.group("ext.", c.witness.dst());
  r.add("invariants_match", c.invariants_match);
  Morphism w = c.witness;
  r.primary(simple(c.holds(), "explicit-isomorphism", {"map " + inline_matrix(w.matrix())},
                   [w] { return is_iso(w); }));
}

void cmd_seq23(Report& r, const Workspace& ws, const std::string& beta, const std::string& at) {
  RestrictionSequence s = restriction_sequence(ws.morphism(beta), ws.group(at));
  r.add("command", std::string("seq23"));
  r.add("beta", beta);
  r.add("at", at);
  r.group("kernel_quotient.", s.bar.carrier());
  r.group("middle.", s.mid.carrier());
  r.group("restriction.", s.pi.carrier());
  r.add("mono", s.mono);
  r.add("exact_middle", s.exact_middle);
  r.add("epi", s.epi);
  Morphism f = s.first, g = s.second;
  r.primary(simple(s.exact(), "exactness", {"first " + inline_matrix(f.matrix()), "second " + inline_matrix(g.matrix())},
                   [f, g] { return is_mono(f) && is_exact(f, g) && is_epi(g); }));
}

void cmd_sixterm(Report& r, const Workspace& ws, const std::string& beta, const std::string& ses) {
  HalfExactSequence h = half_exact_sequence(ws.morphism(beta), ws.sequence(ses));
  r.add("command", std::string("sixterm"));
  r.add("beta", beta);
  r.add("sequence", ses);
  for (std::size_t i = 0; i < h.nodes.size(); ++i) r.group("node." + std::to_string(i) + ".", h.nodes[i]);
  r.add("first_mono", h.first_mono);
  for (std::size_t i = 0; i < 4; ++i) r.add("exact_at." + std::to_string(i + 1), h.exact_at[i]);
  r.add("last_epi", h.last_epi);
  auto maps = h.maps;
  r.primary(simple(h.exact(), "exactness", {"five maps between six terms"}, [maps] {
    if (!is_mono(maps[0])) return false;
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
      if (!is_exact(maps[i], maps[i + 1])) return false;
    return true;
  }));
}

void cmd_phi(Report& r, const Workspace& ws, const std::string& beta, const std::string& tower, std::size_t window) {
  const Morphism& b = ws.morphism(beta);
  const Tower& t = ws.tower(tower);
  PhiVerdict v = phi_verdict(b, t, window);
  r.add("command", std::string("phi"));
  r.add("beta", beta);
  r.add("tower", t.describe());
  r.add("note", std::string("over Z finitely generated and finitely presented coincide"));
  r.verdict("epi.", v.epi);
  r.verdict("mono.", v.mono);
  r.primary(v.iso);
}

void cmd_split_pair(Report& r, const Workspace& ws, const std::string& beta, const std::string& h) {
  SplitPair s = split_pair_check(ws.morphism(beta), ws.morphism(h));
  r.add("command", std::string("check split-pair"));
  r.add("beta", beta);
  r.add("h", h);
  if (s.g) r.add("factorization_holds", factor_check_fp(ws.morphism(beta), *s.g, ws.morphism(h).dst(),
                                                       ws.morphism(h), *s.h2));
  r.primary(s.verdict);
}

void cmd_thm41(Report& r, const Workspace& ws, const std::string& beta, const std::string& sub) {
  LiftedSplit s = lifted_split_check(ws.morphism(beta), ws.subgroup(sub).incl);
  r.add("command", std::string("check thm41"));
  r.add("beta", beta);
  r.add("subgroup", sub);
  r.group("quotient_source.", s.beta_bar.src());
  r.group("quotient_target.", s.beta_bar.dst());
  r.add("quotient_splits", s.quotient_splits);
  r.primary(s.verdict);
}

void cmd_split_small(Report& r, const Workspace& ws, const std::string& beta, const std::string& family,
                     const std::string& sigma, const std::string& f) {
  const Morphism& b = ws.morphism(beta);
  const auto& fam = ws.family(family);
  const Morphism& s = ws.morphism(sigma);
  r.add("command", std::string("check split-small"));
  r.add("beta", beta);
  r.add("family", family);
  std::vector<std::size_t> idx;
  if (f == "auto") {
    auto found = find_splitting_subset(b, fam, s, fam.size());
    r.add("search", std::string("smallest subset first"));
    if (!found) {
      // Never reached for finite families: the full index set always splits.
      r.primary(Verdict{Outcome::CertifiedNo, "exhaustive-search", {"no subset splits"}, 0, {}});
      return;
    }
    idx = *found;
  } else {
    idx = parse_indices(f);
  }
  SplittingSmall sm = splitting_small_check(b, fam, s, idx);
  r.add("subset", join_indices(idx));
  r.add("complement", join_indices(sm.complement));
  r.group("pushout.", sm.pushout.object);
  r.primary(sm.verdict);
}

void cmd_def_omega(Report& r, const Workspace& ws, const std::string& beta, const std::string& chain) {
  std::vector<Morphism> incl;
  for (const auto& e : ws.chain(chain)) incl.push_back(e.incl);
  ChainSplit c = def_omega_check(ws.morphism(beta), incl);
  r.add("command", std::string("check def-omega"));
  r.add("beta", beta);
  r.add("chain", chain);
  r.add("index", c.index ? std::to_string(*c.index) : std::string("none"));
  r.primary(c.verdict);
}

void cmd_almost_projective(Report& r, const Workspace& ws, const std::string& name) {
  AlmostProjective a = almost_projective_check(ws.group(name));
  r.add("command", std::string("check almost-projective"));
  r.add("name", name);
  r.group("projective.", a.projective);
  r.group("finitely_presented.", a.finite);
  r.matrix("split", a.split.matrix());
  r.matrix("inverse", a.inverse.matrix());
  r.primary(a.verdict);
}

void cmd_ex32(Report& r, const Options& o) {
  FgNonReport e = example_fg_non(o.prime, o.window);
  r.add("command", std::string("examples ex32"));
  r.add("p", std::to_string(o.prime));
  r.add("beta", std::string("Z -> Z[1/p]"));
  r.add("tower", std::string("factorial (colimit Q)"));
  r.group("hom_localization_to_stage.", e.hom_zp_to_stage.value);
  r.verdict("hom_localization_to_stage.", e.hom_zp_to_stage.verdict);
  for (std::size_t n = 0; n < e.dev_levels.size(); ++n)
    r.add("dev_level." + std::to_string(n), invariant_factors_string(e.dev_levels[n].invariants()));
  r.verdict("dev_colimit_zero.", e.dev_colim_zero);
  r.verdict("colimit_side_nonzero.", e.colim_side_nonzero);
  r.verdict("mono.", e.phi_mono);
  r.add("claim", std::string("Phi is an isomorphism"));
  r.primary(e.phi_iso);
}

void cmd_ex42(Report& r, const Options& o) {
  LiftReport e = example_nonliftable(o.prime, o.window);
  r.add("command", std::string("examples ex42"));
  r.add("p", std::to_string(o.prime));
  r.add("beta", std::string("Z[1/p] -> Q"));
  r.add("subgroup", std::string("Z"));
  for (std::size_t k = 0; k < e.target_level.size(); ++k)
    r.add("level." + std::to_string(k),
          "enters Q/Z at stage " + std::to_string(e.target_level[k]) + ", split " +
              (e.split_at_level[k] ? "yes" : "no"));
  r.add("beta_bar_commutes", e.beta_bar_commutes);
  r.add("left_inverse_commutes", e.rho_commutes);
  r.verdict("split_mono.", e.split_mono);
  r.add("claim", std::string("a left inverse lifts to Q -> Z[1/p]"));
  r.primary(e.lift);
}

void cmd_devp(Report& r, const Workspace& ws, const Options& o, std::vector<std::string> names) {
  if (names.empty()) names = {"Z", "Z^2", "Z^3"};
  r.add("command", std::string("examples devp"));
  r.add("p", std::to_string(o.prime));
  r.add("beta", std::string("Z -> Z[1/p]"));
  bool all = true;
  std::vector<std::string> lines;
  std::vector<Verdict> certs;
  for (const auto& n : names) {
    DevPRow row = dev_into_localization(ws.group(n), o.prime, o.window);
    r.add("row." + n + ".dev", invariant_factors_string(row.dev.invariants()));
    r.add("row." + n + ".quotient", invariant_factors_string(row.quotient.invariants()));
    r.add("row." + n + ".matches", row.matches);
    all = all && row.matches;
    lines.push_back(n + ": Hom(Z[1/p], A) certified by " + row.hom_certificate.certificate);
    certs.push_back(row.hom_certificate);
  }
  r.primary(simple(all, "divisibility", lines,
                   [certs] {
                     for (const auto& c : certs)
                       if (!c.verify()) return false;
                     return true;
                   },
                   o.window));
}

void cmd_oracle_hom(Report& r, const Workspace& ws, const std::string& a, const std::string& b) {
  FpGroup ga = ws.group(a), gb = ws.group(b);
  const auto count = static_cast<long>(oracle::enumerate_homs(ga, gb).size());
  auto order = hom_group(ga, gb).carrier().order();
  r.add("command", std::string("oracle hom"));
  r.add("source", a);
  r.add("target", b);
  r.add("enumerated", std::to_string(count));
  r.add("engine", order ? order->get_str() : std::string("infinite"));
  r.primary(simple(order && *order == count, "enumeration", {"all generator images checked against relations"},
                   [ga, gb, count] { return static_cast<long>(oracle::enumerate_homs(ga, gb).size()) == count; }));
}

void cmd_selftest(Report& r, const Options& o) {
  using namespace properties;
  const std::uint64_t s = o.seed;
  std::vector<SuiteResult> suites{
      normal_forms(s + 1, 1000),   hom_oracle(24),           ext_formula(2, 30),
      ses_counting(16),            dev_vs_ext(s + 2, 200),   restriction(s + 3, 200),
      six_term(s + 4, 100),        mono_unions(s + 5, 100, 6), splitting_small(s + 6, 100),
      fp_source_epi(s + 7, 100, 1),
  };
  r.add("command", std::string("selftest"));
  r.add("seed", std::to_string(s));
  bool ok = true;
  std::vector<std::string> lines;
  for (const auto& suite : suites) {
    r.add("suite." + suite.name, "cases=" + std::to_string(suite.cases) + " failures=" + std::to_string(suite.failures));
    if (!suite.passed()) r.add("suite." + suite.name + ".first_failure", suite.first_failure);
    ok = ok && suite.passed();
    lines.push_back(suite.name + " " + std::to_string(suite.cases) + " cases");
  }
  FgNonReport ex32 = example_fg_non(2, 4);
  LiftReport ex42 = example_nonliftable(2, 4);
  const bool examples = ex32.phi_iso.outcome == Outcome::CertifiedNo && ex32.phi_iso.verify() &&
                        ex42.lift.outcome == Outcome::CertifiedNo && ex42.lift.verify() &&
                        ex42.split_mono.outcome == Outcome::CertifiedYes && ex42.split_mono.verify();
  r.add("suite.examples", std::string(examples ? "pass" : "fail"));
  ok = ok && examples;
  r.primary(simple(ok, "suites-passed", lines, {}));
}

// ---------------------------------------------------------------------------

int exit_status(const Report& r, const Options& o, std::string& note) {
  if (r.witness_failed()) {
    note = "witness replay failed";
    return kExpectationFailed;
  }
  const auto& v = r.primary_verdict();
  if (!v) {
    if (!o.expect.empty()) throw InputError("--expect needs a command that reports a verdict");
    return kComputed;
  }
  if (v->outcome == Outcome::Undetermined) return o.require_certified ? kUndetermined : kComputed;
  if (!o.expect.empty()) {
    const bool want_yes = o.expect == "yes";
    if (want_yes != (v->outcome == Outcome::CertifiedYes)) {
      note = "expected " + o.expect + ", got " + to_string(v->outcome);
      return kExpectationFailed;
    }
  }
  return kComputed;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Defect functors of abelian group homomorphisms", "defect"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("-f,--file", o.file, "input file with named groups, morphisms and towers");
  app.add_option("--window", o.window, "truncation window for towers")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--expect", o.expect, "expected verdict")->check(CLI::IsMember({"yes", "no"}));
  app.add_flag("--require-certified", o.require_certified, "exit 3 when the verdict is Undetermined");
  app.add_flag("--verify-witness", o.verify_witness, "replay every certificate after computing it");
  app.add_option("--prime", o.prime, "prime for the worked examples")->capture_default_str();

  std::vector<std::string> pos;
  std::function<void(Report&, const Workspace&)> action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::vector<std::string> params, std::size_t optional = 0) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    std::string usage;
    for (const auto& p : params) usage += " " + p;
    auto* opt = s->add_option("args", pos, usage.empty() ? "no arguments" : usage);
    if (params.empty() && optional == 0) {
      opt->expected(0);
    } else if (optional > 0) {
      opt->expected(static_cast<int>(params.size() - optional), static_cast<int>(params.size() + 64));
    } else {
      opt->expected(static_cast<int>(params.size()))->required();
    }
    return s;
  };
  auto bind = [&](CLI::App* s, std::function<void(Report&, const Workspace&)> f) {
    s->callback([&action, f] { action = f; });
  };

  bind(sub(&app, "snf", "Smith normal form of an integer matrix file", {"FILE"}),
       [&](Report& r, const Workspace&) { cmd_snf(r, pos[0]); });
  bind(sub(&app, "invariants", "invariant factors of a group", {"GROUP"}),
       [&](Report& r, const Workspace& ws) { cmd_invariants(r, ws, pos[0]); });
  bind(sub(&app, "hom", "Hom(A, B)", {"A", "B"}), [&](Report& r, const Workspace& ws) { cmd_hom(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "ext", "Ext(A, B)", {"A", "B"}), [&](Report& r, const Workspace& ws) { cmd_ext(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "dev", "Dev_beta(X)", {"BETA", "AT"}),
       [&](Report& r, const Workspace& ws) { cmd_dev(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "dev-vs-ext", "Dev_beta(X) against Ext(coker beta, X)", {"BETA", "AT"}),
       [&](Report& r, const Workspace& ws) { cmd_dev_vs_ext(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "seq23", "exactness of the restriction sequence", {"BETA", "AT"}),
       [&](Report& r, const Workspace& ws) { cmd_seq23(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "sixterm", "six-term sequence for a short exact sequence", {"BETA", "SES"}),
       [&](Report& r, const Workspace& ws) { cmd_sixterm(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "phi", "comparison map on a tower", {"BETA", "TOWER"}),
       [&](Report& r, const Workspace& ws) { cmd_phi(r, ws, pos[0], pos[1], o.window); });

  CLI::App* check = app.add_subcommand("check", "splitting and factorization checkers");
  check->fallthrough();
  check->require_subcommand(1);
  bind(sub(check, "split-pair", "(beta, h)^t is split mono", {"BETA", "H"}),
       [&](Report& r, const Workspace& ws) { cmd_split_pair(r, ws, pos[0], pos[1]); });
  bind(sub(check, "thm41", "split mono on quotients with a lifted left inverse", {"BETA", "SUBGROUP"}),
       [&](Report& r, const Workspace& ws) { cmd_thm41(r, ws, pos[0], pos[1]); });
  bind(sub(check, "split-small", "pushout splitting for a finite family", {"BETA", "FAMILY", "SIGMA", "F"}),
       [&](Report& r, const Workspace& ws) { cmd_split_small(r, ws, pos[0], pos[1], pos[2], pos[3]); });
  bind(sub(check, "def-omega", "first chain index where the quotient map splits", {"BETA", "CHAIN"}),
       [&](Report& r, const Workspace& ws) { cmd_def_omega(r, ws, pos[0], pos[1]); });
  bind(sub(check, "almost-projective", "free plus finitely presented decomposition", {"GROUP"}),
       [&](Report& r, const Workspace& ws) { cmd_almost_projective(r, ws, pos[0]); });

  CLI::App* ex = app.add_subcommand("examples", "worked infinite examples");
  ex->fallthrough();
  ex->require_subcommand(1);
  bind(sub(ex, "ex32", "Z in Z[1/p] against the factorial chain", {}), [&](Report& r, const Workspace&) { cmd_ex32(r, o); });
  bind(sub(ex, "ex42", "Z[1/p] in Q with H = Z", {}), [&](Report& r, const Workspace&) { cmd_ex42(r, o); });
  bind(sub(ex, "devp", "Dev for Z -> Z[1/p] against A / D_p(A)", {"[GROUP...]"}, 1),
       [&](Report& r, const Workspace& ws) { cmd_devp(r, ws, o, pos); });

  CLI::App* orc = app.add_subcommand("oracle", "brute-force checks");
  orc->fallthrough();
  orc->require_subcommand(1);
  bind(sub(orc, "hom", "count Hom(A, B) by enumeration", {"A", "B"}),
       [&](Report& r, const Workspace& ws) { cmd_oracle_hom(r, ws, pos[0], pos[1]); });
  bind(sub(&app, "selftest", "oracle agreement and property suites", {}),
       [&](Report& r, const Workspace&) { cmd_selftest(r, o); });

  Result result;
  std::ostringstream out, err;
  std::vector<const char*> argv{"defect"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kComputed : kInputError;
    return result;
  }

  Report report(o);
  try {
    Workspace ws = o.file.empty() ? Workspace{} : load_workspace(o.file);
    action(report, ws);
    std::string note;
    result.exit_code = exit_status(report, o, note);
    if (!note.empty()) err << "defect: " << note << "\n";
  } catch (const InputError& e) {
    err << "defect: input error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const PreconditionFailed& e) {
    err << "defect: precondition failed: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const IncompatibleWithRelations& e) {
    err << "defect: input error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const NotMono& e) {
    err << "defect: input error: " << e.what() << "\n";
    result.exit_code = kInputError;
  } catch (const oracle::TooLarge& e) {
    err << "defect: too large: " << e.what() << "\n";
    result.exit_code = kInputError;
  }
  result.out = result.exit_code == kInputError ? std::string() : report.str();
  result.err = err.str();
  return result;
}

}  // namespace defect::cli
