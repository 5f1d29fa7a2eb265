#include "defect/input.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace defect {

namespace {

const std::regex kName(R"([A-Za-z_][A-Za-z0-9_.']*)");
const std::regex kInteger(R"([+-]?[0-9]+)");

std::string strip(const std::string& s) {
  std::string t = s.substr(0, s.find('#'));
  const auto b = t.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = t.find_last_not_of(" \t\r");
  return t.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      std::string s = strip(raw);
      if (!s.empty()) lines_.push_back({n, words(s)});
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() {
    if (done()) fail(lines_.empty() ? 0 : lines_.back().number, "unexpected end of input");
    return lines_[pos_++];
  }
  [[noreturn]] void fail(std::size_t line, const std::string& what) const { throw ParseError(source_, line, what); }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

Int to_int(const Reader& r, std::size_t line, const std::string& w) {
  if (!std::regex_match(w, kInteger)) r.fail(line, "expected an integer, got '" + w + "'");
  return Int(w[0] == '+' ? w.substr(1) : w);
}

std::size_t to_size(const Reader& r, std::size_t line, const std::string& w) {
  Int v = to_int(r, line, w);
  if (v < 0 || !v.fits_ulong_p()) r.fail(line, "expected a nonnegative count, got '" + w + "'");
  return v.get_ui();
}

void expect_words(const Reader& r, const Line& l, std::size_t n, const std::string& usage) {
  if (l.words.size() != n) r.fail(l.number, "expected '" + usage + "'");
}

// Integer rows until `end`; each row must have `width` entries.
std::vector<IntVector> rows_until_end(Reader& r, std::size_t width) {
  std::vector<IntVector> rows;
  while (true) {
    const Line& l = r.next();
    if (l.words.size() == 1 && l.words[0] == "end") return rows;
    if (l.words.size() != width)
      r.fail(l.number, "expected " + std::to_string(width) + " integers, got " + std::to_string(l.words.size()));
    IntVector row;
    for (const auto& w : l.words) row.push_back(to_int(r, l.number, w));
    rows.push_back(std::move(row));
  }
}

void expect_end(Reader& r) {
  const Line& l = r.next();
  if (l.words.size() != 1 || l.words[0] != "end") r.fail(l.number, "expected 'end'");
}

template <typename Map>
void define(Reader& r, std::size_t line, Map& m, const std::string& name, typename Map::mapped_type value) {
  if (!std::regex_match(name, kName)) r.fail(line, "invalid name '" + name + "'");
  if (!m.emplace(name, std::move(value)).second) r.fail(line, "duplicate definition of '" + name + "'");
}

template <typename T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw UnknownName(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

// Resolves names inside a block, reporting failures at the block's line.
template <typename F>
auto at_line(const Reader& r, std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    r.fail(line, e.what());
  }
}

void parse_group(Reader& r, Workspace& ws, const Line& head) {
  expect_words(r, head, 2, "group NAME");
  const Line& g = r.next();
  if (g.words.size() != 2 || g.words[0] != "gens") r.fail(g.number, "expected 'gens N'");
  const std::size_t n = to_size(r, g.number, g.words[1]);
  const Line& l = r.next();
  IntMatrix rels(n, 0);
  if (l.words.size() == 1 && l.words[0] == "rels") {
    auto rows = rows_until_end(r, n);
    rels = IntMatrix::from_columns(n, rows);
  } else if (!(l.words.size() == 1 && l.words[0] == "end")) {
    r.fail(l.number, "expected 'rels' or 'end'");
  }
  define(r, head.number, ws.groups, head.words[1], FpGroup(rels));
}

void parse_morphism(Reader& r, Workspace& ws, const Line& head) {
  if (head.words.size() != 6 || head.words[2] != ":" || head.words[4] != "->")
    r.fail(head.number, "expected 'morphism NAME : SRC -> DST'");
  FpGroup src = at_line(r, head.number, [&] { return ws.group(head.words[3]); });
  FpGroup dst = at_line(r, head.number, [&] { return ws.group(head.words[5]); });
  const Line& m = r.next();
  if (m.words.size() != 1 || m.words[0] != "matrix") r.fail(m.number, "expected 'matrix'");
  auto rows = rows_until_end(r, src.ngens());
  if (rows.size() != dst.ngens())
    r.fail(m.number, "matrix needs " + std::to_string(dst.ngens()) + " rows, got " + std::to_string(rows.size()));
  IntMatrix mat(dst.ngens(), src.ngens());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < src.ngens(); ++j) mat(i, j) = rows[i][j];
  Morphism f = at_line(r, m.number, [&] { return Morphism(src, dst, mat); });
  define(r, head.number, ws.morphisms, head.words[1], f);
}

void parse_tower(Reader& r, Workspace& ws, const Line& head) {
  expect_words(r, head, 2, "tower NAME");
  const Line& l = r.next();
  if (l.words.empty()) r.fail(l.number, "empty tower body");
  std::optional<Tower> t;
  if (l.words[0] == "pattern" && l.words.size() >= 2) {
    const std::string& kind = l.words[1];
    if (kind == "mult") {
      expect_words(r, l, 3, "pattern mult C");
      t = Tower::mult(to_int(r, l.number, l.words[2]));
    } else if (kind == "factorial") {
      expect_words(r, l, 2, "pattern factorial");
      t = Tower::factorial();
    } else if (kind == "const") {
      expect_words(r, l, 3, "pattern const GROUP");
      t = Tower::constant(at_line(r, l.number, [&] { return ws.group(l.words[2]); }));
    } else if (kind == "sum") {
      std::vector<FpGroup> gs;
      std::size_t rep = 1;
      for (std::size_t i = 2; i < l.words.size(); ++i) {
        if (l.words[i] == "x" && i + 2 == l.words.size()) {
          rep = to_size(r, l.number, l.words[i + 1]);
          break;
        }
        gs.push_back(at_line(r, l.number, [&] { return ws.group(l.words[i]); }));
      }
      t = direct_sum_as_tower(gs, rep);
    } else {
      r.fail(l.number, "unknown tower pattern '" + kind + "'");
    }
    expect_end(r);
  } else if (l.words[0] == "stages") {
    std::vector<FpGroup> stages;
    for (std::size_t i = 1; i < l.words.size(); ++i)
      stages.push_back(at_line(r, l.number, [&] { return ws.group(l.words[i]); }));
    std::vector<Morphism> maps;
    const Line& m = r.next();
    if (m.words.size() == 1 && m.words[0] == "end") {
      t = at_line(r, l.number, [&] { return Tower::finite(stages, maps); });
    } else {
      if (m.words.empty() || m.words[0] != "maps") r.fail(m.number, "expected 'maps M1 M2 ...'");
      for (std::size_t i = 1; i < m.words.size(); ++i)
        maps.push_back(at_line(r, m.number, [&] { return ws.morphism(m.words[i]); }));
      t = at_line(r, m.number, [&] { return Tower::finite(stages, maps); });
      expect_end(r);
    }
  } else {
    r.fail(l.number, "expected 'pattern ...' or 'stages ...'");
  }
  define(r, head.number, ws.towers, head.words[1], *t);
}

void parse_sequence(Reader& r, Workspace& ws, const Line& head) {
  expect_words(r, head, 2, "sequence NAME");
  const Line& a = r.next();
  if (a.words.size() != 2 || a.words[0] != "incl") r.fail(a.number, "expected 'incl MORPHISM'");
  Morphism i = at_line(r, a.number, [&] { return ws.morphism(a.words[1]); });
  const Line& b = r.next();
  if (b.words.size() != 2 || b.words[0] != "proj") r.fail(b.number, "expected 'proj MORPHISM'");
  Morphism p = at_line(r, b.number, [&] { return ws.morphism(b.words[1]); });
  if (!i.dst().same_presentation(p.src())) r.fail(b.number, "incl and proj do not compose");
  expect_end(r);
  define(r, head.number, ws.sequences, head.words[1], ShortExact{i, p});
}

void parse_subgroup(Reader& r, Workspace& ws, const Line& head) {
  if (head.words.size() != 4 || head.words[2] != "of") r.fail(head.number, "expected 'subgroup NAME of GROUP'");
  FpGroup g = at_line(r, head.number, [&] { return ws.group(head.words[3]); });
  auto rows = rows_until_end(r, g.ngens());
  define(r, head.number, ws.subgroups, head.words[1], subgroup_generated(g, rows));
}

void parse_family(Reader& r, Workspace& ws, const Line& head) {
  expect_words(r, head, 2, "family NAME");
  const Line& l = r.next();
  if (l.words.empty() || l.words[0] != "groups") r.fail(l.number, "expected 'groups G1 G2 ...'");
  std::vector<FpGroup> gs;
  for (std::size_t i = 1; i < l.words.size(); ++i)
    gs.push_back(at_line(r, l.number, [&] { return ws.group(l.words[i]); }));
  expect_end(r);
  define(r, head.number, ws.families, head.words[1], gs);
}

void parse_chain(Reader& r, Workspace& ws, const Line& head) {
  if (head.words.size() != 4 || head.words[2] != "of") r.fail(head.number, "expected 'chain NAME of GROUP'");
  FpGroup g = at_line(r, head.number, [&] { return ws.group(head.words[3]); });
  const Line& l = r.next();
  if (l.words.empty() || l.words[0] != "subgroups") r.fail(l.number, "expected 'subgroups H1 H2 ...'");
  std::vector<Embedded> hs;
  for (std::size_t i = 1; i < l.words.size(); ++i) {
    const Embedded& h = at_line(r, l.number, [&]() -> const Embedded& { return ws.subgroup(l.words[i]); });
    if (!h.incl.dst().same_presentation(g)) r.fail(l.number, "'" + l.words[i] + "' is not a subgroup of the chain's group");
    hs.push_back(h);
  }
  expect_end(r);
  define(r, head.number, ws.chains, head.words[1], hs);
}

}  // namespace

FpGroup parse_group_literal(const std::string& text) {
  static const std::regex term(R"(0|Z|Z\^([0-9]+)|Z/([0-9]+))");
  std::size_t free = 0;
  IntVector torsion;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = text.find('+', start);
    const std::string t = text.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
    std::smatch m;
    if (!std::regex_match(t, m, term)) throw InputError("not a group literal: '" + text + "'");
    if (t == "Z")
      free += 1;
    else if (m[1].matched)
      free += std::stoul(m[1].str());
    else if (m[2].matched)
      torsion.push_back(Int(m[2].str()));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  const std::size_t n = torsion.size() + free;
  IntMatrix rels(n, torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) rels(i, i) = torsion[i];
  return FpGroup(rels);
}

FpGroup Workspace::group(const std::string& name) const {
  if (auto it = groups.find(name); it != groups.end()) return it->second;
  try {
    return parse_group_literal(name);
  } catch (const InputError&) {
    throw UnknownName("unknown group '" + name + "'");
  }
}

const Morphism& Workspace::morphism(const std::string& name) const { return lookup(morphisms, name, "morphism"); }
const Tower& Workspace::tower(const std::string& name) const { return lookup(towers, name, "tower"); }
const ShortExact& Workspace::sequence(const std::string& name) const { return lookup(sequences, name, "sequence"); }
const Embedded& Workspace::subgroup(const std::string& name) const { return lookup(subgroups, name, "subgroup"); }
const std::vector<FpGroup>& Workspace::family(const std::string& name) const {
  return lookup(families, name, "family");
}
const std::vector<Embedded>& Workspace::chain(const std::string& name) const { return lookup(chains, name, "chain"); }

Workspace parse_workspace(std::istream& in, const std::string& source) {
  Reader r(in, source);
  Workspace ws;
  while (!r.done()) {
    const Line& head = r.next();
    const std::string& kw = head.words[0];
    if (kw == "group")
      parse_group(r, ws, head);
    else if (kw == "morphism")
      parse_morphism(r, ws, head);
    else if (kw == "tower")
      parse_tower(r, ws, head);
    else if (kw == "sequence")
      parse_sequence(r, ws, head);
    else if (kw == "subgroup")
      parse_subgroup(r, ws, head);
    else if (kw == "family")
      parse_family(r, ws, head);
    else if (kw == "chain")
      parse_chain(r, ws, head);
    else
      r.fail(head.number, "unknown block '" + kw + "'");
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_workspace(in, path);
}

IntMatrix parse_matrix_rows(std::istream& in, const std::string& source) {
  Reader r(in, source);
  std::vector<IntVector> rows;
  std::size_t width = 0;
  while (!r.done()) {
    const Line& l = r.next();
    if (rows.empty()) width = l.words.size();
    if (l.words.size() != width)
      r.fail(l.number, "expected " + std::to_string(width) + " integers, got " + std::to_string(l.words.size()));
    IntVector row;
    for (const auto& w : l.words) row.push_back(to_int(r, l.number, w));
    rows.push_back(std::move(row));
  }
  IntMatrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::string> matrix_lines(const IntMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::ostringstream os;
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j > 0 ? " " : "") << m(i, j);
    out.push_back(os.str());
  }
  return out;
}

std::string invariant_factors_string(const Invariants& inv) {
  std::ostringstream os;
  os << inv.rank << ", [";
  for (std::size_t i = 0; i < inv.factors.size(); ++i) os << (i > 0 ? "," : "") << inv.factors[i];
  os << ']';
  return os.str();
}

}  // namespace defect
