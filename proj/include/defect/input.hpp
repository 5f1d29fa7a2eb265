#pragma once

// Line-oriented text format for groups, morphisms, towers and the auxiliary
// objects the checkers take. The grammar is documented in docs/input-format.md.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "defect/tower.hpp"

namespace defect {

class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownName : public InputError {
 public:
  using InputError::InputError;
};

struct Workspace {
  std::map<std::string, FpGroup> groups;
  std::map<std::string, Morphism> morphisms;
  std::map<std::string, Tower> towers;
  std::map<std::string, ShortExact> sequences;
  std::map<std::string, Embedded> subgroups;
  std::map<std::string, std::vector<FpGroup>> families;
  std::map<std::string, std::vector<Embedded>> chains;

  /// Named group, or a literal such as Z, Z^3, Z/4 or Z/2+Z/2+Z.
  FpGroup group(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  const Tower& tower(const std::string& name) const;
  const ShortExact& sequence(const std::string& name) const;
  const Embedded& subgroup(const std::string& name) const;
  const std::vector<FpGroup>& family(const std::string& name) const;
  const std::vector<Embedded>& chain(const std::string& name) const;
};

/// Parses a group literal; throws InputError when `text` is not one.
FpGroup parse_group_literal(const std::string& text);

Workspace parse_workspace(std::istream& in, const std::string& source = "<input>");
Workspace load_workspace(const std::string& path);

/// Whitespace-separated integer rows, ignoring blank lines and comments.
IntMatrix parse_matrix_rows(std::istream& in, const std::string& source = "<input>");

/// Rows of integers, one row per line, in the layout the parser reads.
std::vector<std::string> matrix_lines(const IntMatrix& m);

/// "rank, [d1,d2,...]"
std::string invariant_factors_string(const Invariants& inv);

}  // namespace defect
