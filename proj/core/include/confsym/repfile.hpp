#pragma once

// Plain-text representation files.
//
//   name: sch1-zeta
//   coordinates: t r zeta g
//   fields: psi psis
//   params: x y
//   functions: m/1 f/0
//   constraint: p01 = 2*y
//   relation: k0p + s = 2*y
//   generator X0:
//     t: -t
//     r: -1/2*r
//     multiplier: -1/2*x
//   bracket [X0, X1]:
//     X1: -1
//
// Lines starting with '#' and blank lines are ignored. Brackets not listed
// are expected to vanish.

#include <string>
#include <vector>

#include "confsym/algebra.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"

namespace confsym {

struct RepFile {
  std::string name;
  SymbolTable table;
  std::vector<Constraint> constraints;
  std::vector<Generator> generators;
  AlgebraSpec spec;
};

/// Throws ParseError with a line number.
RepFile parse_repfile(const std::string& text);
RepFile load_repfile(const std::string& path);
std::string serialize_repfile(const RepFile& rep);
void save_repfile(const RepFile& rep, const std::string& path);

/// File contents for a registered case or algebra id.
RepFile repfile_for(const std::string& id);

}  // namespace confsym
