#include "confsym/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

struct ComponentKey {
  std::string slot;  // coordinate name, or "" for the multiplier
  Monomial mono;
};

struct ComponentLess {
  bool operator()(const ComponentKey& a, const ComponentKey& b) const {
    if (a.slot != b.slot) return a.slot < b.slot;
    return compare_monomials(a.mono, b.mono) < 0;
  }
};

using Components = std::map<ComponentKey, RatFunc, ComponentLess>;

void add_components(Components& out, const std::string& slot, const Expr& e) {
  for (const Term& t : e.terms()) {
    RatFunc& c = out[ComponentKey{slot, t.mono}];
    c = c + t.coeff;
  }
}

Components components(const Generator& g) {
  Components out;
  for (const auto& [k, v] : g.coeffs()) add_components(out, k, v);
  add_components(out, "", g.multiplier());
  return out;
}

const Generator* find_named(const std::vector<Generator>& gens, const std::string& name) {
  for (const auto& g : gens)
    if (g.name() == name) return &g;
  return nullptr;
}

std::string join_names(const std::vector<Generator>& gens) {
  std::string s;
  for (const auto& g : gens) s += (s.empty() ? "" : ", ") + g.name();
  return s;
}

}  // namespace

std::string render_combination(const Combination& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, coeff] : c) {
    if (coeff.is_zero()) continue;
    Expr k = coeff;
    bool neg = k.terms().size() == 1 && k.terms()[0].coeff.renders_negative();
    if (neg) k = -k;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (k == Expr(1)) {
      os << name;
    } else if (k.terms().size() > 1 ||
               (k.terms()[0].mono.empty() && !k.terms()[0].coeff.numerator().is_monomial())) {
      os << "(" << k.render() << ")*" << name;
    } else {
      os << k.render() << "*" << name;
    }
  }
  return first ? "0" : os.str();
}

void AlgebraSpec::set(const std::string& a, const std::string& b, Combination rhs) {
  brackets[{a, b}] = std::move(rhs);
}

Combination AlgebraSpec::expected(const std::string& a, const std::string& b) const {
  if (auto it = brackets.find({a, b}); it != brackets.end()) return it->second;
  if (auto it = brackets.find({b, a}); it != brackets.end()) {
    Combination c = it->second;
    for (auto& [n, k] : c) k = -k;
    return c;
  }
  return {};
}

bool AlgebraSpec::contains(const std::string& gen) const {
  return std::find(generators.begin(), generators.end(), gen) != generators.end();
}

bool StructureReport::ok() const { return mismatches() == 0; }

std::size_t StructureReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const BracketCheck& c) { return !c.ok; }));
}

std::optional<std::vector<RatFunc>> solve_in_span(const Generator& target,
                                                  const std::vector<Generator>& gens) {
  const std::size_t n = gens.size();
  std::vector<Components> cols;
  cols.reserve(n);
  std::set<ComponentKey, ComponentLess> keys;
  for (const auto& g : gens) {
    cols.push_back(components(g));
    for (const auto& [k, v] : cols.back()) keys.insert(k);
  }
  Components rhs = components(target);
  for (const auto& [k, v] : rhs) keys.insert(k);

  std::vector<std::vector<RatFunc>> m;
  for (const auto& key : keys) {
    std::vector<RatFunc> row(n + 1);
    for (std::size_t j = 0; j < n; ++j)
      if (auto it = cols[j].find(key); it != cols[j].end()) row[j] = it->second;
    if (auto it = rhs.find(key); it != rhs.end()) row[n] = it->second;
    m.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    RatFunc inv = m[r][c].inverse();
    for (std::size_t j = c; j <= n; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      RatFunc f = m[i][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    if (!m[i][n].is_zero()) return std::nullopt;
  std::vector<RatFunc> out(n);
  for (std::size_t i = 0; i < r; ++i) out[pivot_col[i]] = m[i][n];
  return out;
}

StructureReport verify_structure(const std::vector<Generator>& gens, const AlgebraSpec& spec) {
  StructureReport rep;
  rep.algebra = spec.name;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      BracketCheck chk;
      chk.a = gens[i].name();
      chk.b = gens[j].name();
      chk.expected = spec.expected(chk.a, chk.b);
      Generator expect("", {});
      bool resolvable = true;
      for (const auto& [name, k] : chk.expected) {
        const Generator* g = find_named(gens, name);
        if (!g) {
          resolvable = false;
          continue;
        }
        expect = expect + g->scaled(k);
      }
      chk.residual = commutator(gens[i], gens[j]) - expect;
      chk.residual.set_name("[" + chk.a + "," + chk.b + "]");
      chk.ok = resolvable && chk.residual.is_zero();
      rep.checks.push_back(std::move(chk));
    }
  }
  return rep;
}

std::string StructureTable::render() const {
  std::ostringstream os;
  for (const auto& [ij, coeffs] : entries) {
    Combination c;
    for (std::size_t k = 0; k < names.size(); ++k)
      if (coeffs[k] != 0) c.emplace_back(names[k], Expr(coeffs[k]));
    os << "[" << names[ij.first] << ", " << names[ij.second] << "] = " << render_combination(c)
       << "\n";
  }
  return os.str();
}

StructureTable closure_check(const std::vector<Generator>& gens) {
  StructureTable table;
  for (const auto& g : gens) table.names.push_back(g.name());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Generator c = commutator(gens[i], gens[j]);
      auto sol = solve_in_span(c, gens);
      std::string pair = "[" + gens[i].name() + ", " + gens[j].name() + "]";
      if (!sol)
        throw ClosureFailure(pair + " = " + c.render() + " is not in the span of {" +
                             join_names(gens) + "}");
      std::vector<Rational> coeffs;
      for (const auto& k : *sol) {
        if (!k.is_constant())
          throw ClosureFailure(pair + " has parameter-dependent coefficient " + k.render());
        coeffs.push_back(k.constant_value());
      }
      table.entries[{i, j}] = std::move(coeffs);
    }
  }
  return table;
}

std::vector<std::pair<std::string, Weight>> adjoint_weights(const std::vector<Generator>& gens,
                                                            const Generator& h1,
                                                            const Generator& h2) {
  std::vector<std::pair<std::string, Weight>> out;
  for (const auto& g : gens) {
    Rational w[2];
    const Generator* hs[2] = {&h1, &h2};
    for (int k = 0; k < 2; ++k) {
      Generator c = commutator(*hs[k], g);
      if (c.is_zero()) {
        w[k] = 0;
        continue;
      }
      auto sol = solve_in_span(c, {g});
      if (!sol || !(*sol)[0].is_constant())
        throw NotAWeightVector(g.name() + " is not an eigenvector of ad(" + hs[k]->name() + ")");
      w[k] = (*sol)[0].constant_value();
    }
    out.emplace_back(g.name(), Weight{w[0], w[1]});
  }
  return out;
}

}  // namespace confsym
