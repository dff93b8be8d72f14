#include "properties.hpp"

#include <cmath>
#include <set>

#include "confsym/numeric.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"

namespace confsym::testing {

namespace {

const std::vector<std::string> kCoords = {"t", "r", "zeta", "g"};

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Expr small_rational(std::mt19937_64& rng) {
  int num = uniform_int(rng, -5, 5);
  int den = uniform_int(rng, 1, 4);
  Rational q(num == 0 ? 1 : num, den);
  q.canonicalize();
  return Expr(q);
}

Expr leaf(std::mt19937_64& rng) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: return small_rational(rng);
    case 1: return Expr::parameter(uniform_int(rng, 0, 1) ? "x" : "y");
    default: return Expr::coordinate(kCoords[static_cast<std::size_t>(uniform_int(rng, 0, 3))]);
  }
}

double symbol_value(const std::string& name) {
  static const SymbolTable table = SymbolTable::standard();
  const auto& params = table.parameters();
  auto it = params.find(name);
  auto i = it == params.end() ? params.size() : static_cast<std::size_t>(std::distance(params.begin(), it));
  return 0.31 + 0.071 * static_cast<double>(i);
}

}  // namespace

Expr random_expression(std::mt19937_64& rng, int depth) {
  if (depth == 0) return leaf(rng);
  switch (uniform_int(rng, 0, 6)) {
    case 0:
    case 1: return random_expression(rng, depth - 1) + random_expression(rng, depth - 1);
    case 2:
    case 3: return random_expression(rng, depth - 1) * random_expression(rng, depth - 1);
    case 4: {
      Expr base = Expr::coordinate(kCoords[static_cast<std::size_t>(uniform_int(rng, 0, 3))]);
      Expr e = uniform_int(rng, 0, 1) ? small_rational(rng) : Expr::parameter("x");
      return base.pow(e.terms().front().coeff) * random_expression(rng, depth - 1);
    }
    case 5: return Expr::exp(random_expression(rng, depth - 1));
    default:
      if (uniform_int(rng, 0, 1)) return Expr::log(Expr::coordinate(kCoords[static_cast<std::size_t>(uniform_int(rng, 0, 3))]) * small_rational(rng).pow(RatFunc(2)));
      return Expr::function("m", {random_expression(rng, depth - 1)});
  }
}

Expr random_polynomial(std::mt19937_64& rng) {
  Expr p;
  int terms = uniform_int(rng, 1, 6);
  for (int k = 0; k < terms; ++k) {
    Expr mono = small_rational(rng);
    for (const auto& c : kCoords) mono *= Expr::coordinate(c).pow(RatFunc(uniform_int(rng, 0, 4)));
    p += mono;
  }
  return p;
}

std::vector<std::vector<Drawn>> registered_generator_sets() {
  std::vector<std::vector<Drawn>> out;
  const Registry& reg = Registry::instance();
  for (const auto& a : reg.algebras()) {
    std::vector<Drawn> set;
    for (const auto& g : a.generators) set.push_back({a.id, g});
    out.push_back(std::move(set));
  }
  for (const auto& c : reg.cases()) {
    std::vector<Drawn> set;
    for (const auto& g : build_representation(c.id, {}, false)) set.push_back({"case " + c.id, g});
    out.push_back(std::move(set));
  }
  return out;
}

FunctionImpls sample_functions() {
  FunctionImpl impl = [](const std::vector<int>& orders, const std::vector<double>& args) {
    double v = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
      int n = i < orders.size() ? orders[i] : 0;
      double u = args[i];
      double d = std::pow(0.3, n) * std::exp(0.3 * u);
      if (n == 0) d += u * u;
      if (n == 1) d += 2 * u;
      if (n == 2) d += 2;
      v *= d;
    }
    return v;
  };
  FunctionImpls out;
  const SymbolTable table = SymbolTable::standard();
  for (const auto& [name, arity] : table.functions()) out[name] = impl;
  return out;
}

SuiteResult jacobi_suite(std::uint64_t seed, std::size_t triples) {
  std::mt19937_64 rng(seed);
  auto sets = registered_generator_sets();
  SuiteResult r;
  for (std::size_t k = 0; k < triples; ++k) {
    const auto& set = sets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(sets.size()) - 1))];
    auto pick = [&]() -> const Drawn& { return set[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(set.size()) - 1))]; };
    const Drawn &a = pick(), &b = pick(), &c = pick();
    Generator j = commutator(commutator(a.generator, b.generator), c.generator) +
                  commutator(commutator(b.generator, c.generator), a.generator) +
                  commutator(commutator(c.generator, a.generator), b.generator);
    ++r.trials;
    if (!j.is_zero()) {
      ++r.failures;
      if (r.first_failure.empty())
        r.first_failure = a.source + ": (" + a.generator.name() + ", " + b.generator.name() + ", " + c.generator.name() + ")";
    }
  }
  return r;
}

SuiteResult product_rule_suite(std::uint64_t seed, std::size_t expressions) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  for (std::size_t k = 0; k < expressions; ++k) {
    Expr a = random_expression(rng), b = random_expression(rng);
    const std::string& v = kCoords[static_cast<std::size_t>(uniform_int(rng, 0, 3))];
    Expr lhs = differentiate(a * b, v);
    Expr rhs = differentiate(a, v) * b + a * differentiate(b, v);
    ++r.trials;
    if (!(lhs == rhs)) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = "d/d" + v + " of (" + a.render() + ")*(" + b.render() + ")";
    }
  }
  return r;
}

SuiteResult mixed_partial_suite(std::uint64_t seed, std::size_t expressions) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  for (std::size_t k = 0; k < expressions; ++k) {
    Expr e = random_expression(rng);
    auto i = static_cast<std::size_t>(uniform_int(rng, 0, 3));
    auto j = static_cast<std::size_t>(uniform_int(rng, 0, 3));
    Expr a = differentiate(differentiate(e, kCoords[i]), kCoords[j]);
    Expr b = differentiate(differentiate(e, kCoords[j]), kCoords[i]);
    ++r.trials;
    if (!(a == b)) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = e.render() + " in " + kCoords[i] + ", " + kCoords[j];
    }
  }
  return r;
}

SuiteResult operator_agreement_suite(std::uint64_t seed, std::size_t pairs, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(1.2, 1.8);
  auto sets = registered_generator_sets();
  std::vector<Drawn> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  FunctionImpls funcs = sample_functions();
  SuiteResult r;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Drawn& d = all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(all.size()) - 1))];
    Expr p = random_polynomial(rng);
    Assignment point;
    for (const auto& c : kCoords) point[c] = coord(rng);
    std::set<std::string> params;
    for (const auto& [v, c] : d.generator.coeffs())
      for (const auto& s : c.parameters()) params.insert(s);
    for (const auto& s : d.generator.multiplier().parameters()) params.insert(s);
    Assignment full = point;
    for (const auto& s : params) full[s] = symbol_value(s);

    Generator X = d.generator;
    double sym = eval_numeric(apply(X, p), full, funcs);
    double scale = std::abs(eval_numeric(X.multiplier(), full, funcs) * eval_numeric(p, full));
    for (const auto& [v, c] : X.coeffs())
      scale += std::abs(eval_numeric(c, full, funcs) * eval_numeric(differentiate(p, v), full));

    DiffOperator D(X);
    double num = 0;
    for (const auto& [m, c] : D.terms()) {
      double cv = eval_numeric(c, full, funcs);
      num += cv * fd_apply_at(DiffOperator::partial(m), [&](const Assignment& a) { return eval_numeric(p, a); }, point, 1e-2);
    }
    double rel = std::abs(num - sym) / std::max(scale, 1.0);
    r.worst = std::max(r.worst, rel);
    ++r.trials;
    if (!(rel <= tolerance)) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = d.source + " " + X.name() + " on " + p.render();
    }
  }
  return r;
}

}  // namespace confsym::testing
