#include "confsym/repfile.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, 0);
}

Expr parse_at(const std::string& src, const SymbolTable& table, int line) {
  try {
    return parse(src, table);
  } catch (const ParseError& e) {
    fail(line, e.what());
  }
}

Constraint parse_relation(const std::string& src, const SymbolTable& table, int line, bool informational) {
  auto eq = src.find('=');
  if (eq == std::string::npos) fail(line, "expected 'lhs = rhs'");
  return Constraint{parse_at(trim(src.substr(0, eq)), table, line),
                    parse_at(trim(src.substr(eq + 1)), table, line), informational};
}

void collect(const Expr& e, std::set<std::string>& params, std::set<std::string>& fns) {
  for (const auto& p : e.parameters()) params.insert(p);
  for (const auto& f : e.function_names()) fns.insert(f);
}

}  // namespace

RepFile parse_repfile(const std::string& text) {
  RepFile rep;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  enum class Block { None, Generator, Bracket } block = Block::None;
  std::string gen_name;
  Generator::Coeffs coeffs;
  Expr multiplier;
  std::pair<std::string, std::string> bracket;
  Combination combo;

  auto flush = [&]() {
    if (block == Block::Generator) rep.generators.emplace_back(gen_name, coeffs, multiplier);
    if (block == Block::Bracket) rep.spec.set(bracket.first, bracket.second, combo);
    block = Block::None;
    coeffs.clear();
    multiplier = Expr();
    combo.clear();
  };

  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    bool indented = raw[0] == ' ' || raw[0] == '\t';
    auto colon = s.find(':');
    if (indented) {
      if (block == Block::None) fail(line, "indented line outside a block");
      if (colon == std::string::npos) fail(line, "expected 'key: value'");
      std::string key = trim(s.substr(0, colon));
      std::string val = trim(s.substr(colon + 1));
      Expr e = parse_at(val, rep.table, line);
      if (block == Block::Generator) {
        if (key == "multiplier") {
          multiplier = e;
        } else {
          auto kind = rep.table.kind(key);
          if (kind != SymbolTable::Kind::Coordinate && kind != SymbolTable::Kind::Field)
            fail(line, "'" + key + "' is not a declared coordinate or field");
          coeffs[key] = e;
        }
      } else {
        combo.emplace_back(key, e);
      }
      continue;
    }
    flush();
    if (s.rfind("generator ", 0) == 0) {
      if (s.back() != ':') fail(line, "expected ':' after generator name");
      gen_name = trim(s.substr(10, s.size() - 11));
      if (gen_name.empty()) fail(line, "empty generator name");
      block = Block::Generator;
      continue;
    }
    if (s.rfind("bracket ", 0) == 0) {
      auto lb = s.find('['), comma = s.find(','), rb = s.find(']');
      if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos || comma > rb)
        fail(line, "expected 'bracket [A, B]:'");
      bracket = {trim(s.substr(lb + 1, comma - lb - 1)), trim(s.substr(comma + 1, rb - comma - 1))};
      block = Block::Bracket;
      continue;
    }
    if (colon == std::string::npos) fail(line, "expected 'key: value'");
    std::string key = trim(s.substr(0, colon));
    std::string val = trim(s.substr(colon + 1));
    try {
      if (key == "name") {
        rep.name = val;
        rep.spec.name = val;
      } else if (key == "coordinates") {
        for (const auto& w : words(val)) rep.table.declare_coordinate(w);
      } else if (key == "fields") {
        for (const auto& w : words(val)) rep.table.declare_field(w);
      } else if (key == "params") {
        for (const auto& w : words(val)) rep.table.declare_parameter(w);
      } else if (key == "functions") {
        for (const auto& w : words(val)) {
          auto slash = w.find('/');
          if (slash == std::string::npos) fail(line, "expected name/arity, got '" + w + "'");
          rep.table.declare_function(w.substr(0, slash), std::stoi(w.substr(slash + 1)));
        }
      } else if (key == "constraint" || key == "relation") {
        rep.constraints.push_back(parse_relation(val, rep.table, line, key == "relation"));
      } else {
        fail(line, "unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(line, e.what());
    }
  }
  flush();
  for (const auto& g : rep.generators) rep.spec.generators.push_back(g.name());
  for (const auto& [ab, c] : rep.spec.brackets) {
    for (const auto& n : {ab.first, ab.second})
      if (!rep.spec.contains(n)) throw ParseError("bracket refers to unknown generator " + n, 0);
  }
  return rep;
}

RepFile load_repfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_repfile(os.str());
}

std::string serialize_repfile(const RepFile& rep) {
  std::ostringstream os;
  auto join = [](const auto& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  os << "name: " << rep.name << "\n";
  os << "coordinates: " << join(rep.table.coordinates()) << "\n";
  if (!rep.table.fields().empty()) os << "fields: " << join(rep.table.fields()) << "\n";
  if (!rep.table.parameters().empty()) os << "params: " << join(rep.table.parameters()) << "\n";
  if (!rep.table.functions().empty()) {
    std::vector<std::string> fs;
    for (const auto& [f, a] : rep.table.functions()) fs.push_back(f + "/" + std::to_string(a));
    os << "functions: " << join(fs) << "\n";
  }
  for (const auto& c : rep.constraints) os << (c.informational ? "relation: " : "constraint: ") << c.render() << "\n";
  for (const auto& g : rep.generators) {
    os << "generator " << g.name() << ":\n";
    for (const auto& [k, v] : g.coeffs()) os << "  " << k << ": " << v.render() << "\n";
    if (!g.multiplier().is_zero()) os << "  multiplier: " << g.multiplier().render() << "\n";
  }
  for (const auto& [ab, combo] : rep.spec.brackets) {
    bool any = false;
    for (const auto& [n, k] : combo) any = any || !k.is_zero();
    if (!any) continue;
    os << "bracket [" << ab.first << ", " << ab.second << "]:\n";
    for (const auto& [n, k] : combo)
      if (!k.is_zero()) os << "  " << n << ": " << k.render() << "\n";
  }
  return os.str();
}

void save_repfile(const RepFile& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize_repfile(rep);
}

RepFile repfile_for(const std::string& id) {
  const Registry& reg = Registry::instance();
  RepFile rep;
  rep.name = id;
  if (reg.has_case(id)) {
    const auto& c = reg.find_case(id);
    rep.generators = c.generators;
    rep.constraints = c.constraints;
    rep.spec = reg.spec_for(c);
  } else {
    const auto& a = reg.algebra(id);
    rep.generators = a.generators;
    rep.spec = a.spec;
  }
  rep.spec.name = id;

  std::set<std::string> params, fns;
  for (const auto& g : rep.generators) {
    for (const auto& [k, v] : g.coeffs()) collect(v, params, fns);
    collect(g.multiplier(), params, fns);
  }
  for (const auto& c : rep.constraints) {
    collect(c.lhs, params, fns);
    collect(c.rhs, params, fns);
  }
  for (const auto& [ab, combo] : rep.spec.brackets)
    for (const auto& [n, k] : combo) collect(k, params, fns);

  const SymbolTable std_table = SymbolTable::standard();
  for (const auto& x : std_table.coordinates()) rep.table.declare_coordinate(x);
  for (const auto& x : std_table.fields()) rep.table.declare_field(x);
  for (const auto& p : params) rep.table.declare_parameter(p);
  for (const auto& f : fns) rep.table.declare_function(f, std_table.arity(f));
  return rep;
}

}  // namespace confsym
