#include "confsym/parse.hpp"

#include <cctype>

#include "confsym/errors.hpp"

namespace confsym {

ParseError::ParseError(std::string message, std::size_t position, std::vector<std::string> expected)
    : Error([&] {
        std::string s = "parse error at " + std::to_string(position) + ": " + message;
        if (!expected.empty()) {
          s += " (expected one of:";
          for (const auto& e : expected) s += " " + e;
          s += ")";
        }
        return s;
      }()),
      detail_(std::move(message)),
      position_(position),
      expected_(std::move(expected)) {}

SymbolTable SymbolTable::standard() {
  SymbolTable t;
  for (const char* c : {"t", "r", "zeta", "g"}) t.declare_coordinate(c);
  for (const char* f : {"psi", "psis"}) t.declare_field(f);
  for (const char* p : {"x", "y", "k", "s", "k0", "k0p", "p01", "l0", "h0", "c", "c0", "m0", "n0",
                        "kappa", "C0", "eps", "mass"})
    t.declare_parameter(p);
  t.declare_function("f", 0);
  for (const char* f : {"m", "n", "l", "l1", "p0", "h", "I", "E"}) t.declare_function(f, 1);
  t.declare_function("Psi0", 3);
  return t;
}

void SymbolTable::check_fresh(const std::string& name) const {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw Error("invalid symbol name '" + name + "'");
  if (name == "exp" || name == "log") throw Error("'" + name + "' is reserved");
  if (kind(name) != Kind::Unknown) throw Error("symbol '" + name + "' is already declared");
}

void SymbolTable::declare_coordinate(const std::string& name) {
  check_fresh(name);
  coordinates_.push_back(name);
}

void SymbolTable::declare_field(const std::string& name) {
  check_fresh(name);
  fields_.push_back(name);
}

void SymbolTable::declare_parameter(const std::string& name) {
  check_fresh(name);
  parameters_.insert(name);
}

void SymbolTable::declare_function(const std::string& name, int arity) {
  check_fresh(name);
  functions_[name] = arity;
}

void SymbolTable::forget(const std::string& name) {
  std::erase(coordinates_, name);
  std::erase(fields_, name);
  parameters_.erase(name);
  functions_.erase(name);
}

SymbolTable::Kind SymbolTable::kind(const std::string& name) const {
  if (name == "exp" || name == "log") return Kind::Builtin;
  for (const auto& c : coordinates_)
    if (c == name) return Kind::Coordinate;
  for (const auto& f : fields_)
    if (f == name) return Kind::Field;
  if (parameters_.count(name)) return Kind::Parameter;
  if (functions_.count(name)) return Kind::Function;
  return Kind::Unknown;
}

int SymbolTable::arity(const std::string& name) const {
  if (name == "exp" || name == "log") return 1;
  auto it = functions_.find(name);
  return it == functions_.end() ? -1 : it->second;
}

namespace {

// Value of a parsed (sub)expression in operator context: multi-index ->
// coefficient. Plain expressions have only the empty multi-index.
using OpValue = std::map<MultiIndex, Expr>;

OpValue constant_value(Expr e) {
  OpValue v;
  if (!e.is_zero()) v.emplace(MultiIndex{}, std::move(e));
  return v;
}

bool is_plain(const OpValue& v) { return v.empty() || (v.size() == 1 && v.begin()->first.empty()); }

Expr plain(const OpValue& v) { return v.empty() ? Expr() : v.begin()->second; }

OpValue add(OpValue a, const OpValue& b, int sign) {
  for (const auto& [mi, c] : b) {
    Expr& slot = a[mi];
    slot = sign > 0 ? slot + c : slot - c;
    if (slot.is_zero()) a.erase(mi);
  }
  return a;
}

OpValue mul(const OpValue& a, const OpValue& b) {
  OpValue out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      MultiIndex m = ma;
      for (const auto& [s, o] : mb) m[s] += o;
      Expr& slot = out[m];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(m);
    }
  return out;
}

class Parser {
 public:
  Parser(const std::string& src, const SymbolTable& table, bool operator_mode)
      : src_(src), table_(table), operator_mode_(operator_mode) {}

  OpValue parse_all() {
    skip();
    if (pos_ == src_.size()) fail("empty expression", {"number", "identifier", "("});
    OpValue v = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'",
                                  {"+", "-", "*", "/", "^", "end of input"});
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(pos_ < src_.size() ? "unexpected '" + std::string(1, src_[pos_]) + "'"
                                            : "unexpected end of input",
                         {std::string(1, c)});
  }

  OpValue expr() {
    OpValue v;
    skip();
    if (accept('-'))
      v = add({}, term(), -1);
    else {
      accept('+');
      v = term();
    }
    while (true) {
      if (accept('+'))
        v = add(std::move(v), term(), 1);
      else if (accept('-'))
        v = add(std::move(v), term(), -1);
      else
        return v;
    }
  }

  OpValue term() {
    OpValue v = unary();
    while (true) {
      if (accept('*')) {
        v = mul(v, unary());
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        OpValue d = unary();
        if (!is_plain(d)) {
          pos_ = at;
          fail("division by a derivative operator");
        }
        Expr den = plain(d);
        if (den.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        Expr inv;
        try {
          inv = den.inverse();
        } catch (const Unsupported& e) {
          throw Unsupported(std::string(e.what()) + " at position " + std::to_string(at));
        }
        v = mul(v, constant_value(inv));
      } else {
        return v;
      }
    }
  }

  OpValue unary() {
    if (accept('-')) return add({}, unary(), -1);
    if (accept('+')) return unary();
    return power();
  }

  OpValue power() {
    OpValue base = primary();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    RatFunc e = exponent();
    if (!is_plain(base)) {
      if (!e.is_integer() || e.constant_value() < 0) {
        pos_ = at;
        fail("derivative operators take non-negative integer powers only");
      }
      OpValue out = constant_value(Expr(1));
      for (long i = 0; i < e.constant_value().get_num().get_si(); ++i) out = mul(out, base);
      return out;
    }
    return constant_value(plain(base).pow(e));
  }

  RatFunc exponent() {
    skip();
    std::size_t at = pos_;
    int sign = 1;
    if (accept('-'))
      sign = -1;
    else
      accept('+');
    skip();
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      return RatFunc(number() * sign);
    }
    if (accept('(')) {
      OpValue v = expr();
      expect(')');
      if (!is_plain(v)) {
        pos_ = at;
        fail("derivative token in exponent");
      }
      Expr e = plain(v);
      if (!e.is_constant()) {
        pos_ = at;
        fail("exponent must not depend on coordinates or fields");
      }
      return e.constant_value() * RatFunc(sign);
    }
    if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      std::string id = identifier();
      if (table_.kind(id) != SymbolTable::Kind::Parameter) {
        pos_ = at;
        fail("exponent identifier '" + id + "' is not a parameter", {"parameter"});
      }
      return RatFunc::parameter(id) * RatFunc(sign);
    }
    fail("malformed exponent", {"integer", "parameter", "("});
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string whole = src_.substr(start, pos_ - start);
    std::string frac;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      frac = src_.substr(fs, pos_ - fs);
    }
    Rational q(whole.empty() ? "0" : whole);
    if (!frac.empty()) {
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      q += Rational(mpz_class(frac), den);
      q.canonicalize();
    }
    return q;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return src_.substr(start, pos_ - start);
  }

  std::vector<Expr> arguments(const std::string& name, std::size_t at) {
    expect('(');
    std::vector<Expr> args;
    do {
      std::size_t arg_at = pos_;
      OpValue v = expr();
      if (!is_plain(v)) {
        pos_ = arg_at;
        fail("derivative token inside a function argument");
      }
      args.push_back(plain(v));
    } while (accept(','));
    expect(')');
    int arity = table_.arity(name);
    if (arity > 0 && static_cast<int>(args.size()) != arity) {
      pos_ = at;
      fail(name + " takes " + std::to_string(arity) + " argument(s)");
    }
    return args;
  }

  OpValue primary() {
    skip();
    if (pos_ == src_.size()) fail("unexpected end of input", {"number", "identifier", "("});
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant_value(Expr(number()));
    if (accept('(')) {
      OpValue v = expr();
      expect(')');
      return v;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      fail("unexpected '" + std::string(1, c) + "'", {"number", "identifier", "("});
    std::size_t at = pos_;
    std::string id = identifier();
    switch (table_.kind(id)) {
      case SymbolTable::Kind::Coordinate:
        return constant_value(Expr::coordinate(id));
      case SymbolTable::Kind::Field:
        return constant_value(Expr::field(id));
      case SymbolTable::Kind::Parameter:
        return constant_value(Expr::parameter(id));
      case SymbolTable::Kind::Builtin: {
        auto args = arguments(id, at);
        return constant_value(id == "exp" ? Expr::exp(args[0]) : Expr::log(args[0]));
      }
      case SymbolTable::Kind::Function: {
        std::vector<int> orders;
        int primes = 0;
        while (accept('\'')) ++primes;
        if (primes == 0 && accept('[')) {
          do {
            skip();
            if (pos_ == src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
              fail("derivative order must be a non-negative integer", {"integer"});
            orders.push_back(static_cast<int>(number().get_num().get_si()));
          } while (accept(','));
          expect(']');
        }
        auto args = arguments(id, at);
        if (primes > 0) {
          if (args.size() != 1) {
            pos_ = at;
            fail("prime notation requires a single argument");
          }
          orders = {primes};
        }
        if (!orders.empty() && orders.size() != args.size()) {
          pos_ = at;
          fail("derivative orders do not match the number of arguments");
        }
        return constant_value(Expr::function(id, std::move(args), std::move(orders)));
      }
      case SymbolTable::Kind::Unknown:
        break;
    }
    if (id.size() > 1 && id[0] == 'd') {
      std::string var = id.substr(1);
      auto k = table_.kind(var);
      if (k == SymbolTable::Kind::Coordinate || k == SymbolTable::Kind::Field) {
        if (!operator_mode_) {
          pos_ = at;
          fail("derivative token '" + id + "' is only legal in operator context",
               {"number", "identifier", "("});
        }
        OpValue v;
        v.emplace(MultiIndex{{var, 1}}, Expr(1));
        return v;
      }
    }
    pos_ = at;
    fail("unknown identifier '" + id + "'", {"declared symbol"});
  }

  const std::string& src_;
  const SymbolTable& table_;
  bool operator_mode_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& src, const SymbolTable& table) {
  return plain(Parser(src, table, false).parse_all());
}

RatFunc parse_constant(const std::string& src, const SymbolTable& table) {
  Expr e = parse(src, table);
  if (!e.is_constant()) throw ParseError("expected a constant expression", 0, {"parameter expression"});
  return e.constant_value();
}

std::map<MultiIndex, Expr> parse_operator_terms(const std::string& src, const SymbolTable& table) {
  return Parser(src, table, true).parse_all();
}

}  // namespace confsym
