#include "confsym/numeric.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

const std::vector<std::string> kCodes = {"t", "r", "zeta", "g"};

int rank_of(const std::string& name) {
  auto it = std::find(kCodes.begin(), kCodes.end(), name);
  return it == kCodes.end() ? static_cast<int>(kCodes.size()) : static_cast<int>(it - kCodes.begin());
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  if (n < 4096 || workers == 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e, w] { body(b, e, w); });
  }
  for (auto& t : pool) t.join();
}

double ipow(double base, int e) {
  bool neg = e < 0;
  unsigned u = static_cast<unsigned>(neg ? -e : e);
  double r = 1;
  while (u) {
    if (u & 1) r *= base;
    base *= base;
    u >>= 1;
  }
  return neg ? 1 / r : r;
}

double eval_coeff(const RatFunc& c, const Assignment& fixed) {
  return c.evaluate([&](const std::string& name) {
    auto it = fixed.find(name);
    if (it == fixed.end()) throw MissingBinding("no numeric value for parameter " + name);
    return it->second;
  });
}

struct Stencil {
  std::vector<std::pair<int, double>> taps;
};

Stencil central(int order, double h) {
  switch (order) {
    case 1: return {{{-1, -0.5 / h}, {1, 0.5 / h}}};
    case 2: return {{{-1, 1 / (h * h)}, {0, -2 / (h * h)}, {1, 1 / (h * h)}}};
    case 3: {
      double s = 1 / (h * h * h);
      return {{{-2, -0.5 * s}, {-1, s}, {1, -s}, {2, 0.5 * s}}};
    }
    case 4: {
      double s = 1 / (h * h * h * h);
      return {{{-2, s}, {-1, -4 * s}, {0, 6 * s}, {1, -4 * s}, {2, s}}};
    }
    default: throw GridTooCoarse("finite differences support orders up to 4, got " + std::to_string(order));
  }
}

Stencil five_point(int order, double h) {
  switch (order) {
    case 1: return {{{-2, 1 / (12 * h)}, {-1, -8 / (12 * h)}, {1, 8 / (12 * h)}, {2, -1 / (12 * h)}}};
    case 2: {
      double s = 1 / (12 * h * h);
      return {{{-2, -s}, {-1, 16 * s}, {0, -30 * s}, {1, 16 * s}, {2, -s}}};
    }
    default: throw Unsupported("point stencils support orders up to 2");
  }
}

void cubic_weights(double s, double w[4]) {
  w[0] = -(s - 1) * (s - 2) * (s - 3) / 6;
  w[1] = s * (s - 2) * (s - 3) / 2;
  w[2] = -s * (s - 1) * (s - 3) / 2;
  w[3] = s * (s - 1) * (s - 2) / 6;
}

}  // namespace

Grid::Grid(std::vector<Axis> axes) : Grid(std::move(axes), Derived{}) {
  for (const auto& a : axes_)
    if (a.n < 16) throw GridTooCoarse("axis " + a.name + " has " + std::to_string(a.n) + " points, need 16");
}

Grid::Grid(std::vector<Axis> axes, Derived) : axes_(std::move(axes)) {
  std::stable_sort(axes_.begin(), axes_.end(), [](const Axis& a, const Axis& b) { return rank_of(a.name) < rank_of(b.name); });
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const Axis& a = axes_[i];
    if (a.n < 2 || !(a.hi > a.lo)) throw GridTooCoarse("axis " + a.name + " has a non-positive step");
    if (i > 0 && axes_[i - 1].name == a.name) throw Error("duplicate axis " + a.name);
  }
  strides_.assign(axes_.size(), 1);
  size_ = 1;
  for (std::size_t i = axes_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= axes_[i].n;
  }
}

Grid Grid::uniform(const std::vector<std::string>& names, double lo, double hi, double h) {
  if (!(h > 0)) throw GridTooCoarse("step must be positive");
  auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
  std::vector<Axis> axes;
  for (const auto& name : names) axes.push_back({name, lo, hi, n});
  return Grid(std::move(axes));
}

int Grid::axis_of(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::size_t> Grid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    idx[i] = flat / strides_[i];
    flat %= strides_[i];
  }
  return idx;
}

std::size_t Grid::flatten(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) flat += idx[i] * strides_[i];
  return flat;
}

std::vector<double> Grid::point(std::size_t flat) const {
  auto idx = unflatten(flat);
  std::vector<double> p(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) p[i] = axes_[i].at(idx[i]);
  return p;
}

void Grid::require_safe_domain() const {
  for (const auto& a : axes_)
    if ((a.name == "t" || a.name == "zeta" || a.name == "g") && a.lo < 0.5)
      throw DomainError("axis " + a.name + " starts at " + std::to_string(a.lo) + ", below 0.5");
}

Grid Grid::shrunk(std::size_t margin) const {
  std::vector<Axis> axes;
  for (const auto& a : axes_) {
    if (a.n < 2 * margin + 1) throw GridTooCoarse("axis " + a.name + " too short for margin " + std::to_string(margin));
    axes.push_back({a.name, a.at(margin), a.at(a.n - 1 - margin), a.n - 2 * margin});
  }
  return Grid(std::move(axes), Derived{});
}

Grid Grid::without(const std::string& name) const {
  std::vector<Axis> axes;
  for (const auto& a : axes_)
    if (a.name != name) axes.push_back(a);
  return Grid(std::move(axes), Derived{});
}

bool operator==(const Grid& a, const Grid& b) {
  if (a.axes_.size() != b.axes_.size()) return false;
  for (std::size_t i = 0; i < a.axes_.size(); ++i) {
    const Axis &x = a.axes_[i], &y = b.axes_[i];
    if (x.name != y.name || x.n != y.n || x.lo != y.lo || x.hi != y.hi) return false;
  }
  return true;
}

CompiledExpr::CompiledExpr(const Expr& e, const Grid& grid, const Assignment& fixed, const FunctionImpls& funcs)
    : fixed_(fixed), funcs_(funcs) {
  for (const auto& a : grid.axes()) names_.push_back(a.name);
  for (const auto& t : e.terms()) {
    Term out;
    out.coeff = eval_coeff(t.coeff, fixed);
    for (const auto& f : t.mono) {
      int axis = f.atom.kind == Atom::Kind::Coordinate ? grid.axis_of(f.atom.name) : -1;
      if (axis < 0) {
        out.general.push_back(Expr::symbol(f.atom).pow(f.exponent));
        continue;
      }
      double ex = eval_coeff(f.exponent, fixed);
      double rounded = std::round(ex);
      bool integral = std::abs(ex - rounded) < 1e-12 && std::abs(rounded) < 64;
      out.powers.push_back({axis, ex, static_cast<int>(rounded), integral});
    }
    terms_.push_back(std::move(out));
  }
}

double CompiledExpr::operator()(const double* point) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& p : t.powers) v *= p.is_integral ? ipow(point[p.axis], p.integral) : std::pow(point[p.axis], p.exponent);
    if (!t.general.empty()) {
      Assignment a = fixed_;
      for (std::size_t i = 0; i < names_.size(); ++i) a[names_[i]] = point[i];
      for (const auto& g : t.general) v *= eval_numeric(g, a, funcs_);
    }
    sum += v;
  }
  return sum;
}

NumericField NumericField::sample(const Grid& grid, const Expr& e, const Assignment& fixed, const FunctionImpls& funcs) {
  NumericField f{grid, std::vector<double>(grid.size())};
  CompiledExpr c(e, grid, fixed, funcs);
  parallel_for(grid.size(), [&](std::size_t b, std::size_t end, std::size_t) {
    for (std::size_t i = b; i < end; ++i) f.values[i] = c(grid.point(i).data());
  });
  for (double v : f.values)
    if (!std::isfinite(v)) throw DomainError("non-finite sample of " + e.render());
  return f;
}

double NumericField::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double NumericField::interpolate(const std::vector<double>& p) const {
  const std::size_t d = grid.dims();
  std::vector<std::size_t> base(d);
  std::vector<std::array<double, 4>> w(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Axis& a = grid.axes()[i];
    double u = (p[i] - a.lo) / a.step();
    if (u < -1e-9 || u > static_cast<double>(a.n - 1) + 1e-9)
      throw FlowLeftDomain("point leaves the grid along " + a.name);
    auto i0 = static_cast<long>(std::floor(u)) - 1;
    i0 = std::clamp<long>(i0, 0, static_cast<long>(a.n) - 4);
    base[i] = static_cast<std::size_t>(i0);
    cubic_weights(u - static_cast<double>(i0), w[i].data());
  }
  double sum = 0;
  std::size_t corners = std::size_t{1} << (2 * d);
  for (std::size_t c = 0; c < corners; ++c) {
    double weight = 1;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t k = (c >> (2 * i)) & 3;
      weight *= w[i][k];
      flat += (base[i] + k) * grid.stride(i);
    }
    sum += weight * values[flat];
  }
  return sum;
}

NumericField NumericField::restricted(const Grid& sub) const {
  if (sub.dims() != grid.dims()) throw Error("restriction changes the dimension");
  std::vector<std::size_t> offset(grid.dims());
  for (std::size_t i = 0; i < grid.dims(); ++i) {
    const Axis &a = grid.axes()[i], &s = sub.axes()[i];
    double k = (s.lo - a.lo) / a.step();
    if (s.name != a.name || std::abs(k - std::round(k)) > 1e-9 || std::abs(s.step() - a.step()) > 1e-12 * a.step())
      throw Error("sub-grid is not aligned along " + a.name);
    offset[i] = static_cast<std::size_t>(std::llround(k));
  }
  NumericField out{sub, std::vector<double>(sub.size())};
  for (std::size_t j = 0; j < sub.size(); ++j) {
    auto idx = sub.unflatten(j);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] += offset[i];
    out.values[j] = values[grid.flatten(idx)];
  }
  return out;
}

namespace {

struct TermPlan {
  CompiledExpr coeff;
  std::vector<std::pair<long, double>> taps;
};

std::size_t halo_of(const DiffOperator& S) {
  std::size_t h = 0;
  for (const auto& [m, c] : S.terms())
    for (const auto& [v, k] : m) h = std::max<std::size_t>(h, k > 2 ? 2 : 1);
  return h;
}

std::vector<TermPlan> plan(const DiffOperator& S, const Grid& grid, const Assignment& fixed, const FunctionImpls& funcs) {
  std::vector<TermPlan> plans;
  for (const auto& [m, c] : S.terms()) {
    std::vector<std::pair<long, double>> taps{{0, 1.0}};
    for (const auto& [v, k] : m) {
      int axis = grid.axis_of(v);
      if (axis < 0) throw GridTooCoarse("operator differentiates inactive coordinate " + v);
      Stencil s = central(k, grid.axes()[axis].step());
      std::vector<std::pair<long, double>> next;
      for (const auto& [off, w] : taps)
        for (const auto& [o, ws] : s.taps) next.emplace_back(off + o * static_cast<long>(grid.stride(axis)), w * ws);
      taps = std::move(next);
    }
    plans.push_back({CompiledExpr(c, grid, fixed, funcs), std::move(taps)});
  }
  return plans;
}

}  // namespace

NumericField fd_apply(const DiffOperator& S, const NumericField& f, const Assignment& fixed, const FunctionImpls& funcs) {
  const Grid& g = f.grid;
  std::size_t H = std::max<std::size_t>(1, halo_of(S));
  for (const auto& a : g.axes())
    if (a.n < 2 * H + 3) throw GridTooCoarse("axis " + a.name + " too short for the stencil");
  auto plans = plan(S, g, fixed, funcs);
  Grid out_grid = g.shrunk(H);
  NumericField out{out_grid, std::vector<double>(out_grid.size())};
  parallel_for(out_grid.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t j = b; j < e; ++j) {
      auto idx = out_grid.unflatten(j);
      for (auto& i : idx) i += H;
      std::size_t flat = g.flatten(idx);
      auto p = g.point(flat);
      double sum = 0;
      for (const auto& tp : plans) {
        double d = 0;
        for (const auto& [off, w] : tp.taps) d += w * f.values[static_cast<std::size_t>(static_cast<long>(flat) + off)];
        sum += tp.coeff(p.data()) * d;
      }
      out.values[j] = sum;
    }
  });
  return out;
}

double fd_apply_at(const DiffOperator& D, const std::function<double(const Assignment&)>& u,
                   const Assignment& point, double h) {
  double sum = 0;
  for (const auto& [m, c] : D.terms()) {
    std::vector<std::pair<Assignment, double>> taps{{point, 1.0}};
    for (const auto& [v, k] : m) {
      if (!point.count(v)) throw MissingBinding("no value for " + v);
      Stencil s = five_point(k, h);
      std::vector<std::pair<Assignment, double>> next;
      for (const auto& [p, w] : taps)
        for (const auto& [o, ws] : s.taps) {
          Assignment q = p;
          q[v] += o * h;
          next.emplace_back(std::move(q), w * ws);
        }
      taps = std::move(next);
    }
    double d = 0;
    for (const auto& [p, w] : taps) d += w * u(p);
    sum += eval_numeric(c, point) * d;
  }
  return sum;
}

FlowResult flow(const Generator& X, const NumericField& f, double eps, const Assignment& fixed, std::size_t margin,
                const FunctionImpls& funcs) {
  const Grid& g = f.grid;
  const std::size_t d = g.dims();
  std::vector<std::optional<CompiledExpr>> a(d);
  for (const auto& [v, c] : X.coeffs()) {
    int axis = g.axis_of(v);
    if (axis < 0) throw Unsupported("flow moves inactive coordinate " + v);
    a[static_cast<std::size_t>(axis)].emplace(c, g, fixed, funcs);
  }
  CompiledExpr phi(X.multiplier(), g, fixed, funcs);

  constexpr int kSteps = 64;
  auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
    for (std::size_t i = 0; i < d; ++i) dy[i] = a[i] ? (*a[i])(y.data()) : 0.0;
    dy[d] = phi(y.data());
  };
  auto integrate = [&](std::vector<double> y, int steps) {
    double h = eps / steps;
    std::vector<double> k1(d + 1), k2(d + 1), k3(d + 1), k4(d + 1), tmp(d + 1);
    for (int s = 0; s < steps; ++s) {
      rhs(y, k1);
      for (std::size_t i = 0; i <= d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i <= d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i <= d; ++i) tmp[i] = y[i] + h * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i <= d; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return y;
  };

  FlowResult out;
  out.field = NumericField{g, std::vector<double>(g.size())};
  out.valid.assign(g.size(), 1);
  std::size_t workers = 17;
  std::vector<double> err(workers, 0.0);
  std::vector<std::string> escaped(workers);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t w) {
    for (std::size_t j = b; j < e; ++j) {
      std::vector<double> y = g.point(j);
      y.push_back(0.0);
      std::vector<double> fine = integrate(y, kSteps);
      std::vector<double> coarse = integrate(y, kSteps / 2);
      for (std::size_t i = 0; i <= d; ++i) err[w] = std::max(err[w], std::abs(fine[i] - coarse[i]) / 15);
      std::vector<double> p(fine.begin(), fine.begin() + static_cast<long>(d));
      bool inside = true;
      for (std::size_t i = 0; i < d; ++i) {
        const Axis& ax = g.axes()[i];
        if (p[i] < ax.lo || p[i] > ax.hi) {
          inside = false;
          p[i] = std::clamp(p[i], ax.lo, ax.hi);
        }
      }
      if (!inside) {
        out.valid[j] = 0;
        auto idx = g.unflatten(j);
        bool deep = true;
        for (std::size_t i = 0; i < d; ++i) deep = deep && idx[i] >= margin && idx[i] + margin < g.axes()[i].n;
        if (deep && escaped[w].empty()) {
          std::ostringstream os;
          os << "characteristic from point " << j << " leaves the grid hull at eps = " << eps;
          escaped[w] = os.str();
        }
      }
      out.field.values[j] = f.interpolate(p) * std::exp(fine[d]);
    }
  });
  for (const auto& s : escaped)
    if (!s.empty()) throw FlowLeftDomain(s);
  for (double e : err) out.max_step_error = std::max(out.max_step_error, e);
  out.invalid_points = static_cast<std::size_t>(std::count(out.valid.begin(), out.valid.end(), 0));
  return out;
}

double baseline_residual(const DiffOperator& S, const NumericField& f, const Assignment& fixed) {
  return fd_apply(S, f, fixed).max_abs();
}

double invariance_residual(const DiffOperator& S, const Generator& X, const NumericField& f, double eps,
                           const Assignment& fixed) {
  FlowResult fr = flow(X, f, eps, fixed);
  NumericField r = fd_apply(S, fr.field, fixed);
  const Grid& g = f.grid;
  std::size_t H = std::max<std::size_t>(1, halo_of(S));
  double m = 0;
  for (std::size_t j = 0; j < r.grid.size(); ++j) {
    auto idx = r.grid.unflatten(j);
    for (auto& i : idx) i += H;
    bool ok = true;
    std::size_t box = 1;
    for (std::size_t i = 0; i < g.dims(); ++i) box *= 2 * H + 1;
    for (std::size_t c = 0; c < box && ok; ++c) {
      std::size_t rest = c, flat = 0;
      for (std::size_t i = 0; i < g.dims(); ++i) {
        std::size_t k = rest % (2 * H + 1);
        rest /= 2 * H + 1;
        flat += (idx[i] + k - H) * g.stride(i);
      }
      ok = fr.valid[flat] != 0;
    }
    if (ok) m = std::max(m, std::abs(r.values[j]));
  }
  return m;
}

ComplexField mass_transform(const NumericField& f, double m) {
  const Grid& g = f.grid;
  int z = g.axis_of("zeta");
  if (z < 0) throw Error("mass transform needs a zeta axis");
  const Axis& za = g.axes()[static_cast<std::size_t>(z)];
  ComplexField out{g.without("zeta"), {}};
  out.values.assign(out.grid.size(), {0.0, 0.0});
  const double h = za.step();
  const std::size_t zs = g.stride(static_cast<std::size_t>(z));
  for (std::size_t j = 0; j < out.grid.size(); ++j) {
    auto idx = out.grid.unflatten(j);
    std::vector<std::size_t> full;
    for (std::size_t i = 0, k = 0; i < g.dims(); ++i) full.push_back(static_cast<int>(i) == z ? 0 : idx[k++]);
    std::size_t base = g.flatten(full);
    double first = f.values[base], last = f.values[base + (za.n - 1) * zs];
    if (std::abs(first) >= 1e-8 || std::abs(last) >= 1e-8)
      throw NoDecay("field does not decay at the zeta edges (|f| = " + std::to_string(std::max(std::abs(first), std::abs(last))) + ")");
    std::complex<double> sum = 0;
    for (std::size_t k = 0; k < za.n; ++k) {
      double w = (k == 0 || k + 1 == za.n) ? 0.5 : 1.0;
      double zeta = za.at(k);
      sum += w * f.values[base + k * zs] * std::polar(1.0, -m * zeta);
    }
    out.values[j] = sum * h / std::sqrt(2 * std::numbers::pi);
  }
  return out;
}

namespace {

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(buf, 8);
}

template <typename T>
T get(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw Error("truncated field snapshot");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void save_field(const NumericField& f, const std::string& path, const std::string& note) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  put<std::uint64_t>(os, f.grid.dims());
  for (const auto& a : f.grid.axes()) {
    int code = rank_of(a.name);
    if (code >= static_cast<int>(kCodes.size())) throw Error("axis " + a.name + " has no snapshot code");
    put<std::uint64_t>(os, static_cast<std::uint64_t>(code));
    put<double>(os, a.lo);
    put<double>(os, a.hi);
    put<double>(os, a.step());
    put<std::uint64_t>(os, a.n);
  }
  for (double v : f.values) put<double>(os, v);

  std::ofstream meta(path + ".meta");
  if (!meta) throw Error("cannot write " + path + ".meta");
  meta << "format: confsym field snapshot, version 1\n";
  meta << "layout: u64 axis count; per axis u64 code, f64 lo, f64 hi, f64 step, u64 count; f64 values row-major; "
          "little-endian\n";
  meta << "codes: t=0 r=1 zeta=2 g=3\n";
  std::string coords;
  for (const auto& a : f.grid.axes()) coords += (coords.empty() ? "" : " ") + a.name;
  meta << "coordinates: " << coords << "\n";
  for (const auto& a : f.grid.axes())
    meta << "axis " << a.name << ": lo " << a.lo << " hi " << a.hi << " step " << a.step() << " count " << a.n << "\n";
  meta << "values: " << f.values.size() << "\n";
  if (!note.empty()) meta << "note: " << note << "\n";
}

NumericField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  auto dims = get<std::uint64_t>(is);
  if (dims > kCodes.size()) throw Error("snapshot has " + std::to_string(dims) + " axes");
  std::vector<Axis> axes;
  for (std::uint64_t i = 0; i < dims; ++i) {
    auto code = get<std::uint64_t>(is);
    if (code >= kCodes.size()) throw Error("unknown axis code " + std::to_string(code));
    Axis a;
    a.name = kCodes[code];
    a.lo = get<double>(is);
    a.hi = get<double>(is);
    get<double>(is);
    a.n = get<std::uint64_t>(is);
    axes.push_back(a);
  }
  NumericField f{Grid(std::move(axes)), {}};
  f.values.resize(f.grid.size());
  for (auto& v : f.values) v = get<double>(is);
  return f;
}

}  // namespace confsym
