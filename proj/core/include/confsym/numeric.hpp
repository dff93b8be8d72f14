#pragma once

// Floating-point oracle: fields sampled on rectangular grids, finite
// differences, one-parameter flows and the mass transform.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "confsym/expr.hpp"
#include "confsym/operators.hpp"

namespace confsym {

struct Axis {
  std::string name;
  double lo = 1;
  double hi = 2;
  std::size_t n = 65;
  double step() const { return (hi - lo) / static_cast<double>(n - 1); }
  double at(std::size_t i) const { return lo + step() * static_cast<double>(i); }
};

/// Row-major grid over active coordinates, kept in the order t r zeta g.
class Grid {
 public:
  Grid() = default;
  /// Throws GridTooCoarse for fewer than 16 points or a non-positive step.
  explicit Grid(std::vector<Axis> axes);
  /// Same range and step on every named coordinate; n = (hi - lo)/h + 1.
  static Grid uniform(const std::vector<std::string>& names, double lo, double hi, double h);

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  /// Axis position of a coordinate, or -1.
  int axis_of(const std::string& name) const;
  bool active(const std::string& name) const { return axis_of(name) >= 0; }

  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::vector<std::size_t>& idx) const;
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  std::vector<double> point(std::size_t flat) const;

  /// Throws DomainError when t, zeta or g start below 0.5.
  void require_safe_domain() const;
  /// Drop `margin` points from both ends of every axis. Derived grids may
  /// have fewer than 16 points.
  Grid shrunk(std::size_t margin) const;
  /// Remove one axis.
  Grid without(const std::string& name) const;

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  struct Derived {};
  Grid(std::vector<Axis> axes, Derived);
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

struct NumericField {
  Grid grid;
  std::vector<double> values;

  /// Sample e at every grid point; `fixed` supplies parameters and inactive
  /// coordinates. Throws DomainError on a non-finite sample.
  static NumericField sample(const Grid& grid, const Expr& e, const Assignment& fixed = {},
                             const FunctionImpls& funcs = {});
  double max_abs() const;
  /// Tensor-product cubic interpolation; throws FlowLeftDomain outside the hull.
  double interpolate(const std::vector<double>& p) const;
  /// Restriction to a sub-grid whose points lie on this grid.
  NumericField restricted(const Grid& sub) const;
};

/// Expression compiled for repeated evaluation at grid points. Coordinates
/// are read from the point vector in grid order; everything else from
/// `fixed`.
class CompiledExpr {
 public:
  CompiledExpr(const Expr& e, const Grid& grid, const Assignment& fixed, const FunctionImpls& funcs = {});
  double operator()(const double* point) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Power {
    int axis;
    double exponent;
    int integral;
    bool is_integral;
  };
  struct Term {
    double coeff;
    std::vector<Power> powers;
    std::vector<Expr> general;
  };
  std::vector<Term> terms_;
  std::vector<std::string> names_;
  Assignment fixed_;
  FunctionImpls funcs_;
};

/// Second-order central differences; the result lives on the grid shrunk by
/// the stencil half-width. Throws GridTooCoarse when S differentiates an
/// inactive coordinate or an order above 4.
NumericField fd_apply(const DiffOperator& S, const NumericField& f, const Assignment& fixed = {},
                      const FunctionImpls& funcs = {});

/// Value of D u at one point from five-point central stencils (exact on
/// polynomials of degree <= 4 in each variable). Orders up to 2.
double fd_apply_at(const DiffOperator& D, const std::function<double(const Assignment&)>& u,
                   const Assignment& point, double h);

struct FlowResult {
  NumericField field;
  /// Points whose characteristic stayed inside the grid hull.
  std::vector<char> valid;
  std::size_t invalid_points = 0;
  /// Largest RK4 step-doubling difference along the characteristics.
  double max_step_error = 0;
};

/// exp(eps X) f: characteristics of the vector-field part by RK4 with step
/// eps/64, multiplier integrated along them, cubic resampling. Points whose
/// characteristic leaves the hull are marked invalid; throws FlowLeftDomain
/// when that happens more than `margin` points away from the boundary.
FlowResult flow(const Generator& X, const NumericField& f, double eps, const Assignment& fixed = {},
                std::size_t margin = 4, const FunctionImpls& funcs = {});

/// Max-norm of fd_apply(S, f) over the interior.
double baseline_residual(const DiffOperator& S, const NumericField& f, const Assignment& fixed = {});

/// Max-norm of fd_apply(S, flow(X, f, eps)) over points whose stencil only
/// touches valid flowed values.
double invariance_residual(const DiffOperator& S, const Generator& X, const NumericField& f, double eps,
                           const Assignment& fixed = {});

struct ComplexField {
  Grid grid;  // empty grid (dims 0) holds a single value
  std::vector<std::complex<double>> values;
};

/// (1/sqrt(2 pi)) int dzeta exp(-i m zeta) f by the trapezoid rule over the
/// zeta axis. Throws NoDecay when |f| >= 1e-8 at a zeta edge.
ComplexField mass_transform(const NumericField& f, double m);

/// Binary snapshot: u64 axis count, then per axis u64 coordinate code
/// (t=0 r=1 zeta=2 g=3), f64 lo, f64 hi, f64 step, u64 count; then row-major
/// f64 values, all little-endian. A text sidecar `path + ".meta"` describes
/// the layout.
void save_field(const NumericField& f, const std::string& path, const std::string& note = "");
NumericField load_field(const std::string& path);

}  // namespace confsym
