#pragma once

#include <Eigen/Dense>

#include "isopar/tensor_array.hpp"

// The ambient chart: R^n carrying the conformally flat metric
//
//   g_ij(x) = h(x)^2 delta_ij,   h(x) = prod_{i=1}^{n-1} (2 + cos(pi x_i)).
//
// A single global coordinate patch; the torus quotient shows up only through
// the exact 2-periodicity of h. All functions here are pure and thread-safe.
namespace isopar {

struct Point {
  Eigen::VectorXd x;

  int dim() const { return static_cast<int>(x.size()); }
};

inline Point make_point(std::initializer_list<double> coords) {
  Point p;
  p.x = Eigen::VectorXd(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) p.x[i++] = c;
  return p;
}

struct TangentVector {
  Point base;
  Eigen::VectorXd components;  // coefficients in the coordinate frame d_1..d_n
};

// Value and partial derivatives of the conformal factor at a point.
// Orders above `order` are zero-filled (they are never "missing": grad/hess/
// third always have full shape, with zeros past the requested order).
struct ConformalJet {
  int order = 0;        // highest derivative order actually populated (0..3)
  double value = 1.0;   // h(x) >= 1
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  Tensor3 third;

  int dim() const { return static_cast<int>(grad.size()); }
};

struct MetricValue {
  Eigen::MatrixXd g;      // h^2 * I
  Eigen::MatrixXd g_inv;  // h^-2 * I
  double det = 1.0;       // h^(2n)
};

enum class IsometryKind { reflection, translation };

// Reflection(i): x_i -> -x_i.  Translation(i): x_i -> x_i + 2.
// Axis indices are 0-based.
struct Isometry {
  IsometryKind kind;
  int axis;
};

// Throws std::invalid_argument unless p has dimension >= 2 and all finite.
void check_point(const Point& p);

// h(p).
double conformal_factor(const Point& p);

// Analytic jet of h up to `order` in {0,1,2,3}; closed-form derivatives of
// the trigonometric product (no differencing anywhere on this path).
ConformalJet factor_jet(const Point& p, int order);

// Jet of the constant factor h == 1 (the flat-metric stub used in tests of
// the curvature machinery).
ConformalJet unit_factor_jet(int n, int order = 3);

MetricValue metric_at(const Point& p);

// Metric value determined by a factor jet (only jet.value is used).
MetricValue metric_from_jet(const ConformalJet& jet);

// g_p(v, w) and |v|_g for coordinate-frame component vectors at p.
double metric_dot(const Point& p, const Eigen::VectorXd& v, const Eigen::VectorXd& w);
double metric_norm(const Point& p, const Eigen::VectorXd& v);

Point apply_isometry(const Isometry& iso, const Point& p);

// The (constant) differential of an isometry as an n x n matrix.
Eigen::MatrixXd isometry_differential(const Isometry& iso, int n);

// rho = number of even entries among the first n-1 coordinates. Requires the
// first n-1 coordinates to be integers within `tol`; rejects otherwise
// (the count is only meaningful on the lattice set Omega).
int count_even_entries(const Point& p, double tol = 1e-9);

// True when the first n-1 coordinates are integers within `tol`.
bool is_lattice_base(const Point& p, double tol = 1e-9);

}  // namespace isopar
