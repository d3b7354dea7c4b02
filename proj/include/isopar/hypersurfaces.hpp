#pragma once

#include <Eigen/Dense>
#include <vector>

#include "isopar/chart.hpp"

// The coordinate-hyperplane foliation F_s = {x_n = s}, leaf shape operators,
// and the Riccati evolution S' = R_(gd) + S^2 of parallel-hypersurface shape
// operators along unit-speed normal geodesics.
//
// Shape-operator sign convention: S_nu X = -(nabla_X nu)^T, so
// <S_nu d_i, d_j> = -<nabla_{d_i} nu, d_j>. Mean curvature is the
// unnormalized trace; norms are Hilbert-Schmidt in a g-orthonormal frame.
namespace isopar {

struct Leaf {
  double s = 0.0;  // the leaf is {x in R^n : x_n = s}
};

struct ShapeState {
  double r = 0.0;           // normal distance from the leaf
  Eigen::MatrixXd S;        // (n-1)x(n-1), parallel-transported orthonormal frame
  double H = 0.0;           // trace(S)
  double hs_norm_sq = 0.0;  // sum of squared entries of S
};

struct ShapeCurve {
  Point base;
  std::vector<ShapeState> states;  // r increasing from 0
};

struct RiccatiConfig {
  double step = 1e-3;        // arc-length step shared with the geodesic
  double blowup_cap = 1e6;   // abort when ||S||_HS exceeds this
  double leaf_tol = 1e-9;    // |x_n - s| tolerance for "point on leaf"
};

// Shape operator of the leaf at p, as an endomorphism of the leaf tangent
// space in the g-orthonormal frame {h^-1 d_a}: entries -h^-1 Gamma^b_an.
// Identically zero for this metric (the leaves are totally geodesic), but
// computed, not assumed. Throws if p is not on the leaf within tol.
Eigen::MatrixXd leaf_shape_operator(const Leaf& leaf, const Point& p,
                                    double tol = 1e-9);

// Eigenvalues of a symmetric shape matrix in nondecreasing order.
// Rejects matrices with asymmetry above 1e-8.
Eigen::VectorXd principal_curvatures(const Eigen::MatrixXd& shape);

// Integrates the matrix Riccati equation dS/dr = R_(gd) + S^2 from the leaf
// through `base`, co-integrated with the unit-speed normal geodesic and the
// parallel transport of an adapted g-orthonormal frame. R_(gd) is the
// curvature endomorphism X -> R(X, gd) gd expressed in the transported frame,
// restricted to the block orthogonal to gd. r_max = 0 yields the single
// initial state. Throws numerical_error on blow-up (message carries the r
// where the cap was exceeded) or non-finite values.
ShapeCurve integrate_riccati(const Point& base, double r_max,
                             const RiccatiConfig& cfg = {});

// dH/dr at r = 0 measured from the flow's own samples (one-sided 4th-order
// stencil; needs at least 5 states).
double mean_curvature_rate_at_start(const ShapeCurve& curve);

// Independent finite-difference oracle for the mean curvature of the
// parallel hypersurface at distance r: shoots unit-speed normal geodesics
// from a +-eps stencil of leaf points around `base`, recovers the immersed
// surface's first/second fundamental forms by central differences (normal
// obtained by g-orthogonalization), and returns the trace of the shape
// operator. Shares no code path with integrate_riccati beyond the geodesic
// integrator.
double parallel_mean_curvature_fd(const Point& base, double r, double eps,
                                  const RiccatiConfig& cfg = {});

struct SweepResult {
  double leaf_s = 0.0;
  double r = 0.0;
  std::vector<Eigen::VectorXd> bases;       // leaf coordinates (n-1 entries)
  std::vector<double> mean_curvature;       // H^r at each base
};

// H^r over the Cartesian grid `axis_values`^(n-1) of base points on the
// leaf. Distinct bases are independent; `jobs` > 1 fans them out to a worker
// pool (the result is identical for any jobs value).
SweepResult sweep_mean_curvature(const Leaf& leaf, int n,
                                 const std::vector<double>& axis_values,
                                 double r, const RiccatiConfig& cfg = {},
                                 int jobs = 1);

}  // namespace isopar
