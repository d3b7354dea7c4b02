#pragma once

#include <Eigen/Dense>

#include "isopar/chart.hpp"
#include "isopar/tensor_array.hpp"

// Connection and curvature of the metric at a point.
//
// Index conventions, fixed once for the whole project:
//   * gamma(k,i,j) = Gamma^k_ij, symmetric in (i,j);
//   * riemann(i,j,k,l) = R_ijkl = < R(d_i,d_j) d_k , d_l >
//     with R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y];
//   * ricci(j,k) = g^il R_ijkl, so Ric(Y,Y) is the trace of X -> R(X,Y)Y.
// With this convention a conformally flat metric has
// Riemann = -(Schouten kn g), so the Weyl tensor is Riemann + (P kn g).
namespace isopar {

struct ChristoffelField {
  int n = 0;
  Tensor3 gamma;  // gamma(k,i,j) = Gamma^k_ij
};

struct CurvatureBundle {
  int n = 0;
  Tensor4 riemann;       // fully lowered R_ijkl
  Eigen::MatrixXd ricci; // Ric_jk
  double scalar = 0.0;   // g^jk Ric_jk
};

// Curvature endomorphism data of the normal direction d_n.
struct JacobiOperator {
  // coordinate(i,j) = h^2 (Gamma^j_nn,i - Gamma^j_in,n
  //                        + Gamma^k_nn Gamma^j_ik - Gamma^k_in Gamma^j_nk)
  // for i,j != n and zero otherwise; equals the lowered pairing
  // < R(d_i, d_n) d_n , d_j >.
  Eigen::MatrixXd coordinate;
  // Endomorphism X -> R(X, nu) nu of the unit normal nu = h^-1 d_n, expressed
  // in the g-orthonormal frame {h^-1 d_i}; symmetric, trace = Ric(nu, nu).
  Eigen::MatrixXd orthonormal;
};

// Closed-form evaluation of the four Christoffel families of the metric:
//   Gamma^i_ii = (d_in - 1) w(x_i)        Gamma^k_ij = 0   (i,j,k distinct)
//   Gamma^i_ij = (d_jn - 1) w(x_j)        Gamma^k_ii = (1 - d_kn) w(x_k)
// with w(x) = pi sin(pi x)/(2 + cos(pi x)) and lower-index symmetry.
ChristoffelField christoffel_closed(const Point& p);

// Independent route: Gamma^k_ij = 1/2 g^kl (g_jl,i + g_li,j - g_ij,l) with
// the metric derivatives taken from the analytic factor jet.
ChristoffelField christoffel_general(const Point& p);
ChristoffelField christoffel_general(const ConformalJet& jet);

// Test oracle: same contraction but with all metric derivatives replaced by
// central finite differences of step eps.
ChristoffelField christoffel_fd(const Point& p, double eps);

// Lowered Riemann tensor, Ricci, scalar. The Point overload uses the
// closed-form Gamma families and their analytic derivatives; the jet overload
// derives everything from an arbitrary conformal-factor jet (order >= 2;
// order 3 required only by cotton()).
CurvatureBundle riemann(const Point& p);
CurvatureBundle riemann(const ConformalJet& jet);

JacobiOperator jacobi_operator(const Point& p);

// Ric(d_n, d_n): the Ricci tensor paired with the coordinate normal field.
// On lattice base points this equals pi^2 (1 - n + 4 rho / 3).
double normal_ricci_coordinate(const Point& p);

// Ric(nu, nu) for the unit normal nu = h^-1 d_n (= the coordinate value
// scaled by h^-2); this is the quantity that enters the Riccati trace.
double normal_ricci_unit(const Point& p);

// Weyl tensor (n >= 4): Riemann + (Schouten kn g). Vanishes identically for
// this metric; kept as the conformal-flatness certificate.
Tensor4 weyl(const Point& p);
Tensor4 weyl(const ConformalJet& jet);

// Cotton tensor (n = 3): C_ijk = nabla_i P_jk - nabla_j P_ik. Needs third
// derivatives of the factor. Vanishes identically for this metric.
Tensor3 cotton(const Point& p);
Tensor3 cotton(const ConformalJet& jet);

}  // namespace isopar
