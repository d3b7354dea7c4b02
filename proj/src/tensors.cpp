#include "isopar/tensors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isopar/trig.hpp"

namespace isopar {

namespace {

// Derivatives of log h at a point: gradient L, Hessian M, third N. The whole
// connection/curvature stack is a function of (h, L, M, N):
//   Gamma^k_ij       = d_jk L_i + d_ik L_j - d_ij L_k
//   d_q Gamma^k_ij   = d_jk M_iq + d_ik M_jq - d_ij M_kq
//   d_pq Gamma^k_ij  = d_jk N_iqp + d_ik N_jqp - d_ij N_kqp
struct LogJet {
  int n = 0;
  double h = 1.0;
  Eigen::VectorXd L;
  Eigen::MatrixXd M;
  Tensor3 N;
};

// Closed-form route: log h = sum_i log(2 + cos(pi x_i)) is separable, so
// L, M, N are carried entirely by the single-variable families
// w, w', w'' (L_i = -w(x_i), M_ii = -w'(x_i), N_iii = -w''(x_i)).
LogJet log_jet_closed(const Point& p) {
  check_point(p);
  const int n = p.dim();
  LogJet lj;
  lj.n = n;
  lj.h = conformal_factor(p);
  lj.L = Eigen::VectorXd::Zero(n);
  lj.M = Eigen::MatrixXd::Zero(n, n);
  lj.N = Tensor3(n);
  for (int i = 0; i < n - 1; ++i) {
    const double xi = p.x[i];
    lj.L[i] = -trig::w(xi);
    lj.M(i, i) = -trig::w_prime(xi);
    lj.N(i, i, i) = -trig::w_second(xi);
  }
  return lj;
}

// Generic route from an arbitrary factor jet (quotient-rule formulas).
LogJet log_jet_generic(const ConformalJet& jet) {
  const int n = jet.dim();
  if (n < 2) throw std::invalid_argument("jet dimension must be >= 2");
  if (!(jet.value > 0.0))
    throw std::invalid_argument("conformal factor must be positive");
  LogJet lj;
  lj.n = n;
  lj.h = jet.value;
  const double h = jet.value;
  lj.L = jet.grad / h;
  lj.M = jet.hess / h - lj.L * lj.L.transpose();
  lj.N = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        lj.N(i, j, k) = jet.third(i, j, k) / h - lj.L[i] * lj.M(j, k) -
                        lj.L[j] * lj.M(i, k) - lj.L[k] * lj.M(i, j) -
                        lj.L[i] * lj.L[j] * lj.L[k];
  return lj;
}

Tensor3 gamma_of(const LogJet& lj) {
  const int n = lj.n;
  Tensor3 g(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(k, i, j) = (j == k ? lj.L[i] : 0.0) + (i == k ? lj.L[j] : 0.0) -
                     (i == j ? lj.L[k] : 0.0);
  return g;
}

// dgamma(q, k, i, j) = d_q Gamma^k_ij
Tensor4 dgamma_of(const LogJet& lj) {
  const int n = lj.n;
  Tensor4 dg(n);
  for (int q = 0; q < n; ++q)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dg(q, k, i, j) = (j == k ? lj.M(i, q) : 0.0) +
                           (i == k ? lj.M(j, q) : 0.0) -
                           (i == j ? lj.M(k, q) : 0.0);
  return dg;
}

// R_ijkl = g_ml (d_i Gamma^m_jk - d_j Gamma^m_ik
//                + Gamma^p_jk Gamma^m_ip - Gamma^p_ik Gamma^m_jp)
CurvatureBundle curvature_of(const LogJet& lj) {
  const int n = lj.n;
  const Tensor3 gam = gamma_of(lj);
  const Tensor4 dgam = dgamma_of(lj);
  const double h2 = lj.h * lj.h;

  CurvatureBundle out;
  out.n = n;
  out.riemann = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double b = dgam(i, l, j, k) - dgam(j, l, i, k);
          for (int p = 0; p < n; ++p)
            b += gam(p, j, k) * gam(l, i, p) - gam(p, i, k) * gam(l, j, p);
          out.riemann(i, j, k, l) = h2 * b;
        }

  out.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += out.riemann(i, j, k, i);
      out.ricci(j, k) = s / h2;
    }
  out.scalar = out.ricci.trace() / h2;
  return out;
}

Eigen::MatrixXd schouten_of(const CurvatureBundle& c, double h) {
  const int n = c.n;
  const double h2 = h * h;
  return (c.ricci -
          (c.scalar * h2 / (2.0 * (n - 1))) * Eigen::MatrixXd::Identity(n, n)) /
         (n - 2);
}

Tensor4 weyl_of(const LogJet& lj) {
  const int n = lj.n;
  const CurvatureBundle c = curvature_of(lj);
  const Eigen::MatrixXd P = schouten_of(c, lj.h);
  const double h2 = lj.h * lj.h;
  // (P kn g)_ijkl with g = h^2 I
  Tensor4 w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double kn = P(i, k) * (j == l ? h2 : 0.0) +
                            P(j, l) * (i == k ? h2 : 0.0) -
                            P(i, l) * (j == k ? h2 : 0.0) -
                            P(j, k) * (i == l ? h2 : 0.0);
          w(i, j, k, l) = c.riemann(i, j, k, l) + kn;
        }
  return w;
}

Tensor3 cotton_of(const LogJet& lj) {
  const int n = lj.n;
  const Tensor3 gam = gamma_of(lj);
  const Tensor4 dgam = dgamma_of(lj);
  const CurvatureBundle c = curvature_of(lj);
  const double h2 = lj.h * lj.h;

  // d_q R_ijkl, assembled from the second Gamma derivatives (N families).
  auto ddgamma = [&](int p, int q, int k, int i, int j) {
    return (j == k ? lj.N(i, q, p) : 0.0) + (i == k ? lj.N(j, q, p) : 0.0) -
           (i == j ? lj.N(k, q, p) : 0.0);
  };

  // Ric_jk = sum_i B^i_ijk with B^m_ijk the bracket of the curvature formula
  // (the h^2 of g_ml cancels against g^il), so d_q Ric_jk = sum_i d_q B^i_ijk.
  Tensor3 dric(n);  // dric(q, j, k) = d_q Ric_jk
  for (int q = 0; q < n; ++q)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
          const int l = i;
          double db = ddgamma(q, i, l, j, k) - ddgamma(q, j, l, i, k);
          for (int p = 0; p < n; ++p)
            db += dgam(q, p, j, k) * gam(l, i, p) + gam(p, j, k) * dgam(q, l, i, p) -
                  dgam(q, p, i, k) * gam(l, j, p) - gam(p, i, k) * dgam(q, l, j, p);
          sum += db;
        }
        dric(q, j, k) = sum;
      }

  Eigen::VectorXd dscalar = Eigen::VectorXd::Zero(n);
  for (int q = 0; q < n; ++q) {
    double tr = 0.0;
    for (int j = 0; j < n; ++j) tr += dric(q, j, j);
    dscalar[q] = tr / h2 - 2.0 * lj.L[q] * c.scalar;
  }

  const Eigen::MatrixXd P = schouten_of(c, lj.h);
  Tensor3 dP(n);  // dP(q, j, k) = d_q P_jk
  for (int q = 0; q < n; ++q)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double dg_scal =
            (j == k) ? (dscalar[q] * h2 + c.scalar * 2.0 * h2 * lj.L[q]) : 0.0;
        dP(q, j, k) = (dric(q, j, k) - dg_scal / (2.0 * (n - 1))) / (n - 2);
      }

  // nabla_i P_jk = d_i P_jk - Gamma^l_ij P_lk - Gamma^l_ik P_jl
  Tensor3 covP(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = dP(i, j, k);
        for (int l = 0; l < n; ++l)
          v -= gam(l, i, j) * P(l, k) + gam(l, i, k) * P(j, l);
        covP(i, j, k) = v;
      }

  Tensor3 cot(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        cot(i, j, k) = covP(i, j, k) - covP(j, i, k);
  return cot;
}

}  // namespace

ChristoffelField christoffel_closed(const Point& p) {
  check_point(p);
  const int n = p.dim();
  ChristoffelField f;
  f.n = n;
  f.gamma = Tensor3(n);
  // w(x_i) for each coordinate; the factor (delta_in - 1) / (1 - delta_kn)
  // zeroes every family that would involve the last coordinate.
  Eigen::VectorXd wx(n);
  for (int i = 0; i < n; ++i) wx[i] = trig::w(p.x[i]);
  const int last = n - 1;
  for (int i = 0; i < n; ++i) {
    if (i != last) f.gamma(i, i, i) = -wx[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (j != last) f.gamma(i, i, j) = f.gamma(i, j, i) = -wx[j];
      if (i != last) f.gamma(i, j, j) = wx[i];
    }
  }
  return f;
}

ChristoffelField christoffel_general(const ConformalJet& jet) {
  const int n = jet.dim();
  if (jet.order < 1)
    throw std::invalid_argument("christoffel_general needs a jet of order >= 1");
  const MetricValue m = metric_from_jet(jet);
  // d_a g_bc = 2 h h_a delta_bc
  auto dmetric = [&](int a, int b, int c) {
    return b == c ? 2.0 * jet.value * jet.grad[a] : 0.0;
  };
  ChristoffelField f;
  f.n = n;
  f.gamma = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += m.g_inv(k, l) * (dmetric(i, j, l) + dmetric(j, l, i) - dmetric(l, i, j));
        f.gamma(k, i, j) = 0.5 * s;
      }
  return f;
}

ChristoffelField christoffel_general(const Point& p) {
  return christoffel_general(factor_jet(p, 1));
}

ChristoffelField christoffel_fd(const Point& p, double eps) {
  check_point(p);
  if (!(eps > 0.0)) throw std::invalid_argument("christoffel_fd needs eps > 0");
  const int n = p.dim();
  const MetricValue m = metric_at(p);

  Tensor3 dg(n);  // dg(a, b, c) = central difference of g_bc along x_a
  for (int a = 0; a < n; ++a) {
    Point pp = p, pm = p;
    pp.x[a] += eps;
    pm.x[a] -= eps;
    const Eigen::MatrixXd gp = metric_at(pp).g;
    const Eigen::MatrixXd gm = metric_at(pm).g;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dg(a, b, c) = (gp(b, c) - gm(b, c)) / (2.0 * eps);
  }

  ChristoffelField f;
  f.n = n;
  f.gamma = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += m.g_inv(k, l) * (dg(i, j, l) + dg(j, l, i) - dg(l, i, j));
        f.gamma(k, i, j) = 0.5 * s;
      }
  return f;
}

CurvatureBundle riemann(const Point& p) { return curvature_of(log_jet_closed(p)); }

CurvatureBundle riemann(const ConformalJet& jet) {
  if (jet.order < 2)
    throw std::invalid_argument("riemann needs a jet of order >= 2");
  return curvature_of(log_jet_generic(jet));
}

JacobiOperator jacobi_operator(const Point& p) {
  const LogJet lj = log_jet_closed(p);
  const int n = lj.n;
  const int nn = n - 1;  // index of the normal coordinate
  const Tensor3 gam = gamma_of(lj);
  const Tensor4 dgam = dgamma_of(lj);
  const double h2 = lj.h * lj.h;

  JacobiOperator op;
  op.coordinate = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      double v = dgam(i, j, nn, nn) - dgam(nn, j, i, nn);
      for (int k = 0; k < n; ++k)
        v += gam(k, nn, nn) * gam(j, i, k) - gam(k, i, nn) * gam(j, nn, k);
      op.coordinate(i, j) = h2 * v;
    }

  // X -> R(X, nu) nu in the g-orthonormal frame: each slot scales by h^-1.
  const CurvatureBundle c = curvature_of(lj);
  op.orthonormal = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b)
      op.orthonormal(a, b) = c.riemann(a, nn, nn, b) / (h2 * h2);
  return op;
}

double normal_ricci_coordinate(const Point& p) {
  const CurvatureBundle c = riemann(p);
  return c.ricci(c.n - 1, c.n - 1);
}

double normal_ricci_unit(const Point& p) {
  const double h = conformal_factor(p);
  return normal_ricci_coordinate(p) / (h * h);
}

Tensor4 weyl(const Point& p) {
  check_point(p);
  if (p.dim() < 4)
    throw std::invalid_argument("weyl is defined for n >= 4; use cotton for n = 3");
  return weyl_of(log_jet_closed(p));
}

Tensor4 weyl(const ConformalJet& jet) {
  if (jet.dim() < 4)
    throw std::invalid_argument("weyl is defined for n >= 4; use cotton for n = 3");
  if (jet.order < 2)
    throw std::invalid_argument("weyl needs a jet of order >= 2");
  return weyl_of(log_jet_generic(jet));
}

Tensor3 cotton(const Point& p) {
  check_point(p);
  if (p.dim() != 3)
    throw std::invalid_argument("cotton is defined for n = 3, got n = " +
                                std::to_string(p.dim()));
  return cotton_of(log_jet_closed(p));
}

Tensor3 cotton(const ConformalJet& jet) {
  if (jet.dim() != 3)
    throw std::invalid_argument("cotton is defined for n = 3");
  if (jet.order < 3)
    throw std::invalid_argument("cotton needs a jet of order 3");
  return cotton_of(log_jet_generic(jet));
}

}  // namespace isopar
