#include "isopar/chart.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isopar/trig.hpp"

namespace isopar {

void check_point(const Point& p) {
  if (p.dim() < 2)
    throw std::invalid_argument("point dimension must be >= 2, got " +
                                std::to_string(p.dim()));
  if (!p.x.allFinite())
    throw std::invalid_argument("point has non-finite coordinates");
}

double conformal_factor(const Point& p) {
  check_point(p);
  const int n = p.dim();
  double h = 1.0;
  for (int i = 0; i < n - 1; ++i) h *= trig::factor(p.x[i]);
  return h;
}

ConformalJet factor_jet(const Point& p, int order) {
  check_point(p);
  if (order < 0 || order > 3)
    throw std::invalid_argument("factor_jet order must be in {0,1,2,3}, got " +
                                std::to_string(order));
  const int n = p.dim();

  // h is a product of single-variable factors, so every partial is h times a
  // product of per-coordinate ratios f^(m)(x_i)/f(x_i); the last coordinate
  // never appears (f_n == 1).
  Eigen::MatrixXd ratio = Eigen::MatrixXd::Zero(n, 4);
  ratio.col(0).setOnes();
  double h = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    const double xi = p.x[i];
    h *= trig::factor(xi);
    ratio(i, 1) = trig::factor_ratio1(xi);
    ratio(i, 2) = trig::factor_ratio2(xi);
    ratio(i, 3) = trig::factor_ratio3(xi);
  }

  ConformalJet jet;
  jet.order = order;
  jet.value = h;
  jet.grad = Eigen::VectorXd::Zero(n);
  jet.hess = Eigen::MatrixXd::Zero(n, n);
  jet.third = Tensor3(n);

  if (order >= 1) {
    for (int i = 0; i < n - 1; ++i) jet.grad[i] = h * ratio(i, 1);
  }
  if (order >= 2) {
    for (int i = 0; i < n - 1; ++i) {
      jet.hess(i, i) = h * ratio(i, 2);
      for (int j = i + 1; j < n - 1; ++j) {
        jet.hess(i, j) = jet.hess(j, i) = h * ratio(i, 1) * ratio(j, 1);
      }
    }
  }
  if (order >= 3) {
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j)
        for (int k = 0; k < n - 1; ++k) {
          double v = h;
          if (i == j && j == k) {
            v *= ratio(i, 3);
          } else if (i == j) {
            v *= ratio(i, 2) * ratio(k, 1);
          } else if (i == k) {
            v *= ratio(i, 2) * ratio(j, 1);
          } else if (j == k) {
            v *= ratio(j, 2) * ratio(i, 1);
          } else {
            v *= ratio(i, 1) * ratio(j, 1) * ratio(k, 1);
          }
          jet.third(i, j, k) = v;
        }
  }
  return jet;
}

ConformalJet unit_factor_jet(int n, int order) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  ConformalJet jet;
  jet.order = order;
  jet.value = 1.0;
  jet.grad = Eigen::VectorXd::Zero(n);
  jet.hess = Eigen::MatrixXd::Zero(n, n);
  jet.third = Tensor3(n);
  return jet;
}

MetricValue metric_at(const Point& p) {
  const double h = conformal_factor(p);
  const int n = p.dim();
  MetricValue m;
  m.g = (h * h) * Eigen::MatrixXd::Identity(n, n);
  m.g_inv = (1.0 / (h * h)) * Eigen::MatrixXd::Identity(n, n);
  m.det = std::pow(h, 2 * n);
  return m;
}

MetricValue metric_from_jet(const ConformalJet& jet) {
  const int n = jet.dim();
  const double h = jet.value;
  MetricValue m;
  m.g = (h * h) * Eigen::MatrixXd::Identity(n, n);
  m.g_inv = (1.0 / (h * h)) * Eigen::MatrixXd::Identity(n, n);
  m.det = std::pow(h, 2 * n);
  return m;
}

double metric_dot(const Point& p, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  if (v.size() != p.x.size() || w.size() != p.x.size())
    throw std::invalid_argument("tangent component dimension mismatch");
  const double h = conformal_factor(p);
  return h * h * v.dot(w);
}

double metric_norm(const Point& p, const Eigen::VectorXd& v) {
  return std::sqrt(metric_dot(p, v, v));
}

Point apply_isometry(const Isometry& iso, const Point& p) {
  check_point(p);
  if (iso.axis < 0 || iso.axis >= p.dim())
    throw std::invalid_argument("isometry axis " + std::to_string(iso.axis) +
                                " out of range for dimension " +
                                std::to_string(p.dim()));
  Point q = p;
  if (iso.kind == IsometryKind::reflection) {
    q.x[iso.axis] = -q.x[iso.axis];
  } else {
    q.x[iso.axis] += 2.0;
  }
  return q;
}

Eigen::MatrixXd isometry_differential(const Isometry& iso, int n) {
  if (iso.axis < 0 || iso.axis >= n)
    throw std::invalid_argument("isometry axis out of range");
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n);
  if (iso.kind == IsometryKind::reflection) d(iso.axis, iso.axis) = -1.0;
  return d;
}

bool is_lattice_base(const Point& p, double tol) {
  check_point(p);
  for (int i = 0; i < p.dim() - 1; ++i) {
    if (std::abs(p.x[i] - std::nearbyint(p.x[i])) > tol) return false;
  }
  return true;
}

int count_even_entries(const Point& p, double tol) {
  check_point(p);
  int rho = 0;
  for (int i = 0; i < p.dim() - 1; ++i) {
    const double k = std::nearbyint(p.x[i]);
    if (std::abs(p.x[i] - k) > tol)
      throw std::invalid_argument(
          "count_even_entries: coordinate " + std::to_string(i + 1) + " = " +
          std::to_string(p.x[i]) + " is not an integer within tolerance");
    if (std::fmod(std::abs(k), 2.0) == 0.0) ++rho;
  }
  return rho;
}

}  // namespace isopar
