#include "isopar/geodesics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isopar/errors.hpp"
#include "isopar/tensors.hpp"

namespace isopar {

namespace {

Eigen::VectorXd geodesic_accel(const Tensor3& gam, const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += gam(k, i, j) * v[i] * v[j];
    a[k] = -s;
  }
  return a;
}

// dX_c^k = -Gamma^k_ij v^i X_c^j for every frame column c.
Eigen::MatrixXd frame_deriv(const Tensor3& gam, const Eigen::VectorXd& v,
                            const Eigen::MatrixXd& F) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd dF = Eigen::MatrixXd::Zero(n, F.cols());
  for (int c = 0; c < F.cols(); ++c)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += gam(k, i, j) * v[i] * F(j, c);
      dF(k, c) = -s;
    }
  return dF;
}

struct CoupledState {
  Eigen::VectorXd x, v;
  Eigen::MatrixXd F;  // 0 columns when no frame is transported
};

CoupledState rhs(const CoupledState& s) {
  if (!s.x.allFinite())
    throw numerical_error("geodesic integration reached a non-finite position");
  const Tensor3 gam = christoffel_closed(Point{s.x}).gamma;
  CoupledState d;
  d.x = s.v;
  d.v = geodesic_accel(gam, s.v);
  d.F = s.F.cols() > 0 ? frame_deriv(gam, s.v, s.F)
                       : Eigen::MatrixXd(s.x.size(), 0);
  return d;
}

CoupledState rk4_step(const CoupledState& s, double dt) {
  auto advance = [&](const CoupledState& k, double a) {
    CoupledState t;
    t.x = s.x + a * k.x;
    t.v = s.v + a * k.v;
    t.F = s.F.cols() > 0 ? (s.F + a * k.F).eval() : s.F;
    return t;
  };
  const CoupledState k1 = rhs(s);
  const CoupledState k2 = rhs(advance(k1, dt / 2));
  const CoupledState k3 = rhs(advance(k2, dt / 2));
  const CoupledState k4 = rhs(advance(k3, dt));
  CoupledState out;
  out.x = s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.v = s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.F = s.F.cols() > 0
              ? (s.F + dt / 6.0 * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F)).eval()
              : s.F;
  return out;
}

// Step sizes covering (0, t_end] with the configured step; the final step is
// shortened to land on t_end.
std::vector<double> step_plan(double t_end, double step) {
  std::vector<double> plan;
  double t = 0.0;
  while (t_end - t > step * 1e-12) {
    const double dt = std::min(step, t_end - t);
    plan.push_back(dt);
    t += dt;
  }
  return plan;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> geodesic_rhs(const GeodesicState& s) {
  check_point(s.position);
  if (s.velocity.size() != s.position.x.size())
    throw std::invalid_argument("velocity dimension mismatch");
  const Tensor3 gam = christoffel_closed(s.position).gamma;
  return {s.velocity, geodesic_accel(gam, s.velocity)};
}

GeodesicTrajectory integrate_geodesic(const Point& p0, const Eigen::VectorXd& v0,
                                      double t_end, const IntegratorConfig& cfg) {
  check_point(p0);
  if (v0.size() != p0.x.size())
    throw std::invalid_argument("initial velocity dimension mismatch");
  if (!v0.allFinite())
    throw std::invalid_argument("initial velocity has non-finite components");
  if (!(t_end > 0.0))
    throw std::invalid_argument("t_end must be > 0");
  if (!(cfg.step > 0.0))
    throw std::invalid_argument("integrator step must be > 0");
  if (t_end / cfg.step > 1e8)
    throw std::invalid_argument("step too small for requested t_end");
  const double speed_sq0 = metric_dot(p0, v0, v0);
  if (!(speed_sq0 > 0.0))
    throw std::invalid_argument("initial velocity must have positive g-norm");

  CoupledState s;
  s.x = p0.x;
  s.v = cfg.normalize_initial ? (v0 / std::sqrt(speed_sq0)).eval() : v0;
  s.F = Eigen::MatrixXd(p0.dim(), 0);

  GeodesicTrajectory traj;
  traj.meta.step = cfg.step;
  traj.states.push_back({0.0, Point{s.x}, s.v});

  double t = 0.0;
  for (double dt : step_plan(t_end, cfg.step)) {
    s = rk4_step(s, dt);
    t += dt;
    if (!s.x.allFinite() || !s.v.allFinite())
      throw numerical_error("geodesic state became non-finite at t = " +
                            std::to_string(t));
    traj.states.push_back({t, Point{s.x}, s.v});
  }
  traj.meta.steps = static_cast<int>(traj.states.size()) - 1;
  traj.meta.max_speed_drift = speed_drift(traj);
  return traj;
}

GeodesicTrajectory parallel_transport(const GeodesicTrajectory& traj,
                                      const Eigen::MatrixXd& initial_frame) {
  if (traj.states.empty())
    throw std::invalid_argument("cannot transport along an empty trajectory");
  const GeodesicState& s0 = traj.states.front();
  const int n = s0.position.dim();
  if (initial_frame.rows() != n || initial_frame.cols() != n)
    throw std::invalid_argument("initial frame must be n x n");

  const Eigen::MatrixXd g0 = metric_at(s0.position).g;
  const Eigen::MatrixXd gram = initial_frame.transpose() * g0 * initial_frame;
  const double gram_dev =
      (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (gram_dev > 1e-8)
    throw std::invalid_argument(
        "initial frame is not g-orthonormal (Gram deviation " +
        std::to_string(gram_dev) + ")");

  GeodesicTrajectory out = traj;
  out.frames.clear();
  out.frames.reserve(traj.states.size());

  CoupledState s{s0.position.x, s0.velocity, initial_frame};
  out.frames.push_back(s.F);
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double dt = traj.states[i].t - traj.states[i - 1].t;
    s = rk4_step(s, dt);
    if (!s.F.allFinite())
      throw numerical_error("transported frame became non-finite at t = " +
                            std::to_string(traj.states[i].t));
    out.frames.push_back(s.F);
  }
  return out;
}

double speed_drift(const GeodesicTrajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const GeodesicState& s0 = traj.states.front();
  const double e0 = metric_dot(s0.position, s0.velocity, s0.velocity);
  double drift = 0.0;
  for (const GeodesicState& s : traj.states) {
    const double e = metric_dot(s.position, s.velocity, s.velocity);
    drift = std::max(drift, std::abs(e - e0));
  }
  return drift;
}

}  // namespace isopar
