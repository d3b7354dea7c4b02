#include "isopar/hypersurfaces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "isopar/errors.hpp"
#include "isopar/geodesics.hpp"
#include "isopar/tensors.hpp"

namespace isopar {

namespace {

// R_(gd) in the transported frame, restricted to the tangent block: entries
// <R(E_a, gd) gd, E_b> for the first m frame columns.
Eigen::MatrixXd jacobi_block(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                             const Eigen::MatrixXd& F, int m) {
  const CurvatureBundle c = riemann(Point{x});
  const int n = c.n;
  Eigen::MatrixXd Rt = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              s += c.riemann(i, j, k, l) * F(i, a) * v[j] * v[k] * F(l, b);
      Rt(a, b) = s;
    }
  return Rt;
}

struct FlowState {
  Eigen::VectorXd x, v;
  Eigen::MatrixXd F;  // n x n transported frame, last column = v
  Eigen::MatrixXd S;  // m x m shape operator
};

FlowState flow_rhs(const FlowState& s, int m) {
  if (!s.x.allFinite())
    throw numerical_error("Riccati integration reached a non-finite position");
  const int n = static_cast<int>(s.x.size());
  const Tensor3 gam = christoffel_closed(Point{s.x}).gamma;
  FlowState d;
  d.x = s.v;
  d.v = Eigen::VectorXd::Zero(n);
  d.F = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += gam(k, i, j) * s.v[i] * s.v[j];
    d.v[k] = -acc;
    for (int c = 0; c < n; ++c) {
      double fr = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fr += gam(k, i, j) * s.v[i] * s.F(j, c);
      d.F(k, c) = -fr;
    }
  }
  d.S = jacobi_block(s.x, s.v, s.F, m) + s.S * s.S;
  return d;
}

FlowState flow_rk4(const FlowState& s, double dt, int m) {
  auto advance = [&](const FlowState& k, double a) {
    FlowState t;
    t.x = s.x + a * k.x;
    t.v = s.v + a * k.v;
    t.F = s.F + a * k.F;
    t.S = s.S + a * k.S;
    return t;
  };
  const FlowState k1 = flow_rhs(s, m);
  const FlowState k2 = flow_rhs(advance(k1, dt / 2), m);
  const FlowState k3 = flow_rhs(advance(k2, dt / 2), m);
  const FlowState k4 = flow_rhs(advance(k3, dt), m);
  FlowState out;
  out.x = s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.v = s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.F = s.F + dt / 6.0 * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F);
  out.S = s.S + dt / 6.0 * (k1.S + 2.0 * k2.S + 2.0 * k3.S + k4.S);
  return out;
}

ShapeState record_state(double r, const Eigen::MatrixXd& S) {
  ShapeState st;
  st.r = r;
  st.S = S;
  st.H = S.trace();
  st.hs_norm_sq = S.squaredNorm();
  return st;
}

}  // namespace

Eigen::MatrixXd leaf_shape_operator(const Leaf& leaf, const Point& p, double tol) {
  check_point(p);
  const int n = p.dim();
  if (std::abs(p.x[n - 1] - leaf.s) > tol)
    throw std::invalid_argument("point is not on the leaf x_n = " +
                                std::to_string(leaf.s));
  const double h = conformal_factor(p);
  const Tensor3 gam = christoffel_closed(p).gamma;
  const int m = n - 1;
  // <S_nu d_a, d_b> = -<nabla_{d_a} nu, d_b> = -h Gamma^b_an; orthonormal
  // endomorphism entries divide by h^2.
  Eigen::MatrixXd S(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) S(a, b) = -gam(b, a, n - 1) / h;
  return S;
}

Eigen::VectorXd principal_curvatures(const Eigen::MatrixXd& shape) {
  if (shape.rows() != shape.cols())
    throw std::invalid_argument("shape operator must be square");
  const double asym = (shape - shape.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8)
    throw std::invalid_argument("shape operator asymmetry " +
                                std::to_string(asym) + " exceeds 1e-8");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (shape + shape.transpose()));
  return solver.eigenvalues();
}

ShapeCurve integrate_riccati(const Point& base, double r_max,
                             const RiccatiConfig& cfg) {
  check_point(base);
  if (r_max < 0.0) throw std::invalid_argument("r_max must be >= 0");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (!(cfg.blowup_cap > 0.0)) throw std::invalid_argument("blow-up cap must be > 0");

  const int n = base.dim();
  const int m = n - 1;
  const double h0 = conformal_factor(base);
  const Leaf leaf{base.x[n - 1]};

  FlowState s;
  s.x = base.x;
  s.v = Eigen::VectorXd::Zero(n);
  s.v[n - 1] = 1.0 / h0;  // unit normal h^-1 d_n
  // Adapted g-orthonormal frame at the base: columns h^-1 d_1 .. h^-1 d_n;
  // the last column coincides with the geodesic velocity.
  s.F = Eigen::MatrixXd::Identity(n, n) / h0;
  s.S = leaf_shape_operator(leaf, base, cfg.leaf_tol);

  ShapeCurve curve;
  curve.base = base;
  curve.states.push_back(record_state(0.0, s.S));

  double r = 0.0;
  while (r_max - r > cfg.step * 1e-12) {
    const double dt = std::min(cfg.step, r_max - r);
    s = flow_rk4(s, dt, m);
    r += dt;
    if (!s.x.allFinite() || !s.v.allFinite() || !s.F.allFinite() || !s.S.allFinite())
      throw numerical_error("Riccati state became non-finite at r = " +
                            std::to_string(r));
    const double snorm = s.S.norm();
    if (snorm > cfg.blowup_cap)
      throw numerical_error("shape operator blow-up at r = " + std::to_string(r) +
                            " (||S|| = " + std::to_string(snorm) + ")");
    curve.states.push_back(record_state(r, s.S));
  }
  return curve;
}

double mean_curvature_rate_at_start(const ShapeCurve& curve) {
  if (curve.states.size() < 5)
    throw std::invalid_argument("curve too short for the start-rate stencil");
  const double dr = curve.states[1].r - curve.states[0].r;
  for (int i = 1; i < 4; ++i) {
    const double step_i = curve.states[i + 1].r - curve.states[i].r;
    if (std::abs(step_i - dr) > 1e-12 * std::max(1.0, dr))
      throw std::invalid_argument("start-rate stencil needs a uniform grid");
  }
  const auto& st = curve.states;
  return (-25.0 * st[0].H + 48.0 * st[1].H - 36.0 * st[2].H + 16.0 * st[3].H -
          3.0 * st[4].H) /
         (12.0 * dr);
}

double parallel_mean_curvature_fd(const Point& base, double r, double eps,
                                  const RiccatiConfig& cfg) {
  check_point(base);
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  const int n = base.dim();
  const int m = n - 1;
  const IntegratorConfig icfg{cfg.step, false};

  // Normal exponential image of the leaf point with tangent coordinates u.
  auto immerse = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    Point q = base;
    q.x.head(m) = u;
    if (r == 0.0) return q.x;
    Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
    v0[n - 1] = 1.0 / conformal_factor(q);
    const GeodesicTrajectory traj = integrate_geodesic(q, v0, r, icfg);
    return traj.states.back().position.x;
  };

  const Eigen::VectorXd u0 = base.x.head(m);
  const Eigen::VectorXd center = immerse(u0);
  const Point cpt{center};
  const Eigen::MatrixXd gc = metric_at(cpt).g;
  const Tensor3 gam = christoffel_closed(cpt).gamma;

  // Orientation seed for the normal: the center geodesic's final velocity
  // (the leaf normal itself when r = 0).
  Eigen::VectorXd seed;
  if (r == 0.0) {
    seed = Eigen::VectorXd::Zero(n);
    seed[n - 1] = 1.0 / conformal_factor(base);
  } else {
    Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
    v0[n - 1] = 1.0 / conformal_factor(base);
    seed = integrate_geodesic(base, v0, r, icfg).states.back().velocity;
  }

  // First and second differences of the immersion.
  Eigen::MatrixXd T(m, n);
  std::vector<std::vector<Eigen::VectorXd>> hess(
      m, std::vector<Eigen::VectorXd>(m));
  for (int a = 0; a < m; ++a) {
    Eigen::VectorXd up = u0, um = u0;
    up[a] += eps;
    um[a] -= eps;
    const Eigen::VectorXd Pp = immerse(up), Pm = immerse(um);
    T.row(a) = (Pp - Pm) / (2.0 * eps);
    hess[a][a] = (Pp - 2.0 * center + Pm) / (eps * eps);
  }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Eigen::VectorXd pp = u0, pm = u0, mp = u0, mm = u0;
      pp[a] += eps; pp[b] += eps;
      pm[a] += eps; pm[b] -= eps;
      mp[a] -= eps; mp[b] += eps;
      mm[a] -= eps; mm[b] -= eps;
      hess[a][b] = hess[b][a] =
          (immerse(pp) - immerse(pm) - immerse(mp) + immerse(mm)) /
          (4.0 * eps * eps);
    }

  const Eigen::MatrixXd gram = T * gc * T.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gsolve(gram);
  if (gsolve.eigenvalues().minCoeff() < 1e-10)
    throw numerical_error("oracle stencil degenerated (tangents g-dependent)");

  // Normal by g-orthogonalization of the seed against the tangents.
  Eigen::VectorXd nu =
      seed - T.transpose() * gram.ldlt().solve(T * gc * seed);
  const double nu_norm_sq = nu.dot(gc * nu);
  if (!(nu_norm_sq > 1e-20))
    throw numerical_error("oracle normal degenerated");
  nu /= std::sqrt(nu_norm_sq);

  // II_ab = g(ambient Hessian of the immersion, nu)
  Eigen::MatrixXd II(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Eigen::VectorXd cov = hess[a][b];
      for (int k = 0; k < n; ++k) {
        double corr = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) corr += gam(k, i, j) * T(a, i) * T(b, j);
        cov[k] += corr;
      }
      II(a, b) = cov.dot(gc * nu);
    }

  return gram.ldlt().solve(II).trace();
}

SweepResult sweep_mean_curvature(const Leaf& leaf, int n,
                                 const std::vector<double>& axis_values,
                                 double r, const RiccatiConfig& cfg, int jobs) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  if (axis_values.empty()) throw std::invalid_argument("empty sweep grid");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  const int m = n - 1;

  std::size_t total = 1;
  for (int a = 0; a < m; ++a) total *= axis_values.size();

  SweepResult out;
  out.leaf_s = leaf.s;
  out.r = r;
  out.bases.resize(total);
  out.mean_curvature.resize(total);

  for (std::size_t idx = 0; idx < total; ++idx) {
    Eigen::VectorXd u(m);
    std::size_t rest = idx;
    for (int a = m - 1; a >= 0; --a) {
      u[a] = axis_values[rest % axis_values.size()];
      rest /= axis_values.size();
    }
    out.bases[idx] = u;
  }

  auto compute = [&](std::size_t idx) {
    Point base;
    base.x = Eigen::VectorXd(n);
    base.x.head(m) = out.bases[idx];
    base.x[n - 1] = leaf.s;
    const ShapeCurve curve = integrate_riccati(base, r, cfg);
    out.mean_curvature[idx] = curve.states.back().H;
  };

  if (jobs == 1 || total < 2) {
    for (std::size_t idx = 0; idx < total; ++idx) compute(idx);
  } else {
    const std::size_t workers = std::min<std::size_t>(jobs, total);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&, wkr] {
        try {
          for (std::size_t idx = wkr; idx < total; idx += workers) compute(idx);
        } catch (...) {
          errors[wkr] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace isopar
