#include "isopar/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace isopar::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
  const int n = traj.states.front().position.dim();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x_" << i;
  for (int i = 1; i <= n; ++i) os << ",v_" << i;
  os << ",speed\n";
  for (const GeodesicState& s : traj.states) {
    os << format_double(s.t);
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.position.x[i]);
    for (int i = 0; i < n; ++i) os << ',' << format_double(s.velocity[i]);
    os << ',' << format_double(metric_norm(s.position, s.velocity)) << '\n';
  }
}

void write_shape_curve_csv(std::ostream& os, const ShapeCurve& curve) {
  if (curve.states.empty()) throw std::invalid_argument("empty shape curve");
  const int m = static_cast<int>(curve.states.front().S.rows());
  os << "r,H,hs_norm_sq";
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) os << ",S_" << a << b;
  os << '\n';
  for (const ShapeState& st : curve.states) {
    os << format_double(st.r) << ',' << format_double(st.H) << ','
       << format_double(st.hs_norm_sq);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) os << ',' << format_double(st.S(a, b));
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  if (sweep.bases.empty()) throw std::invalid_argument("empty sweep");
  const int m = static_cast<int>(sweep.bases.front().size());
  for (int a = 1; a <= m; ++a) os << "x_" << a << ',';
  os << "r,H\n";
  for (std::size_t i = 0; i < sweep.bases.size(); ++i) {
    for (int a = 0; a < m; ++a) os << format_double(sweep.bases[i][a]) << ',';
    os << format_double(sweep.r) << ',' << format_double(sweep.mean_curvature[i])
       << '\n';
  }
}

}  // namespace isopar::io
