#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "isopar/chart.hpp"

// Geodesic integration and parallel transport. Fixed-step classical RK4;
// the step is in the curve parameter (arc length for unit-speed data).
// Speed drift is recorded, never corrected mid-flight.
namespace isopar {

struct IntegratorConfig {
  double step = 1e-3;
  // Rescale the initial velocity once to unit g-norm before integrating.
  bool normalize_initial = false;
};

struct GeodesicState {
  double t = 0.0;
  Point position;
  Eigen::VectorXd velocity;  // coordinate components at `position`

  TangentVector tangent() const { return {position, velocity}; }
};

struct IntegratorMeta {
  int steps = 0;
  double step = 0.0;
  double max_speed_drift = 0.0;  // max |g(v,v) - g(v0,v0)| over states
};

struct GeodesicTrajectory {
  std::vector<GeodesicState> states;
  // Parallel-transported frames, one n x n matrix per state (columns are
  // tangent components of the frame vectors); empty unless transported.
  std::vector<Eigen::MatrixXd> frames;
  IntegratorMeta meta;

  bool has_frames() const { return !frames.empty(); }
};

// Right-hand side of the geodesic equation xdd^k = -Gamma^k_ij xd^i xd^j.
std::pair<Eigen::VectorXd, Eigen::VectorXd> geodesic_rhs(const GeodesicState& s);

// Integrates from (p0, v0) to t_end > 0. Requires g(v0, v0) > 0.
// Throws std::invalid_argument on bad input, numerical_error if a state
// turns non-finite.
GeodesicTrajectory integrate_geodesic(const Point& p0, const Eigen::VectorXd& v0,
                                      double t_end, const IntegratorConfig& cfg = {});

// Parallel-transports `initial_frame` (columns g-orthonormal at the start,
// Gram deviation <= 1e-8 required) along the trajectory by co-integrating
// Xd^k + Gamma^k_ij xd^i X^j = 0 with the same steps. Returns a copy of the
// trajectory with frames populated at every state.
GeodesicTrajectory parallel_transport(const GeodesicTrajectory& traj,
                                      const Eigen::MatrixXd& initial_frame);

// max over states of |g(v,v) - g(v0,v0)|.
double speed_drift(const GeodesicTrajectory& traj);

}  // namespace isopar
