#pragma once

#include <iosfwd>
#include <string>

#include "isopar/geodesics.hpp"
#include "isopar/hypersurfaces.hpp"

// CSV emitters. Comma separator, '.' decimal point, one header row; numbers
// are written in shortest round-trip form, so output is byte-stable for a
// fixed config and seed.
namespace isopar::io {

// Shortest representation that round-trips to the same double.
std::string format_double(double v);

// Columns: t,x_1..x_n,v_1..v_n,speed
void write_trajectory_csv(std::ostream& os, const GeodesicTrajectory& traj);

// Columns: r,H,hs_norm_sq,S_11..S_mm (row-major, m = n-1)
void write_shape_curve_csv(std::ostream& os, const ShapeCurve& curve);

// Columns: x_1..x_{n-1},r,H
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace isopar::io
