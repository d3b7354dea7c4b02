#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

// The verification pipeline: ten independent checks assembling the full
// evidence chain into a machine-readable verdict. Deterministic for a fixed
// seed and config (the sampler is seeded and platform-independent).
namespace isopar {

struct VerifyTolerances {
  double exact = 1e-12;       // periodicity, isometry invariance, leaf shape
  double algebraic = 1e-10;   // closed-form vs general-formula Christoffel
  double identity = 1e-9;     // tensor identities, lattice Ricci values
  double weyl = 1e-8;         // Weyl vanishing (n >= 4)
  double cotton = 1e-7;       // Cotton vanishing (n = 3)
  double integrator = 1e-8;   // endpoint errors, speed drift
  double derivative = 1e-6;   // FD Christoffel, trace-equation residual
  double oracle = 1e-3;       // Riccati vs FD mean-curvature oracle
};

struct VerifyConfig {
  std::uint64_t seed = 12345;
  int samples = 1000;           // random points for pointwise identity checks
  int flatness_samples = 500;   // points for Weyl/Cotton checks
  int torus_samples = 200;      // points for the periodicity check
  double box = 2.0;             // samples drawn from [-box, box]^n
  double step = 1e-3;           // integrator step
  double r_max = 0.25;          // Riccati integration range
  double split_r = 0.05;        // distance for the H sign-split check
  double oracle_eps = 1e-3;     // stencil width of the FD oracle
  int jobs = 1;                 // worker threads for the heavier checks
  VerifyTolerances tol;
};

enum class CheckStatus { pass, fail, skipped };

// One verification check; pass iff metric <= tolerance (for sign checks the
// metric is a normalized margin with tolerance 1.0). Checks with several
// sub-deviations report metric = max(deviation / sub-tolerance) against
// tolerance 1.0, with the raw numbers in `details`.
struct CheckResult {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::fail;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string details;
};

struct HeadlineVerdict {
  // dH/dr at r=0 of the parallel-hypersurface flow at the all-even and
  // all-odd lattice bases, and H at distance split_r.
  double rate_even_base = 0.0;
  double rate_odd_base = 0.0;
  double split_r = 0.0;
  double H_even_base = 0.0;
  double H_odd_base = 0.0;
  bool non_isoparametric = false;
  std::string statement;
};

struct VerdictReport {
  int dimension = 0;
  VerifyConfig config;
  std::vector<CheckResult> checks;
  bool overall = false;  // all checks pass (skipped-with-note counts as pass)
  HeadlineVerdict headline;
};

// Runs C1..C10 in order; a failing or throwing check is recorded and the
// remaining checks still run.
VerdictReport run_all(int n, const VerifyConfig& cfg = {});

nlohmann::json to_json(const VerdictReport& report);

void render_table(std::ostream& os, const VerdictReport& report);

}  // namespace isopar
