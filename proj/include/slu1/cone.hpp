#pragma once

#include "slu1/error.hpp"
#include "slu1/zeros.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slu1 {

/// Rejection of the degenerate values A = 1, -1, 0; `tag` names the case
/// ("case (a)", "case (b)", "case (c)").
class DegenerateCone : public ValidationError {
public:
  DegenerateCone(const std::string& tag, const std::string& what) : ValidationError(what), tag(tag) {}
  std::string tag;
};

struct TurningPoints {
  double w_min = 0, w_max = 0;
  double w3 = 0;  ///< third root of (1-w)^2(1+2w) = A^2, above 1
};

/// Roots of (1-w)^2 (1+2w) = A^2 inside (-1/2, 1).
TurningPoints turning_points(double A);

struct ConeSample {
  double t = 0, w = 0, alpha = 0, beta = 0;
  int sign = 1;  ///< sign of dw/dt
};

struct ConeTrajectory {
  double A = 0;
  std::vector<ConeSample> samples;
  double period = 0;
  double phi = 0;    ///< beta(T) - beta(0)
  double drift = 0;  ///< max |(1-w)(1+2w)^(1/2) cos(2 alpha + beta) - A|
};

/// Integrates the cone system from w = w_min, alpha = 0, beta in {0, pi}.
/// `steps_per_period` bounds the step size and sets the sample density.
ConeTrajectory integrate_cone(double A, int steps_per_period = 256, int periods = 1);

struct PhiResult {
  double T = 0, phi = 0;
  double halving_change = 0;  ///< |Phi(N) - Phi(2N)| relative
};

/// Period and rotation angle, converged under step halving to relative 1e-8.
PhiResult compute_phi(double A);

/// A in [1e-3, 1 - 1e-3] with Phi(A) = target by bisection on the monotone
/// Phi; none if target is not bracketed there (in particular outside
/// (-2 pi/sqrt 3, -pi)).
std::optional<double> phi_inverse(double target, double tol = 1e-10);

/// Reduced p/q with q <= q_max and |Phi(A)/2pi - p/q| < 1e-6, if any.
std::optional<std::pair<int, int>> rationality_gap(double A, int q_max);

struct TangentConeCase {
  ConeCase tag = ConeCase::undetermined;
  double density = 0;
  int k = 0, l = 0;  ///< plane-pair multiplicities

  static TangentConeCase plane_pair(int k, int l);
};

TangentConeCase classify_tangent_cone(const SingularityReport& report);

/// Area of the flat torus of the T2-cone link, 4 pi^2/sqrt 3.
double t2_cone_area();
/// Density of the T2-cone, area / 4 pi.
double t2_cone_density();

} // namespace slu1
