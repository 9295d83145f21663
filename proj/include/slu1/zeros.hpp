#pragma once

#include "slu1/boundary.hpp"
#include "slu1/solver.hpp"

#include <string>
#include <vector>

namespace slu1 {

/// Degree of a closed planar loop about the origin. The loop is closed
/// implicitly if the last point differs from the first.
int winding_number(const std::vector<Eigen::Vector2d>& loop);

/// Difference map (u - u_hat, v - v_hat) evaluated by interpolation.
Eigen::Vector2d difference(const SolutionPair& p, const SolutionPair& q, double x, double y);

/// Winding number of the difference along the circle of radius eps about
/// `center`, checked against radius eps/2.
int zero_multiplicity(const SolutionPair& pair, const SolutionPair& pair_hat, Eigen::Vector2d center,
                      double eps);

struct ProbeResult {
  int multiplicity = 0;
  double radius = 0;
};

/// Radius protocol: eps = min(8h, limit) halved (at most 6 times) until the
/// windings at eps and eps/2 agree.
ProbeResult probe_multiplicity(const SolutionPair& pair, const SolutionPair& pair_hat,
                               Eigen::Vector2d center, double limit = INFINITY);

/// (u(x,-y), -v(x,-y)).
SolutionPair reflected(const SolutionPair& p);

enum class SingularType { increasing, decreasing, maximum, minimum, undetermined };
std::string to_string(SingularType t);

enum class ConeCase { t2_i, t2_ii, plane, plane_union, plane_pair, undetermined };
std::string to_string(ConeCase c);

struct SingularityReport {
  double b = 0;
  int multiplicity = 0;
  SingularType type = SingularType::undetermined;
  double probe_radius = 0;
  ConeCase cone = ConeCase::undetermined;
  /// Parity agrees with type (odd for increasing/decreasing, even otherwise).
  bool parity_ok() const;
};

struct SingularityScan {
  std::vector<SingularityReport> points;
  bool whole_axis_singular = false;
};

/// Scans v(.,0) for sign changes and near-zeros (|v| < axis_tol); the
/// default axis tolerance is 10 * 1e-10 * max(1, max |v| on the axis).
SingularityScan find_singularities(const SolutionPair& pair, double axis_tol = -1.0);

struct ZeroEntry {
  double x = 0, y = 0;
  int multiplicity = 0;
  bool singular = false;
  int cell_winding = 0;  ///< winding summed over the cluster's lattice cells
  double probe_radius = 0;
};

struct ZeroReport {
  int boundary_winding = 0;
  std::vector<ZeroEntry> zeroes;
  int total_multiplicity() const;
  bool consistent() const { return boundary_winding == total_multiplicity(); }
};

/// Boundary winding along the outer ring of complete lattice cells plus a
/// cell sweep for interior zeroes, each assigned a probe multiplicity.
ZeroReport verify_count(const SolutionPair& pair, const SolutionPair& pair_hat);

/// Number of strict local maxima of a periodic datum (plateaus count once).
int count_boundary_extrema(const BoundaryData& d);

} // namespace slu1
