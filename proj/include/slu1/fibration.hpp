#pragma once

#include "slu1/solver.hpp"

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace slu1 {

/// Fibre parameters (a, b, c).
using FibreParams = Eigen::Vector3d;

/// Family of boundary data phi + b x + c y on the unit circle, with a cache
/// of solved fibres. Solves for distinct parameters may run concurrently.
class FibrationFamily {
public:
  FibrationFamily(DomainPtr domain, BoundaryData phi, SolverOptions opts = {},
                  FibreParams box_lo = {-2, -10, -10}, FibreParams box_hi = {2, 10, 10});

  const DomainPtr& domain() const { return domain_; }
  const BoundaryData& phi() const { return phi_; }
  const SolverOptions& options() const { return opts_; }
  bool in_box(const FibreParams& p) const;

  /// phi + b cos(theta) + c sin(theta).
  BoundaryData datum(const FibreParams& p) const;

  /// Solved fibre (direct solve for a != 0, continuation for a = 0); cached.
  std::shared_ptr<const SolutionPair> solve_fibre(const FibreParams& p) const;

  /// Solves several fibres with up to `threads` workers.
  void solve_all(const std::vector<FibreParams>& ps, int threads) const;

  /// Validation hook: the boundary difference of two parameter sets with
  /// equal a has exactly one local maximum.
  bool one_max_one_min(const FibreParams& p, const FibreParams& q) const;

  size_t cache_size() const;

private:
  DomainPtr domain_;
  BoundaryData phi_;
  SolverOptions opts_;
  FibreParams lo_, hi_;
  mutable std::mutex mu_;
  mutable std::map<std::array<double, 3>, std::shared_ptr<const SolutionPair>> cache_;
};

struct DisjointCertificate {
  double min_separation = 0;  ///< min |(u,v) - (u',v')| over nodes and midpoints
  int boundary_winding = 0;
  bool winding_zero = false;
  int points_checked = 0;
  bool ok() const { return winding_zero && min_separation > 0; }
};

/// Checks that two fibres with equal a share no (u,v) value at any node or
/// bicubic cell midpoint, and that the difference has zero boundary winding.
/// Throws NumericalError on a coincidence.
DisjointCertificate verify_disjoint(const FibrationFamily& fam, const FibreParams& p, const FibreParams& q);

using C3 = std::array<std::complex<double>, 3>;

/// Point of the fibre p over (x, y) with U(1) angle theta.
C3 fibre_point(const FibrationFamily& fam, const FibreParams& p, double x, double y, double theta = 0.0);

/// Recovers (a, b, c) with z on the fibre: a = (|z1|^2 - |z2|^2)/2, then
/// Newton on (b, c) -> (v, u)(x, y) with x = Re z3, y = Im z1 z2.
FibreParams invert_point(const FibrationFamily& fam, const C3& z, double tol = 1e-10);

} // namespace slu1
