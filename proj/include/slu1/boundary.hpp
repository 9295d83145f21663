#pragma once

#include <Eigen/Dense>

#include <vector>

namespace slu1 {

/// Dirichlet data on the boundary, parameterized by theta in [0, 2pi).
/// Either a finite Fourier sum a0 + sum_j (cos_j cos j.theta + sin_j sin j.theta)
/// or m periodic samples at theta_s = 2 pi s/m joined by local cubics.
class BoundaryData {
public:
  enum class Kind { fourier, sampled };

  BoundaryData() = default;

  /// cos[j], sin[j] multiply cos(j theta), sin(j theta); index 0 of `cos` is
  /// added to a0, index 0 of `sin` must be zero.
  static BoundaryData fourier(double a0, std::vector<double> cos, std::vector<double> sin = {});
  static BoundaryData sampled(std::vector<double> values);
  static BoundaryData zero() { return fourier(0.0, {}); }

  Kind kind() const { return kind_; }
  /// Evaluates the datum (order 0) or its theta-derivatives.
  double operator()(double theta, int order = 0) const;
  Eigen::VectorXd evaluate(const Eigen::VectorXd& theta) const;

  int max_mode() const;
  double a0() const { return a0_; }
  double cos_coef(int j) const { return j < (int)cos_.size() ? cos_[j] : 0.0; }
  double sin_coef(int j) const { return j < (int)sin_.size() ? sin_[j] : 0.0; }
  const std::vector<double>& samples() const { return samples_; }

  /// True if the datum is odd under theta -> -theta (no constant or cos terms).
  bool is_odd(double tol = 0.0) const;
  /// True if the datum is even under theta -> -theta (no sin terms).
  bool is_even(double tol = 0.0) const;

  /// Pointwise combination; Fourier + Fourier stays Fourier, otherwise the
  /// result is sampled at max(m of inputs, 1024) points.
  BoundaryData operator+(const BoundaryData& o) const;
  BoundaryData operator-(const BoundaryData& o) const;
  BoundaryData operator*(double s) const;

  /// Spectral C^k norm: |a0| + sum_j max(1, j^k) sqrt(cos_j^2 + sin_j^2).
  double spectral_norm(int k) const;

private:
  Kind kind_ = Kind::fourier;
  double a0_ = 0;
  std::vector<double> cos_, sin_;  // index = mode, entry 0 unused
  std::vector<double> samples_;
  static BoundaryData combine(const BoundaryData& a, const BoundaryData& b, double sb);
};

} // namespace slu1
