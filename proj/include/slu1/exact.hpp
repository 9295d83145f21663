#pragma once

#include "slu1/grid.hpp"

#include <string>

namespace slu1 {

struct UV {
  double u = 0, v = 0;
  bool vertex = false;  ///< cone vertex (a = 0, origin): value by continuity
};

/// Harvey-Lawson family N_a (a >= 0): the solution of
///   v^2 + y^2 = R^2 (R^2 + 2a),  uv + xy = 0,  vx - yu >= 0,  R^2 = x^2 + u^2.
UV harvey_lawson_uv(double a, double x, double y);

/// Residuals of the two implicit equations at (x, y, u, v).
Eigen::Vector2d harvey_lawson_residual(double a, double x, double y, double u, double v);

/// u = alpha x + beta, v = alpha y + gamma.
UV affine_uv(double alpha, double beta, double gamma, double x, double y);

/// u = |y| - cosh(2x)/2, v = -y sinh(2x): a singular solution with v(x,0) = 0.
UV two_sheet_uv(double x, double y);
/// Potential f with f_y = u, f_x = v for the two-sheet example.
double two_sheet_potential(double x, double y);

struct ExactSolutionId {
  enum class Variant { harvey_lawson, affine, two_sheet } variant = Variant::affine;
  double a = 0;                          ///< harvey-lawson parameter
  double alpha = 0, beta = 0, gamma = 0; ///< affine parameters

  static ExactSolutionId harvey_lawson(double a);
  static ExactSolutionId affine(double alpha, double beta, double gamma);
  static ExactSolutionId two_sheet();

  UV operator()(double x, double y) const;
  /// Parameter a of the associated (u,v) system.
  double system_a() const { return variant == Variant::harvey_lawson ? a : 0.0; }
  std::string name() const;
};

} // namespace slu1
