#include "slu1/exact.hpp"
#include "slu1/error.hpp"

#include <cmath>

namespace slu1 {

Eigen::Vector2d harvey_lawson_residual(double a, double x, double y, double u, double v) {
  double R2 = x * x + u * u;
  return {v * v + y * y - R2 * (R2 + 2 * a), u * v + x * y};
}

UV harvey_lawson_uv(double a, double x, double y) {
  if (!(a >= 0)) throw ValidationError("harvey-lawson requires a >= 0");
  // Eliminating u = -xy/v gives v = x sqrt(g), u = -y / sqrt(g), where
  // g > 0 solves g^2 - (x^2 + 2a) g - y^2 = 0. Sign branch: vx - yu >= 0.
  const double b = x * x + 2 * a;
  if (b == 0 && y == 0) return {0.0, 0.0, true};
  double g = 0.5 * (b + std::sqrt(b * b + 4 * y * y));
  if (g == 0) return {0.0, 0.0, true};
  // cancellation-free when b < 0 cannot happen; polish g on its quadratic
  g -= (g * g - b * g - y * y) / (2 * g - b);
  double sg = std::sqrt(g);
  UV r{-y / sg, x * sg, false};

  // Newton polish on the implicit system keeps residuals at rounding level
  // far from the origin.
  for (int it = 0; it < 2; ++it) {
    Eigen::Vector2d F = harvey_lawson_residual(a, x, y, r.u, r.v);
    double R2 = x * x + r.u * r.u;
    Eigen::Matrix2d J;
    J << -2 * r.u * (2 * R2 + 2 * a), 2 * r.v, r.v, r.u;
    if (std::abs(J.determinant()) < 1e-300) break;
    Eigen::Vector2d d = J.partialPivLu().solve(F);
    if (!d.allFinite() || d.norm() > 1e-6 * (1 + std::abs(r.u) + std::abs(r.v))) break;
    r.u -= d[0];
    r.v -= d[1];
  }
  return r;
}

UV affine_uv(double alpha, double beta, double gamma, double x, double y) {
  return {alpha * x + beta, alpha * y + gamma, false};
}

UV two_sheet_uv(double x, double y) {
  return {std::abs(y) - 0.5 * std::cosh(2 * x), -y * std::sinh(2 * x), false};
}

double two_sheet_potential(double x, double y) {
  return 0.5 * y * std::abs(y) - 0.5 * y * std::cosh(2 * x);
}

ExactSolutionId ExactSolutionId::harvey_lawson(double a) {
  if (!(a >= 0)) throw ValidationError("harvey-lawson requires a >= 0");
  ExactSolutionId id;
  id.variant = Variant::harvey_lawson;
  id.a = a;
  return id;
}

ExactSolutionId ExactSolutionId::affine(double alpha, double beta, double gamma) {
  ExactSolutionId id;
  id.variant = Variant::affine;
  id.alpha = alpha;
  id.beta = beta;
  id.gamma = gamma;
  return id;
}

ExactSolutionId ExactSolutionId::two_sheet() {
  ExactSolutionId id;
  id.variant = Variant::two_sheet;
  return id;
}

UV ExactSolutionId::operator()(double x, double y) const {
  switch (variant) {
    case Variant::harvey_lawson: return harvey_lawson_uv(a, x, y);
    case Variant::affine: return affine_uv(alpha, beta, gamma, x, y);
    case Variant::two_sheet: return two_sheet_uv(x, y);
  }
  return {};
}

std::string ExactSolutionId::name() const {
  switch (variant) {
    case Variant::harvey_lawson: return "harvey-lawson";
    case Variant::affine: return "affine";
    case Variant::two_sheet: return "two-sheet";
  }
  return "?";
}

} // namespace slu1
