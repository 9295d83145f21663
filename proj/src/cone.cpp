#include "slu1/cone.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace slu1 {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double s) { return s * s; }

double cubic(double A, double w) { return (1 - w) * (1 - w) * (1 + 2 * w) - A * A; }

double root_in(double A, double lo, double hi) {
  double flo = cubic(A, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi), fm = cubic(A, mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    double dp = -6 * w * (1 - w);
    if (dp == 0) break;
    double s = cubic(A, w) / dp;
    if (!(std::abs(s) < 1e-8)) break;
    w -= s;
  }
  return w;
}

void check_regular(double A) {
  if (A == 1) throw DegenerateCone("case (a)", "degenerate cone A = 1: case (a), T2-cone with theta sum 0");
  if (A == -1) throw DegenerateCone("case (b)", "degenerate cone A = -1: case (b), T2-cone with theta sum pi");
  if (A == 0) throw DegenerateCone("case (c)", "degenerate cone A = 0: case (c), SL planes");
  if (!(std::abs(A) < 1)) throw ValidationError("cone parameter A must satisfy 0 < |A| < 1");
}

// With w = m - d cos(chi), (dw/dt)^2 = 8 (w - w_min)(w_max - w)(w3 - w) turns
// into dchi/dt = sqrt(8 (w3 - w)), regular through the turning points. The
// state (t, alpha, beta) is then a quadrature in chi.
struct ChiSystem {
  double A, d;
  double e_min, e_max, e3;  // 1 + 2 w_min, 1 - w_max, w3 - 1
  double w_min;
  double w(double chi) const { return w_min + 2 * d * sq(std::sin(0.5 * chi)); }
  static double sq(double s) { return s * s; }
  Eigen::Vector3d operator()(double chi) const {
    // half-angle forms keep 1 + 2w, 1 - w and w3 - w accurate near the roots
    double s2 = sq(std::sin(0.5 * chi)), c2 = sq(std::cos(0.5 * chi));
    double one_plus_2w = e_min + 4 * d * s2;
    double one_minus_w = e_max + 2 * d * c2;
    double w3_minus_w = e3 + e_max + 2 * d * c2;
    double g = 1.0 / std::sqrt(8.0 * w3_minus_w);
    return {g, A * g / one_minus_w, -2 * A * g / one_plus_2w};
  }
};

ChiSystem chi_system(double A, const TurningPoints& tp) {
  ChiSystem f;
  f.A = A;
  f.d = 0.5 * (tp.w_max - tp.w_min);
  f.w_min = tp.w_min;
  f.e_min = A * A / sq(1 - tp.w_min);
  f.e_max = std::abs(A) / std::sqrt(1 + 2 * tp.w_max);
  f.e3 = std::abs(A) / std::sqrt(1 + 2 * tp.w3);
  return f;
}

// Dormand-Prince 5(4) step for y' = f(chi); returns the 5th-order increment
// and the embedded error estimate.
std::pair<Eigen::Vector3d, double> dp_step(const ChiSystem& f, double x, double h) {
  static constexpr std::array<double, 7> c{0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
  static constexpr std::array<double, 7> b5{35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
  static constexpr std::array<double, 7> b4{5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                            -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  Eigen::Vector3d y5 = Eigen::Vector3d::Zero(), y4 = Eigen::Vector3d::Zero();
  for (int s = 0; s < 7; ++s) {
    Eigen::Vector3d k = f(x + c[s] * h);
    y5 += h * b5[s] * k;
    y4 += h * b4[s] * k;
  }
  return {y5, (y5 - y4).cwiseAbs().maxCoeff()};
}

Eigen::Vector3d integrate_interval(const ChiSystem& f, double x0, double x1) {
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  double x = x0, h = x1 - x0;
  const double atol = 1e-13;
  int guard = 0;
  while (x < x1) {
    if (++guard > 100000) throw NumericalError("cone integration step budget exhausted");
    bool last = h >= x1 - x;
    if (last) h = x1 - x;
    auto [dy, err] = dp_step(f, x, h);
    double scale = atol * std::max(1.0, dy.cwiseAbs().maxCoeff());
    if (err <= scale) {
      y += dy;
      x = last ? x1 : x + h;
    }
    double fac = err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
  }
  return y;
}

} // namespace

TurningPoints turning_points(double A) {
  check_regular(A);
  TurningPoints tp;
  tp.w_min = root_in(A, -0.5, 0.0);
  tp.w_max = root_in(A, 0.0, 1.0);
  tp.w3 = root_in(A, 1.0, 2.0);
  return tp;
}

ConeTrajectory integrate_cone(double A, int steps_per_period, int periods) {
  check_regular(A);
  if (steps_per_period < 16) throw ValidationError("steps per period too coarse to resolve the turning points");
  if (periods < 1) throw ValidationError("periods must be positive");
  TurningPoints tp = turning_points(A);
  ChiSystem f = chi_system(A, tp);

  ConeTrajectory tr;
  tr.A = A;
  const double beta0 = A > 0 ? 0.0 : kPi;
  Eigen::Vector3d y(0, 0, beta0);
  const int N = steps_per_period;
  tr.samples.reserve(static_cast<size_t>(N) * periods + 1);
  auto push = [&](double chi) {
    ConeSample s;
    s.t = y[0];
    s.w = f.w(chi);
    s.alpha = y[1];
    s.beta = y[2];
    double sc = std::sin(chi);
    s.sign = sc > 1e-14 ? 1 : sc < -1e-14 ? -1 : (std::cos(chi) > 0 ? 1 : -1);
    tr.samples.push_back(s);
    double I = (1 - s.w) * std::sqrt(1 + 2 * s.w) * std::cos(2 * s.alpha + s.beta);
    tr.drift = std::max(tr.drift, std::abs(I - A));
  };
  push(0.0);
  for (int p = 0; p < periods; ++p) {
    for (int s = 0; s < N; ++s) {
      double c0 = 2 * kPi * (static_cast<double>(s) / N), c1 = 2 * kPi * (static_cast<double>(s + 1) / N);
      y += integrate_interval(f, c0, c1);
      push(c1);
    }
    if (p == 0) {
      tr.period = y[0];
      tr.phi = y[2] - beta0;
    }
  }
  if (tr.drift > 1e-6) throw NumericalError("first-integral drift exceeds 100x target");
  return tr;
}

PhiResult compute_phi(double A) {
  int N = 64;
  ConeTrajectory a = integrate_cone(A, N, 1);
  for (int k = 0; k < 6; ++k) {
    N *= 2;
    ConeTrajectory b = integrate_cone(A, N, 1);
    double ch = std::abs(b.phi - a.phi) / std::abs(b.phi);
    double chT = std::abs(b.period - a.period) / b.period;
    if (ch <= 1e-8 && chT <= 1e-8) return {b.period, b.phi, ch};
    a = std::move(b);
  }
  throw NumericalError("rotation angle not converged within the step budget");
}

std::optional<double> phi_inverse(double target, double tol) {
  double lo = 1e-3, hi = 1 - 1e-3;
  double flo = compute_phi(lo).phi - target, fhi = compute_phi(hi).phi - target;
  if (!(flo > 0 && fhi < 0)) return std::nullopt;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double fm = compute_phi(mid).phi - target;
    if (fm > 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<std::pair<int, int>> rationality_gap(double A, int q_max) {
  if (q_max < 3) throw ValidationError("q_max must be at least 3");
  const double x = compute_phi(A).phi / (2 * kPi);
  for (int q = 1; q <= q_max; ++q) {
    int p = static_cast<int>(std::lround(x * q));
    if (std::gcd(p, q) != 1) continue;
    if (std::abs(x - static_cast<double>(p) / q) < 1e-6) {
      if (q < 3 || std::abs(p) < 2) throw NumericalError("closing cone with q < 3 or |p| < 2");
      return std::make_pair(p, q);
    }
  }
  return std::nullopt;
}

TangentConeCase TangentConeCase::plane_pair(int k, int l) {
  if (k < 1 || l < 1) throw ValidationError("plane-pair multiplicities must be positive");
  TangentConeCase c;
  c.tag = ConeCase::plane_pair;
  c.density = k + l;
  c.k = k;
  c.l = l;
  return c;
}

TangentConeCase classify_tangent_cone(const SingularityReport& r) {
  if (r.type == SingularType::undetermined) throw ValidationError("singularity type undetermined");
  if (r.multiplicity < 1) throw ValidationError("singularity multiplicity must be positive");
  if (!r.parity_ok()) throw NumericalError("multiplicity parity contradicts the singularity type");
  TangentConeCase c;
  if (r.multiplicity == 1) {
    c.tag = r.type == SingularType::increasing ? ConeCase::t2_i : ConeCase::t2_ii;
    c.density = t2_cone_density();
  } else {
    c.tag = ConeCase::plane_union;
    c.density = 2;
  }
  return c;
}

double t2_cone_area() {
  Eigen::Matrix2d B;
  B << std::sqrt(2.0) / std::sqrt(3.0), 1 / std::sqrt(6.0), 0, 1 / std::sqrt(2.0);
  return std::abs((2 * kPi * B).determinant());
}

double t2_cone_density() { return t2_cone_area() / (4 * kPi); }

} // namespace slu1
