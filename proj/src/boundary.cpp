#include "slu1/boundary.hpp"
#include "slu1/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slu1 {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BoundaryData BoundaryData::fourier(double a0, std::vector<double> cos, std::vector<double> sin) {
  BoundaryData b;
  b.kind_ = Kind::fourier;
  b.a0_ = a0;
  if (!cos.empty()) {
    b.a0_ += cos[0];
    cos[0] = 0;
  }
  if (!sin.empty()) {
    if (sin[0] != 0) throw ValidationError("sin coefficient of mode 0 must be zero");
  }
  for (double c : cos)
    if (!std::isfinite(c)) throw ValidationError("non-finite Fourier coefficient");
  for (double c : sin)
    if (!std::isfinite(c)) throw ValidationError("non-finite Fourier coefficient");
  b.cos_ = std::move(cos);
  b.sin_ = std::move(sin);
  return b;
}

BoundaryData BoundaryData::sampled(std::vector<double> values) {
  if (values.size() < 8) throw ValidationError("sampled boundary data needs at least 8 samples");
  for (double c : values)
    if (!std::isfinite(c)) throw ValidationError("non-finite boundary sample");
  BoundaryData b;
  b.kind_ = Kind::sampled;
  b.samples_ = std::move(values);
  return b;
}

int BoundaryData::max_mode() const {
  if (kind_ == Kind::sampled) return static_cast<int>(samples_.size()) / 16;
  int j = 0;
  for (int i = 1; i < (int)std::max(cos_.size(), sin_.size()); ++i)
    if (cos_coef(i) != 0 || sin_coef(i) != 0) j = i;
  return j;
}

double BoundaryData::operator()(double t, int order) const {
  if (kind_ == Kind::fourier) {
    double r = order == 0 ? a0_ : 0.0;
    const int J = static_cast<int>(std::max(cos_.size(), sin_.size()));
    for (int j = 1; j < J; ++j) {
      double c = cos_coef(j), s = sin_coef(j);
      if (c == 0 && s == 0) continue;
      // d^k/dt^k of c cos(jt) + s sin(jt) = j^k [c cos(jt + k pi/2) + s sin(jt + k pi/2)]
      double ph = j * t + order * 0.5 * std::numbers::pi;
      r += std::pow(static_cast<double>(j), order) * (c * std::cos(ph) + s * std::sin(ph));
    }
    return r;
  }
  // local cubic through samples s-1..s+2
  const int m = static_cast<int>(samples_.size());
  const double dt = kTwoPi / m;
  double g = t / dt;
  double fl = std::floor(g);
  double x = g - fl;
  long s = static_cast<long>(fl);
  auto at = [&](long i) { return samples_[static_cast<size_t>(((i % m) + m) % m)]; };
  double p[4] = {at(s - 1), at(s), at(s + 1), at(s + 2)};
  // cubic in x with nodes -1,0,1,2
  double c0 = p[1];
  double c1 = -p[0] / 3.0 - p[1] / 2.0 + p[2] - p[3] / 6.0;
  double c2 = (p[0] + p[2]) / 2.0 - p[1];
  double c3 = (p[3] - p[0]) / 6.0 + (p[1] - p[2]) / 2.0;
  double r;
  switch (order) {
    case 0: r = c0 + x * (c1 + x * (c2 + x * c3)); break;
    case 1: r = c1 + x * (2 * c2 + 3 * x * c3); break;
    case 2: r = 2 * c2 + 6 * x * c3; break;
    case 3: r = 6 * c3; break;
    default: r = 0; break;
  }
  return r / std::pow(dt, order);
}

Eigen::VectorXd BoundaryData::evaluate(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd r(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) r[i] = (*this)(theta[i]);
  return r;
}

bool BoundaryData::is_odd(double tol) const {
  if (kind_ == Kind::sampled) {
    const int m = static_cast<int>(samples_.size());
    for (int s = 0; s < m; ++s)
      if (std::abs(samples_[s] + samples_[(m - s) % m]) > tol) return false;
    return true;
  }
  if (std::abs(a0_) > tol) return false;
  for (size_t j = 1; j < cos_.size(); ++j)
    if (std::abs(cos_[j]) > tol) return false;
  return true;
}

bool BoundaryData::is_even(double tol) const {
  if (kind_ == Kind::sampled) {
    const int m = static_cast<int>(samples_.size());
    for (int s = 0; s < m; ++s)
      if (std::abs(samples_[s] - samples_[(m - s) % m]) > tol) return false;
    return true;
  }
  for (size_t j = 1; j < sin_.size(); ++j)
    if (std::abs(sin_[j]) > tol) return false;
  return true;
}

BoundaryData BoundaryData::combine(const BoundaryData& a, const BoundaryData& b, double sb) {
  if (a.kind_ == Kind::fourier && b.kind_ == Kind::fourier) {
    size_t nc = std::max(a.cos_.size(), b.cos_.size());
    size_t ns = std::max(a.sin_.size(), b.sin_.size());
    std::vector<double> c(nc, 0.0), s(ns, 0.0);
    for (size_t j = 1; j < nc; ++j) c[j] = a.cos_coef((int)j) + sb * b.cos_coef((int)j);
    for (size_t j = 1; j < ns; ++j) s[j] = a.sin_coef((int)j) + sb * b.sin_coef((int)j);
    return fourier(a.a0_ + sb * b.a0_, std::move(c), std::move(s));
  }
  size_t m = 1024;
  if (a.kind_ == Kind::sampled) m = std::max(m, a.samples_.size());
  if (b.kind_ == Kind::sampled) m = std::max(m, b.samples_.size());
  std::vector<double> v(m);
  for (size_t i = 0; i < m; ++i) {
    double t = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    v[i] = a(t) + sb * b(t);
  }
  return sampled(std::move(v));
}

BoundaryData BoundaryData::operator+(const BoundaryData& o) const { return combine(*this, o, 1.0); }
BoundaryData BoundaryData::operator-(const BoundaryData& o) const { return combine(*this, o, -1.0); }

BoundaryData BoundaryData::operator*(double s) const {
  BoundaryData r = *this;
  r.a0_ *= s;
  for (double& c : r.cos_) c *= s;
  for (double& c : r.sin_) c *= s;
  for (double& c : r.samples_) c *= s;
  return r;
}

double BoundaryData::spectral_norm(int k) const {
  if (kind_ == Kind::sampled) throw ValidationError("spectral norm needs a Fourier representation");
  double r = std::abs(a0_);
  const int J = static_cast<int>(std::max(cos_.size(), sin_.size()));
  for (int j = 1; j < J; ++j)
    r += std::max(1.0, std::pow(static_cast<double>(j), k)) * std::hypot(cos_coef(j), sin_coef(j));
  return r;
}

} // namespace slu1
