#include "slu1/fibration.hpp"
#include "slu1/error.hpp"
#include "slu1/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace slu1 {

FibrationFamily::FibrationFamily(DomainPtr domain, BoundaryData phi, SolverOptions opts, FibreParams box_lo,
                                 FibreParams box_hi)
    : domain_(std::move(domain)), phi_(std::move(phi)), opts_(std::move(opts)), lo_(box_lo), hi_(box_hi) {
  opts_.validate();
  if ((lo_.array() > hi_.array()).any()) throw ValidationError("empty parameter box");
}

bool FibrationFamily::in_box(const FibreParams& p) const {
  return (p.array() >= lo_.array()).all() && (p.array() <= hi_.array()).all();
}

BoundaryData FibrationFamily::datum(const FibreParams& p) const {
  return phi_ + BoundaryData::fourier(0.0, {0.0, p[1]}, {0.0, p[2]});
}

std::shared_ptr<const SolutionPair> FibrationFamily::solve_fibre(const FibreParams& p) const {
  if (!in_box(p)) throw ValidationError("fibre parameters outside the parameter box");
  std::array<double, 3> key{p[0], p[1], p[2]};
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  BoundaryData data = datum(p);
  // the affine part b x + c y is the exact fibre for phi = 0
  Eigen::VectorXd init(domain_->size());
  for (int k = 0; k < domain_->size(); ++k) init[k] = p[1] * domain_->x(k) + p[2] * domain_->y(k);
  SolutionPair s = p[0] != 0 ? solve_potential(domain_, data, p[0], opts_, &init)
                             : continuation_to_zero(domain_, data, opts_, &init);
  auto sp = std::make_shared<const SolutionPair>(std::move(s));
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.emplace(key, sp).first->second;  // first insertion wins
}

void FibrationFamily::solve_all(const std::vector<FibreParams>& ps, int threads) const {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(ps.size())));
  if (threads == 1) {
    for (const auto& p : ps) solve_fibre(p);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < ps.size(); i += threads) solve_fibre(ps[i]);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

bool FibrationFamily::one_max_one_min(const FibreParams& p, const FibreParams& q) const {
  if (p[0] != q[0]) throw ValidationError("fibres must share the parameter a");
  if (p[1] == q[1] && p[2] == q[2]) throw ValidationError("fibre parameters coincide");
  return count_boundary_extrema(datum(p) - datum(q)) == 1;
}

size_t FibrationFamily::cache_size() const {
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.size();
}

DisjointCertificate verify_disjoint(const FibrationFamily& fam, const FibreParams& p, const FibreParams& q) {
  if (!fam.one_max_one_min(p, q)) throw ValidationError("family rule violated: boundary difference is not one-max-one-min");
  auto P = fam.solve_fibre(p), Q = fam.solve_fibre(q);
  const Domain& d = *fam.domain();
  DisjointCertificate cert;
  cert.min_separation = INFINITY;
  auto check = [&](double du, double dv) {
    double s = std::hypot(du, dv);
    cert.min_separation = std::min(cert.min_separation, s);
    ++cert.points_checked;
  };
  for (int k = 0; k < d.size(); ++k) check(P->u[k] - Q->u[k], P->v[k] - Q->v[k]);
  for (int j = 0; j + 1 < d.n; ++j)
    for (int i = 0; i + 1 < d.n; ++i) {
      if (d.index(i, j) < 0 || d.index(i + 1, j) < 0 || d.index(i, j + 1) < 0 || d.index(i + 1, j + 1) < 0) continue;
      double x = d.coord(i) + 0.5 * d.h, y = d.coord(j) + 0.5 * d.h;
      Eigen::Vector2d D = difference(*P, *Q, x, y);
      check(D.x(), D.y());
    }
  if (!(cert.min_separation > 0)) throw NumericalError("fibres intersect: coincident (u,v) at a grid point");
  ZeroReport rep = verify_count(*P, *Q);
  cert.boundary_winding = rep.boundary_winding;
  cert.winding_zero = rep.boundary_winding == 0 && rep.zeroes.empty();
  return cert;
}

C3 fibre_point(const FibrationFamily& fam, const FibreParams& p, double x, double y, double theta) {
  auto P = fam.solve_fibre(p);
  const double u = interpolate(P->u, x, y), v = interpolate(P->v, x, y), a = p[0];
  const std::complex<double> w(v, y), e = std::polar(1.0, theta);
  const double r2 = std::sqrt(a * a + v * v + y * y);
  C3 z;
  if (a >= 0) {
    double m1 = std::sqrt(a + r2);
    z[0] = m1 * e;
    z[1] = m1 > 0 ? w / z[0] : 0.0;
  } else {
    double m2 = std::sqrt(-a + r2);
    z[1] = m2 * std::conj(e);
    z[0] = m2 > 0 ? w / z[1] : 0.0;
  }
  z[2] = {x, u};
  return z;
}

FibreParams invert_point(const FibrationFamily& fam, const C3& z, double tol) {
  const double a = 0.5 * (std::norm(z[0]) - std::norm(z[1]));
  const std::complex<double> w = z[0] * z[1];
  const double x = z[2].real(), y = w.imag();
  const Domain& d = *fam.domain();
  if (!d.contains(x, y) || std::hypot(x, y) > d.interp_radius()) throw ValidationError("point outside fibred region");
  const Eigen::Vector2d target(w.real(), z[2].imag());

  auto psi = [&](const Eigen::Vector2d& bc) {
    auto P = fam.solve_fibre({a, bc[0], bc[1]});
    return Eigen::Vector2d(interpolate(P->v, x, y), interpolate(P->u, x, y));
  };
  // warm start: the b x + c y part shifts (v, u) by about (b, c)
  Eigen::Vector2d bc = target - psi({0, 0});
  Eigen::Vector2d F = psi(bc) - target;
  const double dh = 1e-5;
  for (int it = 0; it < 40 && F.norm() > tol; ++it) {
    Eigen::Matrix2d J;
    J.col(0) = (psi(bc + Eigen::Vector2d(dh, 0)) - psi(bc) ) / dh;
    J.col(1) = (psi(bc + Eigen::Vector2d(0, dh)) - psi(bc)) / dh;
    Eigen::Vector2d step = J.fullPivLu().solve(-F);
    if (!step.allFinite()) throw NumericalError("fibre inversion: singular Jacobian");
    double t = 1.0;
    for (; t >= 1.0 / 64; t *= 0.5) {
      Eigen::Vector2d Fn = psi(bc + t * step) - target;
      if (Fn.norm() < F.norm()) {
        bc += t * step;
        F = Fn;
        break;
      }
    }
    if (t < 1.0 / 64) break;
  }
  if (!(F.norm() <= std::max(tol, 1e-8))) throw NumericalError("fibre inversion did not converge");
  return {a, bc[0], bc[1]};
}

} // namespace slu1
