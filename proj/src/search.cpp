#include "slu1/search.hpp"
#include "slu1/error.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace slu1 {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier coefficients of phi as (a0, c_j, s_j); sampled data is rejected.
struct Fourier {
  std::vector<double> c, s;  // index = mode
  int J = 0;
};

Fourier coefficients(const BoundaryData& phi) {
  if (phi.kind() != BoundaryData::Kind::fourier) throw ValidationError("stationary points need Fourier data");
  Fourier f;
  f.J = phi.max_mode();
  f.c.resize(f.J + 1);
  f.s.resize(f.J + 1);
  for (int j = 1; j <= f.J; ++j) {
    f.c[j] = phi.cos_coef(j);
    f.s[j] = phi.sin_coef(j);
  }
  return f;
}

// k-th theta-derivative at t.
double deriv(const Fourier& f, double t, int k) {
  double r = 0;
  for (int j = 1; j <= f.J; ++j) {
    // d^k/dt^k of c cos(jt) + s sin(jt) = j^k [c cos(jt + k pi/2) + s sin(jt + k pi/2)]
    double ph = j * t + k * 0.5 * kPi;
    r += std::pow(static_cast<double>(j), k) * (f.c[j] * std::cos(ph) + f.s[j] * std::sin(ph));
  }
  return r;
}

double deriv_scale(const Fourier& f, int k) {
  double r = 0;
  for (int j = 1; j <= f.J; ++j) r += std::pow(static_cast<double>(j), k) * std::hypot(f.c[j], f.s[j]);
  return r;
}

double root_in(const std::function<double(double)>& g, double lo, double hi, double glo, double ghi) {
  boost::uintmax_t it = 100;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * (1 + std::abs(a)); };
  auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, it);
  return 0.5 * (r.first + r.second);
}

} // namespace

StationaryCount stationary_points(const BoundaryData& phi) {
  const Fourier f = coefficients(phi);
  StationaryCount out;
  if (f.J == 0) throw ValidationError("constant datum has no isolated stationary points");
  const int N = std::max(4096, 64 * f.J);
  const double s1 = deriv_scale(f, 1);
  // derivative samples by the recurrence e^{ij t}
  std::vector<double> g(N + 1);
  for (int s = 0; s <= N; ++s) g[s] = deriv(f, 2 * kPi * s / N, 1);
  auto d1 = [&](double t) { return deriv(f, t, 1); };
  auto d2 = [&](double t) { return deriv(f, t, 2); };
  std::vector<double> roots;
  const double zero_band = 1e-13 * s1;
  for (int s = 0; s < N; ++s) {
    double t0 = 2 * kPi * s / N, t1 = 2 * kPi * (s + 1) / N;
    if (std::abs(g[s]) <= zero_band) {
      roots.push_back(t0);
    } else if (std::abs(g[s + 1]) > zero_band && (g[s] > 0) != (g[s + 1] > 0)) {
      roots.push_back(root_in(d1, t0, t1, g[s], g[s + 1]));
    }
    // touching zero: local minimum of |g| without a sign change
    int sp = (s + N - 1) % N;
    if (std::abs(g[s]) > zero_band && std::abs(g[s]) < 1e-6 * s1 && std::abs(g[s]) <= std::abs(g[sp]) &&
        std::abs(g[s]) <= std::abs(g[s + 1]) && (g[sp] > 0) == (g[s] > 0) && (g[s + 1] > 0) == (g[s] > 0)) {
      double a = t0 - 2 * kPi / N, b = t1;
      double ga = d2(a), gb = d2(b);
      double t = (ga > 0) != (gb > 0) ? root_in(d2, a, b, ga, gb) : t0;
      if (std::abs(d1(t)) <= 1e-9 * s1) roots.push_back(t);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> uniq;
  const double sep = 3.0 * 2 * kPi / N;
  for (double r : roots) {
    r = std::fmod(r, 2 * kPi);
    if (!uniq.empty() && r - uniq.back() < sep) continue;
    uniq.push_back(r);
  }
  if (uniq.size() > 1 && uniq.front() + 2 * kPi - uniq.back() < sep) uniq.pop_back();
  for (double t : uniq) {
    StationaryPoint p{t, 0};
    const int kmax = 2 * f.J;
    for (int k = 1; k <= kmax; ++k)
      if (std::abs(deriv(f, t, k + 1)) > 1e-7 * deriv_scale(f, k + 1)) {
        p.order = k;
        break;
      }
    if (p.order == 0) throw NumericalError("stationary point order could not be determined");
    out.points.push_back(p);
    out.total += p.order;
  }
  return out;
}

StationaryCount stationary_points(const std::vector<double>& alphas, const std::vector<double>& betas,
                                  const BoundaryData* psi) {
  if (alphas.size() != betas.size()) throw ValidationError("alphas and betas must have equal length");
  const int n = static_cast<int>(alphas.size());
  std::vector<double> c(n + 1, 0.0), s(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    c[j] = alphas[j - 1];
    s[j] = betas[j - 1];
  }
  BoundaryData phi = BoundaryData::fourier(0.0, c, s);
  if (psi) phi = phi + *psi;
  StationaryCount r = stationary_points(phi);
  if (!psi) {
    for (const auto& p : r.points)
      if (p.order > 2 * n - 1) throw NumericalError("degenerate fit: stationary order above 2n-1");
    if (r.total > 2 * n) throw NumericalError("more than 2n stationary points for a degree-n Fourier sum");
  }
  return r;
}

double budget_constant(int n) {
  // calibrate_budget_constant(n) with 1000 samples, seed 1
  switch (n) {
    case 1: return 1.0;
    case 2: return 0x1.0p-10;
    case 3: return 0x1.0p-25;
    case 4: return 0x1.0p-39;
  }
  throw ValidationError("no shipped budget constant for n > 4; calibrate one");
}

double calibrate_budget_constant(int n, int samples, std::uint64_t seed) {
  if (n < 1) throw ValidationError("n must be positive");
  std::mt19937_64 rng(seed);
  auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const int J = 2 * n + 2;
  struct Sample {
    BoundaryData psi;
    std::vector<double> dir;
    double norm2;
  };
  std::vector<Sample> ss;
  for (int i = 0; i < samples; ++i) {
    std::vector<double> c(J + 1, 0.0), s(J + 1, 0.0);
    for (int j = 1; j <= J; ++j) {
      c[j] = uni();
      s[j] = uni();
    }
    Sample S;
    S.psi = BoundaryData::fourier(0.0, c, s);
    S.norm2 = std::pow(S.psi.spectral_norm(2 * n), 2);
    S.dir.resize(2 * n);
    double nn = 0;
    for (auto& d : S.dir) {
      d = uni();
      nn += d * d;
    }
    for (auto& d : S.dir) d /= std::sqrt(nn);
    ss.push_back(std::move(S));
  }
  for (double K = 0x1.0p-40; K < 1e12; K *= 2) {
    bool ok = true;
    for (const auto& S : ss) {
      for (double f : {1.0, 2.0, 4.0}) {
        double r = std::sqrt(f * K * S.norm2);
        std::vector<double> al(n), be(n);
        for (int j = 0; j < n; ++j) {
          al[j] = r * S.dir[j];
          be[j] = r * S.dir[n + j];
        }
        if (stationary_points(al, be, &S.psi).total > 2 * n) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return K;
  }
  throw NumericalError("budget calibration did not terminate");
}

int min_multiplicity_compose(int k, int l) {
  if (k < 1 || l < 1) throw ValidationError("multiplicities must be positive");
  return std::min(k, l);
}

namespace {

// Fit of lambda du + i dv by a polynomial of degree k + 1 in (w, conj w).
std::complex<double> fit_coefficient(const SolutionPair& p, const SolutionPair& q, int k, double rho,
                                     Eigen::Vector2d c, double lambda, double& resid) {
  using cd = std::complex<double>;
  const int deg = k + 1;
  std::vector<std::pair<int, int>> mon;
  for (int t = 0; t <= deg; ++t)
    for (int a = t; a >= 0; --a) mon.push_back({a, t - a});
  const int M = 48;
  const double radii[4] = {1.0, 0.75, 0.5, 0.25};
  const int rows = 1 + 4 * M;
  Eigen::MatrixXcd A(rows, mon.size());
  Eigen::VectorXcd b(rows);
  int r = 0;
  auto add = [&](double x, double y) {
    Eigen::Vector2d D = difference(p, q, c.x() + x, c.y() + y);
    cd w(lambda * x, y);
    for (size_t m = 0; m < mon.size(); ++m) A(r, m) = std::pow(w, mon[m].first) * std::pow(std::conj(w), mon[m].second);
    b[r] = cd(lambda * D.x(), D.y());
    ++r;
  };
  add(0, 0);
  for (double f : radii)
    for (int s = 0; s < M; ++s) {
      double t = 2 * kPi * (s + 0.5 * (f < 0.6)) / M;
      add(f * rho * std::cos(t), f * rho * std::sin(t));
    }
  // column scaling keeps the normal equations well conditioned
  Eigen::VectorXd sc(mon.size());
  for (size_t m = 0; m < mon.size(); ++m) sc[m] = std::max(1e-300, A.col(m).norm());
  Eigen::MatrixXcd As = A * sc.cwiseInverse().asDiagonal();
  Eigen::VectorXcd x = As.colPivHouseholderQr().solve(b);
  resid = (As * x - b).norm() / std::sqrt(static_cast<double>(rows));
  x = x.cwiseQuotient(sc.cast<cd>());
  for (size_t m = 0; m < mon.size(); ++m)
    if (mon[m].first == k && mon[m].second == 0) return x[m];
  return 0.0;
}

} // namespace

LeadingCoefficient leading_coefficient(const SolutionPair& pair, const SolutionPair& hat, int k, double rho,
                                       Eigen::Vector2d center, bool check) {
  if (k < 0) throw ValidationError("order k must be nonnegative");
  const Domain& d = *pair.domain();
  if (!(rho > 0) || center.norm() + rho > d.interp_radius()) throw ValidationError("fit circle leaves the domain interior");
  LeadingCoefficient L;
  const double v0 = interpolate(pair.v, center.x(), center.y());
  L.lambda = std::sqrt(2.0) * std::pow(v0 * v0 + center.y() * center.y() + pair.a * pair.a, 0.25);
  if (!(L.lambda > 0)) throw NumericalError("lambda vanishes: fit undefined at a singular point");
  L.rho = rho;
  L.threshold = 1e-6 * std::pow(rho * std::max(1.0, L.lambda), k);
  L.C = fit_coefficient(pair, hat, k, rho, center, L.lambda, L.residual);
  if (check) {
    double r2 = 0;
    std::complex<double> C2 = fit_coefficient(pair, hat, k, 0.5 * rho, center, L.lambda, r2);
    if (std::abs(C2 - L.C) > 0.1 * std::max(std::abs(L.C), L.threshold))
      throw NumericalError("leading coefficient unstable under fit radius halving");
  }
  return L;
}

void SearchProblem::validate() const {
  if (!domain) throw ValidationError("search needs a domain");
  if (domain->kind != DomainKind::unit_disc) throw ValidationError("search is defined on the unit disc");
  if (n < 1) throw ValidationError("target multiplicity n must be at least 1");
  if (!gamma.empty() && static_cast<int>(gamma.size()) != n) throw ValidationError("gamma needs n entries");
  if (psi.kind() != BoundaryData::Kind::fourier) throw ValidationError("psi must be given in Fourier form");
  if (!(root_tol > 0)) throw ValidationError("root tolerance must be positive");
  opts.validate();
}

bool SearchProblem::symmetric() const {
  for (double g : gamma)
    if (g != 0) return false;
  return psi.is_even();
}

namespace {

SolutionPair zero_pair(const DomainPtr& d, double a) {
  SolutionPair p;
  p.a = a;
  p.u = GridField(d);
  p.v = GridField(d);
  p.f = GridField(d);
  p.provenance = Provenance::exact_model;
  return p;
}

struct Coefs {
  std::vector<double> al, be;
};

class Searcher {
public:
  Searcher(const SearchProblem& P, SearchResult& R) : P_(P), R_(R), d_(P.domain) {
    n_ = P.n;
    sym_ = P.symmetric();
    K_ = P.budget_K > 0 ? P.budget_K : budget_constant(n_);
    std::vector<double> s(n_ + 1, 0.0);
    for (int j = 1; j <= n_ && !P.gamma.empty(); ++j) s[j] = P.gamma[j - 1];
    hat_data_ = BoundaryData::fourier(0.0, {}, s);
    hat_zero_ = P.gamma.empty() || std::all_of(P.gamma.begin(), P.gamma.end(), [](double g) { return g == 0; });
    norm_ = (P.psi - hat_data_).spectral_norm(2 * n_);
    R_.budget_limit = K_ * norm_ * norm_;
    rho_ = 4 * d_->h;
    guess_.al.assign(n_, 0.0);
    guess_.be.assign(n_, 0.0);
    R_.symmetric = sym_;
  }

  const BoundaryData& hat_data() const { return hat_data_; }
  bool hat_zero() const { return hat_zero_; }

  BoundaryData datum(const Coefs& c) const {
    std::vector<double> cc(n_ + 1, 0.0), ss(n_ + 1, 0.0);
    for (int j = 1; j <= n_; ++j) {
      cc[j] = c.al[j - 1];
      ss[j] = c.be[j - 1];
    }
    return P_.psi + BoundaryData::fourier(0.0, cc, ss);
  }

  // Starts a stage at parameter a, warm-starting from the previous stage.
  void stage(double a) {
    a_ = a;
    cache_.clear();
    if (hat_zero_) {
      hat_ = std::make_shared<SolutionPair>(zero_pair(d_, a));
    } else {
      const Eigen::VectorXd* init = hat_ && hat_->f ? &hat_->f->values : nullptr;
      hat_ = std::make_shared<SolutionPair>(solve_potential(d_, hat_data_, a, P_.opts, init));
      ++R_.solves;
    }
  }

  std::shared_ptr<const SolutionPair> solve(const Coefs& c) {
    std::vector<long long> key;
    const double q = P_.root_tol / 10;
    for (double x : c.al) key.push_back(std::llround(x / q));
    for (double x : c.be) key.push_back(std::llround(x / q));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (cache_.size() > 512) cache_.clear();
    SolutionPair s;
    try {
      s = solve_potential(d_, datum(c), a_, P_.opts, warm_.size() ? &warm_ : nullptr);
    } catch (const NewtonDivergence&) {
      if (!base_.size()) throw;
      s = solve_potential(d_, datum(c), a_, P_.opts, &base_);
    }
    ++R_.solves;
    warm_ = s.f->values;
    auto sp = std::make_shared<const SolutionPair>(std::move(s));
    cache_.emplace(key, sp);
    return sp;
  }

  void set_base() { base_ = warm_; }

  double lambda_of(const SolutionPair& p) const {
    double v0 = p.v[d_->origin()];
    return std::sqrt(2.0) * std::pow(v0 * v0 + a_ * a_, 0.25);
  }

  // Level-L functional C_{L-1} and its vanishing threshold.
  std::pair<std::complex<double>, double> level_value(int L, const SolutionPair& p) const {
    const Domain& d = *d_;
    const int o = d.origin();
    const double lam = lambda_of(p);
    const double du0 = p.u[o] - hat_->u[o], dv0 = p.v[o] - hat_->v[o];
    if (L == 1) return {{lam * du0, dv0}, 1e-6};
    if (sym_ && L == 2) {
      int up = d.links(o)[North].node, dn = d.links(o)[South].node;
      double uy = ((p.u[up] - hat_->u[up]) - (p.u[dn] - hat_->u[dn])) / (2 * d.h);
      return {{0.0, -lam * uy}, 1e-6 * rho_ * std::max(1.0, lam)};
    }
    LeadingCoefficient lc = leading_coefficient(p, *hat_, L - 1, rho_, {0, 0}, false);
    return {lc.C, lc.threshold};
  }

  // Real scalar whose root is the symmetric level-L condition.
  double sym_scalar(int L, const SolutionPair& p) const {
    const Domain& d = *d_;
    const int o = d.origin();
    if (L == 1) return p.v[o] - hat_->v[o];
    if (L == 2) {
      int up = d.links(o)[North].node, dn = d.links(o)[South].node;
      return -((p.u[up] - hat_->u[up]) - (p.u[dn] - hat_->u[dn])) / (2 * d.h);
    }
    return level_value(L, p).first.imag();
  }

  // 1D root of g near x0: bracket by expansion, then TOMS 748.
  double root_1d(const std::function<double(double)>& g, double x0, double step, int level) {
    double f0 = g(x0);
    if (f0 == 0) return x0;
    double x1 = x0 + step, f1 = g(x1);
    int evals = 2;
    const double cap = 4 * std::max(1.0, std::sqrt(R_.budget_limit)) + 4 * std::abs(x0);
    while ((f0 > 0) == (f1 > 0)) {
      if (f1 == 0) return x1;
      if (++evals > 60 || std::abs(x1) > cap) {
        std::ostringstream os;
        os << "root-find failure at level " << level << ": no sign change near " << x0 << " (|F| " << std::abs(f0)
           << ")";
        throw NumericalError(os.str());
      }
      // secant-guided expansion toward the root, doubling the step
      double dir = (std::abs(f1) < std::abs(f0)) ? (x1 - x0) : (x0 - x1);
      double nx = x1 + (dir > 0 ? 1 : -1) * 2 * std::abs(x1 - x0);
      if (std::abs(f1) >= std::abs(f0)) nx = x0 + (dir > 0 ? 1 : -1) * 2 * std::abs(x1 - x0);
      if (std::abs(f1) < std::abs(f0)) {
        x0 = x1;
        f0 = f1;
      }
      x1 = nx;
      f1 = g(x1);
    }
    double lo = std::min(x0, x1), hi = std::max(x0, x1);
    double flo = lo == x0 ? f0 : f1, fhi = hi == x1 ? f1 : f0;
    const double tol = P_.root_tol;
    boost::uintmax_t it = 80;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi,
                                               [tol](double a, double b) { return std::abs(b - a) <= tol; }, it);
    return 0.5 * (r.first + r.second);
  }

  // Adjusts c's coefficients of levels 1..L so the level conditions hold.
  std::shared_ptr<const SolutionPair> solve_level(int L, Coefs& c) {
    if (L == 0) return solve(c);
    const int j = L - 1;
    const double step = first_stage_ ? 0.02 : 1e-3;
    if (sym_) {
      c.be.assign(n_, 0.0);
      Coefs inner = c;
      auto g = [&](double x) {
        Coefs t = inner;
        t.al[j] = x;
        auto p = solve_level(L - 1, t);
        inner = t;
        inner.al[j] = c.al[j];
        return sym_scalar(L, *p);
      };
      c.al[j] = root_1d(g, c.al[j], step, L);
      for (int i = 0; i < j; ++i) c.al[i] = inner.al[i];
      return solve_level(L - 1, c);
    }
    if (L == 1) {
      auto g = [&](double x) {
        Coefs t = c;
        t.al[0] = x;
        auto p = solve(t);
        return p->v[d_->origin()] - hat_->v[d_->origin()];
      };
      c.al[0] = root_1d(g, c.al[0], step, 1);
      auto p = solve(c);
      // beta_1 translates u by a constant
      c.be[0] -= p->u[d_->origin()] - hat_->u[d_->origin()];
      return solve(c);
    }
    // general level: 2D Newton with finite-difference Jacobian
    Coefs inner = c;
    auto F = [&](double x, double y) {
      Coefs t = inner;
      t.al[j] = x;
      t.be[j] = y;
      auto p = solve_level(L - 1, t);
      inner = t;
      return std::make_pair(level_value(L, *p), t);
    };
    double x = c.al[j], y = c.be[j];
    auto [Fv, ct] = F(x, y);
    std::complex<double> Fc = Fv.first;
    const double thr = Fv.second;
    const double h = 1e-4;
    for (int it = 0; it < 40 && std::abs(Fc) > 1e-2 * thr; ++it) {
      std::complex<double> Fx = F(x + h, y).first.first, Fy = F(x, y + h).first.first;
      Eigen::Matrix2d J;
      J << (Fx - Fc).real() / h, (Fy - Fc).real() / h, (Fx - Fc).imag() / h, (Fy - Fc).imag() / h;
      Eigen::Vector2d st = J.fullPivLu().solve(Eigen::Vector2d(-Fc.real(), -Fc.imag()));
      if (!st.allFinite()) throw NumericalError("root-find failure: singular level Jacobian");
      double t = 1;
      bool moved = false;
      for (; t >= 1.0 / 256; t *= 0.5) {
        auto [Fn, cn] = F(x + t * st[0], y + t * st[1]);
        if (std::abs(Fn.first) < std::abs(Fc)) {
          x += t * st[0];
          y += t * st[1];
          Fc = Fn.first;
          ct = cn;
          moved = true;
          break;
        }
      }
      if (!moved || t * st.norm() < P_.root_tol) break;
    }
    c = ct;
    c.al[j] = x;
    c.be[j] = y;
    return solve_level(L - 1, c);
  }

  // Degree of the level-L map at its root: the sign change of the real
  // scalar (symmetric case) or the winding along a small parameter circle.
  int degree_certificate(int L, const Coefs& root, double r) {
    const int j = L - 1;
    auto eval = [&](double t) {
      Coefs c = root;
      c.al[j] += r * std::cos(t);
      c.be[j] += r * std::sin(t);
      auto p = solve_level(L - 1, c);
      return level_value(L, *p).first;
    };
    if (sym_) {
      auto g = [&](double x) {
        Coefs c = root;
        c.al[j] = x;
        return sym_scalar(L, *solve_level(L - 1, c));
      };
      double lo = g(root.al[j] - r), hi = g(root.al[j] + r);
      return ((hi > 0) - (hi < 0) - (lo > 0) + (lo < 0)) / 2;
    }
    // adaptive arcs: split until consecutive arguments differ by < pi/4
    std::vector<std::pair<double, std::complex<double>>> pts;
    for (int s = 0; s <= 8; ++s) {
      double t = 2 * kPi * s / 8;
      pts.push_back({t, s == 8 ? pts.front().second : eval(t)});
    }
    for (size_t i = 0; i + 1 < pts.size();) {
      double d = std::abs(std::arg(pts[i + 1].second / pts[i].second));
      if (d >= kPi / 4 && pts[i + 1].first - pts[i].first > 2 * kPi / 1024) {
        double t = 0.5 * (pts[i].first + pts[i + 1].first);
        pts.insert(pts.begin() + i + 1, {t, eval(t)});
      } else {
        ++i;
      }
    }
    std::vector<Eigen::Vector2d> loop;
    for (size_t i = 0; i + 1 < pts.size(); ++i) loop.push_back({pts[i].second.real(), pts[i].second.imag()});
    return winding_number(loop);
  }

  Coefs run_stage(double a) {
    stage(a);
    Coefs c = guess_;
    auto p = solve_level(n_, c);
    set_base();
    guess_ = c;
    first_stage_ = false;
    return c;
  }

  std::shared_ptr<const SolutionPair> hat() const { return hat_; }
  double rho() const { return rho_; }
  bool symmetric() const { return sym_; }

private:
  const SearchProblem& P_;
  SearchResult& R_;
  DomainPtr d_;
  int n_ = 1;
  bool sym_ = false, hat_zero_ = true, first_stage_ = true;
  double K_ = 1, norm_ = 0, a_ = 0, rho_ = 0;
  BoundaryData hat_data_;
  std::shared_ptr<SolutionPair> hat_;
  std::map<std::vector<long long>, std::shared_ptr<const SolutionPair>> cache_;
  Eigen::VectorXd warm_, base_;
  Coefs guess_;
};

void finish_levels(Searcher& S, SearchResult& R, const SearchProblem& P, const Coefs& c) {
  auto p = S.solve(c);
  R.C_levels.clear();
  R.C_thresholds.clear();
  for (int L = 1; L <= P.n; ++L) {
    auto [C, thr] = S.level_value(L, *p);
    R.C_levels.push_back(std::abs(C));
    R.C_thresholds.push_back(thr);
    if (!(std::abs(C) < thr)) {
      std::ostringstream os;
      os << "root-find failure at level " << L << ": |C| = " << std::abs(C) << " above threshold " << thr;
      throw NumericalError(os.str());
    }
  }
  try {
    R.C_next = std::abs(leading_coefficient(*p, *S.hat(), P.n, S.rho(), {0, 0}, false).C);
  } catch (const NumericalError&) {
    R.C_next = NAN;
  }
  R.alphas = c.al;
  R.betas = c.be;
  R.budget_used = 0;
  for (int j = 0; j < P.n; ++j) R.budget_used += c.al[j] * c.al[j] + c.be[j] * c.be[j];
  if (R.budget_used > R.budget_limit * (1 + 1e-12) + 1e-24)
    throw NumericalError("coefficient budget violated: K_n mis-calibrated");
}

} // namespace

SearchResult search(const SearchProblem& P) {
  P.validate();
  if (P.a == 0) throw ValidationError("search needs a != 0; use search_limit_a0");
  SearchResult R;
  Searcher S(P, R);
  Coefs c = S.run_stage(P.a);
  finish_levels(S, R, P, c);
  R.pair = *S.solve(c);
  R.pair_hat = *S.hat();
  R.provenance = {"direct-solve a=" + format_double(P.a)};
  R.trace.push_back({P.a, c.al, c.be, 0.0});
  // the level-n map has degree +-1 about its root
  if (P.n >= 2 || S.symmetric()) {
    int deg = S.degree_certificate(P.n, c, 1e-3);
    if (std::abs(deg) != 1) throw NumericalError("degree certificate of the level map is not +-1");
  }
  ProbeResult pr = probe_multiplicity(R.pair, R.pair_hat, {0, 0});
  R.certified_multiplicity = pr.multiplicity;
  R.probe_radius = pr.radius;
  if (R.certified_multiplicity < P.n) throw NumericalError("certified multiplicity below the target n");
  try {
    R.reflected_multiplicity = probe_multiplicity(R.pair, reflected(R.pair), {0, 0}).multiplicity;
  } catch (const NumericalError&) {
    R.reflected_multiplicity = -1;
  }
  return R;
}

SearchResult search_limit_a0(const SearchProblem& P0) {
  SearchProblem P = P0;
  P.a = 0;
  P.validate();
  SearchResult R;
  Searcher S(P, R);
  Coefs c, prev;
  bool have_prev = false;
  for (double a : P.opts.schedule) {
    c = S.run_stage(a);
    StageCoefficients st{a, c.al, c.be, 0.0};
    if (have_prev)
      for (int j = 0; j < P.n; ++j)
        st.increment = std::max({st.increment, std::abs(c.al[j] - prev.al[j]), std::abs(c.be[j] - prev.be[j])});
    R.trace.push_back(st);
    prev = c;
    have_prev = true;
  }
  if (R.trace.size() >= 2 && R.trace.back().increment > P.coef_cauchy_tol) {
    std::ostringstream os;
    os << "non-convergent coefficient path: increments";
    for (const auto& st : R.trace) os << ' ' << st.increment;
    throw NumericalError(os.str());
  }
  finish_levels(S, R, P, c);
  R.provenance.push_back("search along schedule to a=" + format_double(P.opts.schedule.back()));

  R.pair = continuation_to_zero(P.domain, S.datum(c), P.opts);
  R.pair_hat = S.hat_zero() ? zero_pair(P.domain, 0.0) : continuation_to_zero(P.domain, S.hat_data(), P.opts);
  R.provenance.push_back("continuation-limit");

  const Domain& d = *P.domain;
  SingularityScan scan = find_singularities(R.pair);
  R.singularities = scan;
  if (scan.whole_axis_singular) {
    double du = 0, dv = 0;
    for (int k = 0; k < d.size(); ++k) {
      int m = d.mirror(k);
      du = std::max(du, std::abs(R.pair.u[k] - R.pair.u[m]));
      dv = std::max(dv, std::abs(R.pair.v[k] + R.pair.v[m]));
    }
    R.symmetric_alternative = du < 1e-8 && dv < 1e-8;
    if (!R.symmetric_alternative) throw NumericalError("axis singular but the symmetric alternative fails");
    return R;
  }
  const SingularityReport* at0 = nullptr;
  for (const auto& s : scan.points)
    if (std::abs(s.b) <= d.h) at0 = &s;
  if (!at0) throw NumericalError("no singular point detected at the origin");
  R.reflected_multiplicity = at0->multiplicity;
  R.probe_radius = at0->probe_radius;
  try {
    R.certified_multiplicity = probe_multiplicity(R.pair, R.pair_hat, {0, 0}).multiplicity;
  } catch (const NumericalError&) {
    R.certified_multiplicity = at0->multiplicity;
  }
  if (R.reflected_multiplicity < P.n) throw NumericalError("certified singularity multiplicity below the target n");
  return R;
}

} // namespace slu1
