#include "slu1/embed.hpp"
#include "slu1/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace slu1 {

int EmbeddedMesh::fixed_points() const {
  int c = 0;
  for (const auto& s : sources) c += s.collapsed;
  return c;
}

std::array<double, 6> embed_point(double a, double x, double y, double u, double v, double theta) {
  const std::complex<double> w(v, y), e = std::polar(1.0, theta);
  const double r = std::sqrt(a * a + v * v + y * y);
  std::complex<double> z1, z2;
  if (a >= 0) {
    double m = std::sqrt(a + r);
    z1 = m * e;
    if (m > 0) z2 = w / z1;
    else if (std::abs(w) > 0) throw NumericalError("embedding: division by zero");
  } else {
    double m = std::sqrt(-a + r);
    z2 = m * std::conj(e);
    if (m > 0) z1 = w / z2;
    else if (std::abs(w) > 0) throw NumericalError("embedding: division by zero");
  }
  return {z1.real(), z1.imag(), z2.real(), z2.imag(), x, u};
}

EmbeddedMesh embed(const SolutionPair& pair, int theta_samples, double fixed_tol) {
  if (theta_samples < 16) throw ValidationError("embedding needs at least 16 theta samples");
  const Domain& d = *pair.domain();
  EmbeddedMesh mesh;
  mesh.a = pair.a;
  const int T = theta_samples;
  // vertex ids per (node, theta); collapsed orbits share one id
  std::vector<int> first(d.size());
  std::vector<char> collapsed(d.size(), 0);
  for (int k = 0; k < d.size(); ++k) {
    const double x = d.x(k), y = d.y(k), u = pair.u[k], v = pair.v[k];
    first[k] = static_cast<int>(mesh.vertices.size());
    if (pair.a == 0 && v * v + y * y < fixed_tol * fixed_tol) {
      collapsed[k] = 1;
      mesh.vertices.push_back({0, 0, 0, 0, x, u});
      mesh.sources.push_back({x, y, 0.0, k, true});
      continue;
    }
    for (int t = 0; t < T; ++t) {
      double th = 2 * std::numbers::pi * t / T;
      mesh.vertices.push_back(embed_point(pair.a, x, y, u, v, th));
      mesh.sources.push_back({x, y, th, k, false});
    }
  }
  auto vid = [&](int k, int t) { return collapsed[k] ? first[k] : first[k] + (t % T); };
  // each lattice row edge swept by the U(1) action, stitched periodically in theta
  for (int k = 0; k < d.size(); ++k) {
    int e = d.links(k)[East].node;
    if (e < 0) continue;
    for (int t = 0; t < T; ++t) {
      int a0 = vid(k, t), a1 = vid(k, t + 1), b0 = vid(e, t), b1 = vid(e, t + 1);
      if (a0 != a1 && b0 != b1) {
        mesh.triangles.push_back({a0, b0, b1});
        mesh.triangles.push_back({a0, b1, a1});
      } else if (a0 == a1 && b0 != b1) {
        mesh.triangles.push_back({a0, b0, b1});
      } else if (a0 != a1 && b0 == b1) {
        mesh.triangles.push_back({a0, b0, a1});
      }
    }
  }
  return mesh;
}

Projection parse_projection(const std::string& s) {
  if (s == "z1-z3re") return Projection::z1_z3re;
  if (s == "z3-z1re") return Projection::z3_z1re;
  if (s == "pca") return Projection::pca;
  throw ValidationError("unknown projection '" + s + "'");
}

std::string to_string(Projection p) {
  switch (p) {
    case Projection::z1_z3re: return "z1-z3re";
    case Projection::z3_z1re: return "z3-z1re";
    case Projection::pca: return "pca";
  }
  return "?";
}

void write_obj(std::ostream& os, const EmbeddedMesh& mesh, Projection proj) {
  const size_t N = mesh.vertices.size();
  Eigen::Matrix<double, 3, 6> P = Eigen::Matrix<double, 3, 6>::Zero();
  Eigen::Matrix<double, 6, 1> mean = Eigen::Matrix<double, 6, 1>::Zero();
  if (proj == Projection::z1_z3re) {
    P(0, 0) = P(1, 1) = P(2, 4) = 1;
  } else if (proj == Projection::z3_z1re) {
    P(0, 4) = P(1, 5) = P(2, 0) = 1;
  } else {
    for (const auto& v : mesh.vertices) mean += Eigen::Map<const Eigen::Matrix<double, 6, 1>>(v.data());
    if (N) mean /= static_cast<double>(N);
    Eigen::Matrix<double, 6, 6> C = Eigen::Matrix<double, 6, 6>::Zero();
    for (const auto& v : mesh.vertices) {
      Eigen::Matrix<double, 6, 1> c = Eigen::Map<const Eigen::Matrix<double, 6, 1>>(v.data()) - mean;
      C += c * c.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(C);
    for (int r = 0; r < 3; ++r) {
      Eigen::Matrix<double, 6, 1> e = es.eigenvectors().col(5 - r);
      int big = 0;
      e.cwiseAbs().maxCoeff(&big);
      if (e[big] < 0) e = -e;  // deterministic orientation
      P.row(r) = e.transpose();
    }
  }
  char buf[128];
  os << "# projection " << to_string(proj) << "\n";
  for (const auto& v : mesh.vertices) {
    Eigen::Vector3d q = P * (Eigen::Map<const Eigen::Matrix<double, 6, 1>>(v.data()) - mean);
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", q[0], q[1], q[2]);
    os << buf;
  }
  for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_r6_csv(std::ostream& os, const EmbeddedMesh& mesh) {
  os << "x,y,theta,fixed,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3\n";
  char buf[512];
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& v = mesh.vertices[i];
    const auto& s = mesh.sources[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x, s.y, s.theta,
                  s.collapsed ? 1 : 0, v[0], v[1], v[2], v[3], v[4], v[5]);
    os << buf;
  }
}

} // namespace slu1
