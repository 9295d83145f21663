#pragma once

#include "slu1/solver.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace slu1 {

/// U(1)-orbits of the grid rows as triangulated surfaces in C^3 = R^6.
/// Vertex coordinates are (Re z1, Im z1, Re z2, Im z2, Re z3, Im z3) with
/// z1 z2 = v + iy, z3 = x + iu, |z1|^2 - |z2|^2 = 2a.
struct EmbeddedMesh {
  struct Source {
    double x = 0, y = 0, theta = 0;
    int node = -1;
    bool collapsed = false;  ///< U(1)-fixed point, shared by the whole orbit
  };
  double a = 0;
  std::vector<std::array<double, 6>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Source> sources;

  /// Number of collapsed (fixed-point) vertices.
  int fixed_points() const;
};

/// Embeds every node along `theta_samples` angles. Where a = 0 and
/// v^2 + y^2 < fixed_tol^2 the orbit collapses to one vertex (0, 0, x + iu).
EmbeddedMesh embed(const SolutionPair& pair, int theta_samples = 32, double fixed_tol = 1e-8);

/// Point of C^3 over (x, y) at angle theta for values (u, v).
std::array<double, 6> embed_point(double a, double x, double y, double u, double v, double theta);

enum class Projection { z1_z3re, z3_z1re, pca };
Projection parse_projection(const std::string& s);
std::string to_string(Projection p);

/// OBJ with vertices projected to R^3.
void write_obj(std::ostream& os, const EmbeddedMesh& mesh, Projection proj = Projection::z1_z3re);
/// Sidecar CSV with the full R^6 coordinates and (x, y, theta) provenance.
void write_r6_csv(std::ostream& os, const EmbeddedMesh& mesh);

} // namespace slu1
