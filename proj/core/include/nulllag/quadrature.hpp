#pragma once

// Gauss-Legendre rules on [0,1], the unit cube and its boundary.

#include <array>
#include <vector>

namespace nulllag {

struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule on [0,1]; exact for polynomials of degree <= 2n - 1.
GaussRule1D gauss_legendre(int n);

/// Smallest n with 2n - 1 >= degree.
int required_order(int degree);

struct CubePoint {
  std::array<double, 3> x;
  double w;
};

/// Tensor-product rule on [0,1]^3, exact when every per-variable degree is <= 2n - 1.
std::vector<CubePoint> cube_rule(int n);

struct SurfacePoint {
  std::array<double, 3> x;
  std::array<double, 3> normal;
  double w;
};

/// n x n rules on each of the six faces, outward unit normals.
std::vector<SurfacePoint> cube_surface_rule(int n);

}  // namespace nulllag
