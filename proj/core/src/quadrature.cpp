#include "nulllag/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nulllag/tensor.hpp"

namespace nulllag {

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw ValidationError("quadrature order must be >= 1, got " + std::to_string(n));
  GaussRule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  // Newton iteration on P_n over [-1,1], then affine map to [0,1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - z);
    rule.nodes[hi] = 0.5 * (1.0 + z);
    rule.weights[lo] = rule.weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

int required_order(int degree) { return degree <= 1 ? 1 : (degree + 2) / 2; }

std::vector<CubePoint> cube_rule(int n) {
  const auto g = gauss_legendre(n);
  std::vector<CubePoint> pts;
  pts.reserve(static_cast<std::size_t>(n) * n * n);
  for (std::size_t a = 0; a < g.nodes.size(); ++a)
    for (std::size_t b = 0; b < g.nodes.size(); ++b)
      for (std::size_t c = 0; c < g.nodes.size(); ++c)
        pts.push_back({{g.nodes[a], g.nodes[b], g.nodes[c]}, g.weights[a] * g.weights[b] * g.weights[c]});
  return pts;
}

std::vector<SurfacePoint> cube_surface_rule(int n) {
  const auto g = gauss_legendre(n);
  std::vector<SurfacePoint> pts;
  pts.reserve(6u * static_cast<std::size_t>(n) * n);
  for (int axis = 0; axis < kDim; ++axis) {
    const int u = (axis + 1) % kDim;
    const int v = (axis + 2) % kDim;
    for (int side = 0; side < 2; ++side) {
      for (std::size_t a = 0; a < g.nodes.size(); ++a)
        for (std::size_t b = 0; b < g.nodes.size(); ++b) {
          SurfacePoint p{};
          p.x[static_cast<std::size_t>(axis)] = side;
          p.x[static_cast<std::size_t>(u)] = g.nodes[a];
          p.x[static_cast<std::size_t>(v)] = g.nodes[b];
          p.normal[static_cast<std::size_t>(axis)] = side == 0 ? -1.0 : 1.0;
          p.w = g.weights[a] * g.weights[b];
          pts.push_back(p);
        }
    }
  }
  return pts;
}

}  // namespace nulllag
