#pragma once

// Degree-2 null Lagrangians from three generator functions S^a(x, y):
//
//   Psi = 1/2 D(a1,a2; i1,i2) p^i1_a1 p^i2_a2 + D(a1; i1) p^i1_a1 + 1/2 D(0;0)
//
// where the D are 2x2 determinants of the partials S^a_i = dS^a/dy^i and
// S^a_|b = dS^a/dx^b, summed over repeated Greek indices. Equivalently
// Psi is the second principal invariant of J^a_b = S^a_|b + S^a_i p^i_b.

#include <array>
#include <random>
#include <vector>

#include "nulllag/polynomial.hpp"
#include "nulllag/tensor.hpp"
#include "nulllag/variational.hpp"

namespace nulllag {

/// Three polynomials in 3 + N variables ordered (x1, x2, x3, y1, ..., yN).
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(int arity, std::array<RationalPolynomial, 3> s);

  int arity() const { return arity_; }
  const std::array<RationalPolynomial, 3>& generators() const { return s_; }
  const RationalPolynomial& operator[](int a) const { return s_.at(static_cast<std::size_t>(a)); }
  int total_degree() const;

  /// dS^a/dy^i and dS^a/dx^b, exact.
  const RationalPolynomial& dy(int a, int i) const;
  const RationalPolynomial& dx(int a, int b) const;

  /// Partials up to second order evaluated at (x, y).
  struct Partials {
    int arity = 0;
    std::vector<double> sy;   // [a*N + i]
    std::vector<double> sx;   // [a*3 + b]
    std::vector<double> syy;  // [(a*N + i)*N + j]
    std::vector<double> syx;  // [(a*N + i)*3 + b]
    std::vector<double> sxx;  // [(a*3 + b)*3 + c]
  };
  /// First partials only when second is false.
  Partials partials(const Point3& x, std::span<const double> y, bool second = true) const;

 private:
  int arity_ = 0;
  std::array<RationalPolynomial, 3> s_;
  std::vector<RationalPolynomial> dy_;  // [a*N + i]
  std::vector<RationalPolynomial> dx_;  // [a*3 + b]
  std::vector<CompiledPolynomial> c_sy_, c_sx_, c_syy_, c_syx_, c_sxx_;
};

/// Coefficients drawn as k/8 with k uniform in [-8, 8] on every monomial of
/// total degree <= degree in 3 + N variables.
GeneratorSet random_generator_set(std::mt19937_64& rng, int arity, int degree);

struct RundCoefficients {
  int arity = 0;
  std::vector<double> D2;  // [((a1*3 + a2)*N + i1)*N + i2]
  std::vector<double> D1;  // [a*N + i]
  double D0 = 0.0;

  double d2(int a1, int a2, int i1, int i2) const {
    return D2[static_cast<std::size_t>(((a1 * 3 + a2) * arity + i1) * arity + i2)];
  }
  double d1(int a, int i) const { return D1[static_cast<std::size_t>(a * arity + i)]; }
};

RundCoefficients rund_coefficients(const GeneratorSet& g, const Point3& x, std::span<const double> y);

/// Psi(x, y, p) from the determinant coefficients re-evaluated at (x, y).
double rund_lagrangian_value(const GeneratorSet& g, const Point3& x, std::span<const double> y,
                             std::span<const double> p);

LagrangianEvaluator build_null_lagrangian(const GeneratorSet& g, std::string name = "rund");

/// N = 6 split into u = y1..y3 and phi = y4..y6. Rank-4 blocks are indexed
/// (a1, a2, i1, i2) with i1, i2 local to their block.
struct MicropolarBlocks {
  Tensor4 D2_uu;
  Tensor4 D2_phiphi;
  Tensor4 D2_uphi;  // i1 in u, i2 in phi
  Matrix3 D1_u;     // (a, i)
  Matrix3 D1_phi;
  double D0 = 0.0;
};

MicropolarBlocks micropolar_block_view(const GeneratorSet& g, const Point3& x, std::span<const double> y);
/// Inverse of the block split; phi-u entries come from D2(a1,a2;i1,i2) = D2(a2,a1;i2,i1).
RundCoefficients reassemble(const MicropolarBlocks& b);

struct AppendixResiduals {
  /// 2 d/dx^a D(a; i) - dD(0;0)/dy^i, per i.
  std::vector<double> r_rq;
  /// d/dx^g D(g,a; k,i) + dD(a;k)/dy^i - dD(a;i)/dy^k, at [(k*3 + a)*N + i].
  std::vector<double> r_rl1;
  /// 1 + (max |first partial| + max |second partial|)^2.
  double scale = 1.0;

  double max_normalized() const;
};

/// Evaluates both identities by the product rule on the partials of S.
AppendixResiduals appendix_identity_residuals(const GeneratorSet& g, const Point3& x, std::span<const double> y);

/// Same identities in exact rational polynomial arithmetic; true when every
/// residual polynomial is identically zero.
bool appendix_identities_exact(const GeneratorSet& g);

}  // namespace nulllag
