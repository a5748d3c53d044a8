#pragma once

// Euler operator, action quadrature and null-Lagrangian certification.
//
// A Lagrangian is a function Psi(x, y, p) with x in R^3, y in R^N and
// p in R^{N x 3}, p[j*3 + b] = dy^j/dx^b. The Euler operator is
//
//   E_k = d/dx^g (dPsi/dp[k][g]) - dPsi/dy^k
//
// expanded by the chain rule. With this sign L = 1/2 |grad f|^2 gives
// E = +Laplacian(f).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nulllag/polynomial.hpp"

namespace nulllag {

using Point3 = std::array<double, 3>;

/// Psi = 1/2 z^T Q z with z = (y, p), p laid out as p[j*3 + b] after the N
/// entries of y.
struct QuadraticForm {
  int arity = 0;
  Eigen::MatrixXd q;

  QuadraticForm() = default;
  QuadraticForm(int n, Eigen::MatrixXd matrix);

  /// Builds Q by polarization of an energy that is quadratic in (y, p).
  static QuadraticForm from_energy(int n,
                                   const std::function<double(std::span<const double>, std::span<const double>)>& energy);

  double value(std::span<const double> y, std::span<const double> p) const;
  /// Largest |Q| entry in the (p, p) block.
  double max_pp() const;
  int size() const { return 4 * arity; }
};

using LagrangianFn =
    std::function<double(std::span<const double, 3>, std::span<const double>, std::span<const double>)>;

/// Per-coordinate polynomial degree of x -> Psi(x, y(x), Dy(x)) given the
/// largest per-coordinate degree of the field y.
using DegreeBound = std::function<int(int)>;

class LagrangianEvaluator {
 public:
  LagrangianEvaluator() = default;
  LagrangianEvaluator(int arity, LagrangianFn fn, std::string name = {});

  static LagrangianEvaluator quadratic(QuadraticForm form, std::string name = {});
  static LagrangianEvaluator constant(int arity, double c);

  int arity() const { return arity_; }
  const std::string& name() const { return name_; }
  const std::optional<QuadraticForm>& quadratic_form() const { return quadratic_; }

  LagrangianEvaluator& with_degree_bound(DegreeBound bound) {
    degree_bound_ = std::move(bound);
    return *this;
  }
  std::optional<int> integrand_degree(int field_degree) const;

  /// Throws ValidationError for a non-finite value or wrong argument sizes.
  double operator()(std::span<const double, 3> x, std::span<const double> y, std::span<const double> p) const;

 private:
  int arity_ = 0;
  LagrangianFn fn_;
  std::optional<QuadraticForm> quadratic_;
  DegreeBound degree_bound_;
  std::string name_;
};

enum class ResidualPath { automatic, closed_form, finite_difference };

std::string to_string(ResidualPath path);

struct FdOptions {
  /// Step for argument a is base_step * (1 + |a|); halved once for Richardson.
  double base_step = 1e-3;
};

struct EulerResidual {
  std::vector<double> values;
  /// 1 + max|d2Psi/dp dp| * max|D2y|.
  double scale = 1.0;
  double normalized = 0.0;
  ResidualPath path = ResidualPath::closed_form;
};

EulerResidual euler_residual_at(const LagrangianEvaluator& lag, const Point3& x, const FieldJet& jet,
                                ResidualPath path = ResidualPath::automatic, const FdOptions& fd = {});

EulerResidual euler_residual_detail(const LagrangianEvaluator& lag, const PolyField& y, const Point3& x,
                                    ResidualPath path = ResidualPath::automatic, const FdOptions& fd = {});

/// Plain residual vector E_k(Psi) at x.
std::vector<double> euler_residual(const LagrangianEvaluator& lag, const PolyField& y, const Point3& x,
                                   ResidualPath path = ResidualPath::automatic, const FdOptions& fd = {});

/// Tensor-product Gauss-Legendre quadrature over [0,1]^3. Throws when the
/// Lagrangian declares a degree bound that the order cannot integrate exactly.
double action_integral(const LagrangianEvaluator& lag, const PolyField& y, int order);

/// Quadrature order that integrates the action of y exactly, if known.
std::optional<int> exact_action_order(const LagrangianEvaluator& lag, const PolyField& y);

/// |action(y + b w) - action(y)| with b the cube bubble.
double boundary_dependence_test(const LagrangianEvaluator& lag, const PolyField& y, const PolyField& w, int order);

/// splitmix64 of seed and index; per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Coefficients uniform in [-1, 1] on every monomial of total degree <= degree.
PolyField random_field(std::mt19937_64& rng, int components, int degree);

/// Draws test fields and interior perturbations (vanishing on the cube boundary).
struct FieldSampler {
  std::string name;
  std::function<PolyField(std::mt19937_64&, int components, int degree)> field;
  std::function<PolyField(std::mt19937_64&, int components, int degree)> perturbation;
};

FieldSampler default_sampler();
/// Components [first, first + 3) are gradients of random scalar potentials;
/// perturbations of that block are gradients of bubble^2 * g.
FieldSampler curl_free_sampler(int first);

struct CertifyOptions {
  double residual_tolerance = -1.0;  // < 0: 1e-10 closed form, 1e-6 finite differences
  double action_tolerance = 1e-12;   // relative to max(1, |action|)
  int quadrature_order = 8;          // raised automatically to the exact order
  int boundary_pairs = 3;
  ResidualPath path = ResidualPath::automatic;
  FdOptions fd;
  std::optional<FieldSampler> sampler;
  int threads = 0;  // 0: NULLLAG_THREADS or hardware concurrency
};

inline constexpr double kClosedFormTolerance = 1e-10;
inline constexpr double kFiniteDifferenceTolerance = 1e-6;

struct NullCertificate {
  double max_normalized_residual = 0.0;
  int trials = 0;
  int degree = 0;
  std::uint64_t seed = 0;
  ResidualPath path = ResidualPath::closed_form;
  std::string sampler;
  std::vector<double> boundary_action_deltas;
  std::vector<double> boundary_action_relative;
  int quadrature_order = 0;
  double residual_tolerance = 0.0;
  double action_tolerance = 0.0;
  bool residual_passed = false;
  bool action_passed = false;
  bool passed = false;
};

NullCertificate certify_null(const LagrangianEvaluator& lag, int trials, int degree, std::uint64_t seed,
                             const CertifyOptions& options = {});

/// Thread count honoring NULLLAG_THREADS.
int worker_count(int requested = 0);

/// Runs body(i) for i in [0, n) on worker_count(threads) threads.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace nulllag
