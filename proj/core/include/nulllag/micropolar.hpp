#pragma once

// Linear micropolar (Cosserat) elasticity: kinematics, energy, constitutive
// law and the null-Lagrangian condition systems on the moduli A, B, D.
//
//   eps_ij = u_i,j + E_kij phi_k,   kap_ij = phi_i,j
//   W = 1/2 eps.A[eps] + 1/2 kap.B[kap] + eps.D[kap]

#include <array>
#include <span>
#include <string>

#include "nulllag/condition_report.hpp"
#include "nulllag/linear_constraints.hpp"
#include "nulllag/polynomial.hpp"
#include "nulllag/symmetry.hpp"
#include "nulllag/tensor.hpp"
#include "nulllag/variational.hpp"

namespace nulllag {

/// Tolerance for the major-symmetry check at construction.
inline constexpr double kModuliSymmetryTolerance = 1e-12;

struct MicropolarModuli {
  Tensor4 A;
  Tensor4 B;
  Tensor4 D;

  /// Rejects non-finite entries and A or B without major symmetry.
  static MicropolarModuli create(const Tensor4& a, const Tensor4& b, const Tensor4& d);
};

struct IsotropicParams {
  double lambda = 0.0;
  double mu = 0.0;
  double kappa = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;

  /// lambda d_ij d_kl + (mu + kappa) d_ik d_jl + mu d_il d_jk
  Tensor4 A() const;
  /// beta1 d_ij d_kl + beta2 d_ik d_jl + beta3 d_il d_jk
  Tensor4 B() const;
  MicropolarModuli moduli() const;
};

struct HemitropicParams {
  double lambda = 0.0;
  double mu = 0.0;
  double kappa = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double zeta = 0.0;
  double nu = 0.0;
  double rho = 0.0;

  Tensor4 A() const;
  Tensor4 B() const;
  /// zeta d_ij d_kl + (nu + rho) d_ik d_jl + nu d_il d_jk
  Tensor4 D() const;
  MicropolarModuli moduli() const;

  /// Parameters obeying mu + lambda = mu + kappa = 0, beta3 + beta1 = beta2 = 0,
  /// nu + zeta = nu + rho = 0.
  static HemitropicParams constrained(double lambda, double beta1, double zeta);
};

/// Matrix of polynomial fields in x.
struct PolyMatrixField {
  std::array<RealPolynomial, 9> entries{RealPolynomial(3), RealPolynomial(3), RealPolynomial(3),
                                        RealPolynomial(3), RealPolynomial(3), RealPolynomial(3),
                                        RealPolynomial(3), RealPolynomial(3), RealPolynomial(3)};

  const RealPolynomial& operator()(int i, int j) const { return entries[static_cast<std::size_t>(3 * i + j)]; }
  RealPolynomial& operator()(int i, int j) { return entries[static_cast<std::size_t>(3 * i + j)]; }
  Matrix3 at(const Point3& x) const;
};

struct StrainWrynessFields {
  PolyMatrixField eps;
  PolyMatrixField kap;
};

struct StrainWryness {
  Matrix3 eps;
  Matrix3 kap;
};

StrainWrynessFields strain_wryness(const PolyField& u, const PolyField& phi);
/// Pointwise from y = (u, phi) and p[j*3 + b] = y^j_,b.
StrainWryness strain_wryness(std::span<const double> y, std::span<const double> p);

double energy_density(const MicropolarModuli& m, const Matrix3& eps, const Matrix3& kap);

struct MicropolarStress {
  Matrix3 sigma;
  Matrix3 mu;
};

/// sigma = A[eps] + D[kap], mu_ij = B_ijkl kap_kl + D_klij eps_kl.
MicropolarStress constitutive(const MicropolarModuli& m, const Matrix3& eps, const Matrix3& kap);

/// Quadratic Lagrangian of the energy density in y = (u, phi).
LagrangianEvaluator micropolar_lagrangian(const MicropolarModuli& m, std::string name = "micropolar");

/// Max over (m, i, n) of |E_mkl D_klin - E_ijk D_jkmn|.
double alternator_commutation_violation(const Tensor4& d);

/// A_ijkl + A_ilkj = 0 for A, B, D; the alternator commutation of D;
/// E_mkl A_ijkl = 0 and its consequence A = 0.
ConditionReport check_null_sufficient(const MicropolarModuli& m);

/// (a) D_ijkl = -D_ilkj; (b) D_ijji = -D_ikki; (c) D_ijjk = D_kikk + D_jijk,
/// (b) and (c) over pairwise distinct i, j, k.
ConditionReport check_claim1(const Tensor4& d);

/// D_ijkl + D_ilkj = 0 together with the alternator commutation.
const LinearConstraintSet& claim1_set1();
/// The three relations of check_claim1.
const LinearConstraintSet& claim1_set2();
/// Orthogonal projections onto the solution spaces (cached).
Tensor4 project_claim1_set1(const Tensor4& d);
Tensor4 project_claim1_set2(const Tensor4& d);

/// Relative tolerance deciding whether a relation set holds in the probe.
inline constexpr double kClaimProbeTolerance = 1e-10;

struct Claim1Probe {
  bool set1_holds = false;
  bool set2_holds = false;
  bool equivalent() const { return set1_holds == set2_holds; }
};

Claim1Probe claim1_probe(const Tensor4& d);
/// True when set-1 holds exactly when set-2 holds for d.
bool claim1_equivalence_probe(const Tensor4& d);

/// A = 0; B_ilkj = -B_ijkl; B_kjil = -B_ijkl; B_ijkl = 0 if i = k or j = l;
/// B_ijkl = B_klij.
ConditionReport check_centrosymmetric_rund(const Tensor4& a, const Tensor4& b);

/// Relation class that the null part of B satisfies.
SymmetryClass4 centrosymmetric_rund_class();
/// Major symmetry plus the swap24 antisymmetry and alternator contraction
/// required of A; admits only A = 0.
SymmetryClass4 micropolar_a_null_class();
/// The relations on A that the Rund-family comparison produces, with the
/// symmetric dependence on the first index pair; admits only A = 0.
SymmetryClass4 micropolar_a_rund_class();

struct BSplit {
  Tensor4 b_hat;
  Tensor4 b_tilde;
  Tensor4 b_ring;
};

BSplit split_B(const Tensor4& b);

/// The 18 entries of B-tilde listed as analogues of the Cauchy relations,
/// 1-based (i, j, k, l).
const std::array<std::array<int, 4>, 18>& cauchy_analogue_entries();

ConditionReport cauchy_analogue(const Tensor4& b_tilde);

struct TildeStructure {
  /// Entries forced to zero by the tilde symmetry class (i = k or j = l).
  int zero_entries = 0;
  /// Major-symmetry pairs among the remaining entries.
  int independent_entries = 0;
  /// Dimension of the space of tilde tensors.
  int tilde_dimension = 0;
};

TildeStructure tilde_structure();

/// 1/2 sum over faces of B~_ijkl phi_i,j phi_k n_l on the unit cube.
double surface_potential(const Tensor4& b_tilde, const PolyField& phi, int order);
/// 1/2 integral of kap.B[kap] over the unit cube, kap = grad phi.
double wryness_volume_energy(const Tensor4& b, const PolyField& phi, int order);

struct PositiveDefiniteCheck {
  bool passed = false;
  /// False when the inequalities checked are only those stated for the
  /// hemitropic case, which do not involve zeta, nu, rho.
  bool complete = true;
  std::string note;
};

PositiveDefiniteCheck positive_definite(const IsotropicParams& p);
PositiveDefiniteCheck positive_definite(const HemitropicParams& p);

/// c0 [(tr kap)^2 - kap_ij kap_ji].
double null_lagrangian_iso(double c0, const Matrix3& kap);
/// A = D = 0, B = 2 c0 (d_ij d_kl - d_il d_jk); its energy is null_lagrangian_iso.
MicropolarModuli isotropic_null_moduli(double c0);

struct HemitropicNullResult {
  ConditionReport report;
  double lambda_eff = 0.0;
  double beta1_eff = 0.0;
  double zeta_eff = 0.0;
  bool null_lagrangian = false;
};

HemitropicNullResult hemitropic_null_family(const HemitropicParams& p);

}  // namespace nulllag
