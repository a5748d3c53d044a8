#pragma once

// Quasicrystal (n = 6) phonon-phason elasticity.
//
//   gamma = grad u_p,  kappa = grad u_s
//   W = 1/2 gamma.C[gamma] + 1/2 kappa.E[kappa] + gamma.D[kappa]

#include <utility>
#include <vector>

#include "nulllag/condition_report.hpp"
#include "nulllag/polynomial.hpp"
#include "nulllag/symmetry.hpp"
#include "nulllag/tensor.hpp"
#include "nulllag/variational.hpp"

namespace nulllag {

struct QcModuli {
  Tensor4 C;
  Tensor4 D;
  Tensor4 E;

  /// Rejects non-finite entries and violations of
  /// C_ijkl = C_klij = C_ijlk = C_jikl, D_ijkl = D_jikl, E_ijkl = E_klij.
  static QcModuli create(const Tensor4& c, const Tensor4& d, const Tensor4& e);
};

double qc_energy(const QcModuli& m, const Matrix3& gamma, const Matrix3& kappa);

struct QcStress {
  Matrix3 sigma_p;
  Matrix3 sigma_s;
};

/// sigma_p = C[gamma] + D[kappa], sigma_s_ij = D_klij gamma_kl + E_ijkl kappa_kl.
QcStress qc_constitutive(const QcModuli& m, const Matrix3& gamma, const Matrix3& kappa);

struct QcResidual {
  Vec3 r_p;
  Vec3 r_s;
};

/// r_p_i = C_ijkl up_k,lj + D_ijkl us_k,lj + fp_i,
/// r_s_i = D_klij up_k,lj + E_ijkl us_k,lj + fs_i.
QcResidual qc_equilibrium_residual(const QcModuli& m, const PolyField& u_p, const PolyField& u_s,
                                   const PolyField& f_p, const PolyField& f_s, const Point3& x);

/// C = 0, D = 0, E_ijkl = E_klij, E_ijkl = -E_kjil, E_ijkl = -E_ilkj,
/// E_ijkl = 0 if i = k or j = l.
ConditionReport check_qc_null(const QcModuli& m);

/// Relations that admissible phason moduli satisfy.
SymmetryClass4 qc_e_null_class();
/// Given symmetries of C together with the relations forced on it; only C = 0.
SymmetryClass4 qc_c_null_class();
/// Given symmetry of D together with the relations forced on it; only D = 0.
SymmetryClass4 qc_d_null_class();

/// Builds E from seed entries (0-based indices) by closure under
/// qc_e_null_class(). Throws ValidationError if the closure assigns two
/// different values to one entry or a nonzero value to a forced-zero entry.
Tensor4 admissible_E(const std::vector<std::pair<Tensor4::Index, double>>& seeds);

/// Quadratic Lagrangian in y = (u_p, u_s).
LagrangianEvaluator qc_lagrangian(const QcModuli& m, std::string name = "quasicrystal");

}  // namespace nulllag
