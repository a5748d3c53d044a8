#pragma once

// Linear elasticity coupled to electric and magnetic potentials.
//
//   H = 1/2 eps.C[eps] - 1/2 e.Ee - 1/2 h.Bh - (P eps).e - (Q eps).h - (A e).h
//
// with e = -grad phi, h = -grad psi and (P eps)_k = P_kij eps_ij.

#include <string>

#include "nulllag/condition_report.hpp"
#include "nulllag/symmetry.hpp"
#include "nulllag/tensor.hpp"
#include "nulllag/variational.hpp"

namespace nulllag {

struct EmModuli {
  Tensor4 C;
  Matrix3 Ediel;
  Matrix3 Bperm;
  Tensor3 P;
  Tensor3 Q;
  Matrix3 Acpl;

  /// Rejects non-finite entries, C without minor-left and major symmetry,
  /// P or Q without P_kij = P_kji, and non-symmetric Ediel, Bperm, Acpl.
  static EmModuli create(const Tensor4& c, const Matrix3& ediel, const Matrix3& bperm, const Tensor3& p,
                         const Tensor3& q, const Matrix3& acpl);
};

double em_enthalpy(const EmModuli& m, const Matrix3& eps, const Vec3& e, const Vec3& h);

struct EmResponse {
  Matrix3 sigma;
  Vec3 d;
  Vec3 b;
};

/// sigma = C eps - P^T e - Q^T h, d = P eps + E e + A h, b = Q eps + A e + B h.
EmResponse em_constitutive(const EmModuli& m, const Matrix3& eps, const Vec3& e, const Vec3& h);

/// C = E = B = 0; P_kij = -P_jik, P_kij = 0 if j = k; the same for Q;
/// A_ij = -A_ji. Under the constructor symmetries these hold only when every
/// modulus vanishes, which the *_zero records state directly.
ConditionReport check_em_null(const EmModuli& m);

/// Constructor symmetries joined with the null relations, per modulus.
struct EmNullClasses {
  SymmetryClass4 C;
  SymmetryClass2 Ediel;
  SymmetryClass2 Bperm;
  SymmetryClass3 P;
  SymmetryClass3 Q;
  SymmetryClass2 Acpl;
};

EmNullClasses em_null_classes();

enum class EmCoupling {
  /// Q couples strain to the magnetic potential psi.
  magnetic,
  /// Q couples strain to the electric potential phi, as the second-order
  /// expansion of the enthalpy is sometimes printed.
  electric_verbatim,
};

/// Quadratic Lagrangian in y = (u_1, u_2, u_3, phi, psi).
LagrangianEvaluator em_lagrangian(const EmModuli& m, EmCoupling coupling = EmCoupling::magnetic,
                                  std::string name = "em_elast");

}  // namespace nulllag
