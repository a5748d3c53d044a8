#include "nulllag/em_elast.hpp"

#include <cmath>

namespace nulllag {

namespace {

template <int Rank>
void require(const Tensor<Rank>& t, const SymmetryClass<Rank>& cls, const std::string& what) {
  for (double v : t.flat()) {
    if (!std::isfinite(v)) throw ValidationError(what + " has a non-finite entry");
  }
  const double v = cls.max_violation(t);
  if (v > 1e-12) {
    throw ValidationError(what + " violates " + cls.name() + " (max violation " + std::to_string(v) + ")");
  }
}

Vec3 apply_t(const Matrix3& a, const Vec3& v) {
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i) += a(j, i) * v(j);
  return out;
}

}  // namespace

EmModuli EmModuli::create(const Tensor4& c, const Matrix3& ediel, const Matrix3& bperm, const Tensor3& p,
                          const Tensor3& q, const Matrix3& acpl) {
  require(c, sym4::minor_left() | sym4::major(), "C");
  require(ediel, sym2::symmetric(), "E");
  require(bperm, sym2::symmetric(), "B");
  require(p, sym3::minor_right(), "P");
  require(q, sym3::minor_right(), "Q");
  require(acpl, sym2::symmetric(), "A");
  return EmModuli{c, ediel, bperm, p, q, acpl};
}

double em_enthalpy(const EmModuli& m, const Matrix3& eps, const Vec3& e, const Vec3& h) {
  return 0.5 * dot(eps, apply4(m.C, eps)) - 0.5 * dot(e, apply(m.Ediel, e)) - 0.5 * dot(h, apply(m.Bperm, h)) -
         dot(apply3(m.P, eps), e) - dot(apply3(m.Q, eps), h) - dot(apply(m.Acpl, e), h);
}

EmResponse em_constitutive(const EmModuli& m, const Matrix3& eps, const Vec3& e, const Vec3& h) {
  EmResponse r;
  r.sigma = apply4(m.C, eps) - apply3_adjoint(m.P, e) - apply3_adjoint(m.Q, h);
  r.d = apply3(m.P, eps) + apply(m.Ediel, e) + apply(m.Acpl, h);
  r.b = apply3(m.Q, eps) + apply_t(m.Acpl, e) + apply(m.Bperm, h);
  return r;
}

ConditionReport check_em_null(const EmModuli& m) {
  ConditionReport r;
  const double nc = m.C.max_abs();
  const double ne = m.Ediel.max_abs();
  const double nb = m.Bperm.max_abs();
  const double np = m.P.max_abs();
  const double nq = m.Q.max_abs();
  const double na = m.Acpl.max_abs();
  r.add("C_zero", nc, nc);
  r.add("E_zero", ne, ne);
  r.add("B_zero", nb, nb);
  r.add("P_swap13_antisymmetric", sym3::swap13_anti().max_violation(m.P), np);
  r.add("P_zero_if_jk", sym3::zero_if_13().max_violation(m.P), np);
  r.add("Q_swap13_antisymmetric", sym3::swap13_anti().max_violation(m.Q), nq);
  r.add("Q_zero_if_jk", sym3::zero_if_13().max_violation(m.Q), nq);
  r.add("A_antisymmetric", sym2::antisymmetric().max_violation(m.Acpl), na);
  r.add("P_zero", np, np);
  r.add("Q_zero", nq, nq);
  r.add("A_zero", na, na);
  return r;
}

EmNullClasses em_null_classes() {
  EmNullClasses c;
  c.C = sym4::minor_left() | sym4::major() | sym4::swap24_anti() | sym4::swap13_anti() | sym4::zero_if_ik_or_jl();
  c.Ediel = sym2::symmetric() | sym2::zero_all();
  c.Bperm = sym2::symmetric() | sym2::zero_all();
  c.P = sym3::minor_right() | sym3::swap13_anti() | sym3::zero_if_13();
  c.Q = sym3::minor_right() | sym3::swap13_anti() | sym3::zero_if_13();
  c.Acpl = sym2::symmetric() | sym2::antisymmetric();
  return c;
}

LagrangianEvaluator em_lagrangian(const EmModuli& m, EmCoupling coupling, std::string name) {
  const auto form =
      QuadraticForm::from_energy(5, [&m, coupling](std::span<const double>, std::span<const double> p) {
        Matrix3 eps;
        Vec3 e;
        Vec3 h;
        for (std::size_t n = 0; n < 9; ++n) eps[n] = p[n];
        for (std::size_t k = 0; k < 3; ++k) {
          e[k] = -p[9 + k];
          h[k] = -p[12 + k];
        }
        if (coupling == EmCoupling::magnetic) return em_enthalpy(m, eps, e, h);
        return 0.5 * dot(eps, apply4(m.C, eps)) - 0.5 * dot(e, apply(m.Ediel, e)) -
               0.5 * dot(h, apply(m.Bperm, h)) - dot(apply3(m.P, eps), e) - dot(apply3(m.Q, eps), e) -
               dot(apply(m.Acpl, e), h);
      });
  return LagrangianEvaluator::quadratic(form, std::move(name));
}

}  // namespace nulllag
