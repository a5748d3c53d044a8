#include "nulllag/quasicrystal.hpp"

#include <cmath>
#include <map>

namespace nulllag {

namespace {

void require_finite(const Tensor4& t, const char* what) {
  for (double v : t.flat()) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " has a non-finite entry");
  }
}

void require_class(const Tensor4& t, const SymmetryClass4& cls, const std::string& what) {
  const double v = cls.max_violation(t);
  if (v > 1e-12) {
    throw ValidationError(what + " violates " + cls.name() + " (max violation " + std::to_string(v) + ")");
  }
}

}  // namespace

QcModuli QcModuli::create(const Tensor4& c, const Tensor4& d, const Tensor4& e) {
  require_finite(c, "C");
  require_finite(d, "D");
  require_finite(e, "E");
  require_class(c, sym4::major() | sym4::minor_right() | sym4::minor_left(), "C");
  require_class(d, sym4::minor_left(), "D");
  require_class(e, sym4::major(), "E");
  return QcModuli{c, d, e};
}

double qc_energy(const QcModuli& m, const Matrix3& gamma, const Matrix3& kappa) {
  return 0.5 * dot(gamma, apply4(m.C, gamma)) + 0.5 * dot(kappa, apply4(m.E, kappa)) +
         dot(gamma, apply4(m.D, kappa));
}

QcStress qc_constitutive(const QcModuli& m, const Matrix3& gamma, const Matrix3& kappa) {
  QcStress s;
  s.sigma_p = apply4(m.C, gamma) + apply4(m.D, kappa);
  s.sigma_s = apply4(major_transpose(m.D), gamma) + apply4(m.E, kappa);
  return s;
}

QcResidual qc_equilibrium_residual(const QcModuli& m, const PolyField& u_p, const PolyField& u_s,
                                   const PolyField& f_p, const PolyField& f_s, const Point3& x) {
  for (const PolyField* f : {&u_p, &u_s, &f_p, &f_s}) {
    if (f->components() != 3) throw ValidationError("quasicrystal fields must have 3 components");
  }
  const auto jp = u_p.jet(x);
  const auto js = u_s.jet(x);
  const auto fp = f_p.value(x);
  const auto fs = f_s.value(x);
  auto d2 = [](const FieldJet& j, int k, int l, int jj) {
    return j.d2y[static_cast<std::size_t>((k * 3 + l) * 3 + jj)];
  };
  QcResidual r;
  for (int i = 0; i < 3; ++i) {
    double rp = fp[static_cast<std::size_t>(i)];
    double rs = fs[static_cast<std::size_t>(i)];
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          rp += m.C(i, j, k, l) * d2(jp, k, l, j) + m.D(i, j, k, l) * d2(js, k, l, j);
          rs += m.D(k, l, i, j) * d2(jp, k, l, j) + m.E(i, j, k, l) * d2(js, k, l, j);
        }
    r.r_p(i) = rp;
    r.r_s(i) = rs;
  }
  return r;
}

ConditionReport check_qc_null(const QcModuli& m) {
  ConditionReport r;
  const double nc = m.C.max_abs();
  const double nd = m.D.max_abs();
  const double ne = m.E.max_abs();
  r.add("C_zero", nc, nc);
  r.add("D_zero", nd, nd);
  r.add("E_major_symmetric", sym4::major().max_violation(m.E), ne);
  r.add("E_swap13_antisymmetric", sym4::swap13_anti().max_violation(m.E), ne);
  r.add("E_swap24_antisymmetric", sym4::swap24_anti().max_violation(m.E), ne);
  r.add("E_zero_if_ik_or_jl", sym4::zero_if_ik_or_jl().max_violation(m.E), ne);
  return r;
}

SymmetryClass4 qc_e_null_class() {
  return sym4::major() | sym4::swap13_anti() | sym4::swap24_anti() | sym4::zero_if_ik_or_jl();
}

SymmetryClass4 qc_c_null_class() {
  return sym4::major() | sym4::minor_right() | sym4::minor_left() | sym4::swap13_anti() | sym4::swap24_anti() |
         sym4::zero_if_ik_or_jl();
}

SymmetryClass4 qc_d_null_class() {
  return sym4::minor_left() | sym4::major() | sym4::swap13_anti() | sym4::swap24_anti() | sym4::zero_if_jl();
}

Tensor4 admissible_E(const std::vector<std::pair<Tensor4::Index, double>>& seeds) {
  const SymmetryClass4 cls = qc_e_null_class();
  const auto group = cls.group();
  std::map<std::size_t, double> assigned;
  for (const auto& [idx, value] : seeds) {
    for (int r = 0; r < 4; ++r) {
      if (idx[static_cast<std::size_t>(r)] < 0 || idx[static_cast<std::size_t>(r)] > 2) {
        throw ValidationError("seed index out of range");
      }
    }
    if (!std::isfinite(value)) throw ValidationError("non-finite seed value");
    for (const auto& g : group) {
      const auto image = g.apply(idx);
      const double v = g.sign * value;
      for (const auto& z : cls.zero_relations()) {
        if (z.matches(image) && v != 0.0) {
          throw ValidationError("seed forces a nonzero value on an entry with i = k or j = l");
        }
      }
      const std::size_t n = Tensor4::flatten(image);
      auto [it, inserted] = assigned.try_emplace(n, v);
      if (!inserted && it->second != v) {
        throw ValidationError("conflicting seeds: entry " + std::to_string(n) + " assigned " +
                              std::to_string(it->second) + " and " + std::to_string(v));
      }
    }
  }
  Tensor4 e;
  for (const auto& [n, v] : assigned) e[n] = v;
  return e;
}

LagrangianEvaluator qc_lagrangian(const QcModuli& m, std::string name) {
  const auto form = QuadraticForm::from_energy(6, [&m](std::span<const double>, std::span<const double> p) {
    Matrix3 gamma;
    Matrix3 kappa;
    for (std::size_t n = 0; n < 9; ++n) {
      gamma[n] = p[n];
      kappa[n] = p[9 + n];
    }
    return qc_energy(m, gamma, kappa);
  });
  return LagrangianEvaluator::quadratic(form, std::move(name));
}

}  // namespace nulllag
