#include "nulllag/micropolar.hpp"

#include <algorithm>
#include <cmath>

#include "nulllag/quadrature.hpp"

namespace nulllag {

namespace {

void require_finite(const Tensor4& t, const char* what) {
  for (double v : t.flat()) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + " has a non-finite entry");
  }
}

Tensor4 from_tensor_data(const std::vector<double>& v) { return Tensor4::from_flat(v); }

Tensor4 null_pairing() { return isotropic4(1.0, 0.0, -1.0); }

}  // namespace

MicropolarModuli MicropolarModuli::create(const Tensor4& a, const Tensor4& b, const Tensor4& d) {
  require_finite(a, "A");
  require_finite(b, "B");
  require_finite(d, "D");
  const double va = sym4::major().max_violation(a);
  if (va > kModuliSymmetryTolerance) {
    throw ValidationError("A violates major symmetry A_ijkl = A_klij (max violation " + std::to_string(va) + ")");
  }
  const double vb = sym4::major().max_violation(b);
  if (vb > kModuliSymmetryTolerance) {
    throw ValidationError("B violates major symmetry B_ijkl = B_klij (max violation " + std::to_string(vb) + ")");
  }
  return MicropolarModuli{a, b, d};
}

Tensor4 IsotropicParams::A() const { return isotropic4(lambda, mu + kappa, mu); }
Tensor4 IsotropicParams::B() const { return isotropic4(beta1, beta2, beta3); }
MicropolarModuli IsotropicParams::moduli() const { return MicropolarModuli::create(A(), B(), Tensor4{}); }

Tensor4 HemitropicParams::A() const { return isotropic4(lambda, mu + kappa, mu); }
Tensor4 HemitropicParams::B() const { return isotropic4(beta1, beta2, beta3); }
Tensor4 HemitropicParams::D() const { return isotropic4(zeta, nu + rho, nu); }
MicropolarModuli HemitropicParams::moduli() const { return MicropolarModuli::create(A(), B(), D()); }

HemitropicParams HemitropicParams::constrained(double lambda, double beta1, double zeta) {
  HemitropicParams p;
  p.lambda = lambda;
  p.mu = -lambda;
  p.kappa = lambda;
  p.beta1 = beta1;
  p.beta2 = 0.0;
  p.beta3 = -beta1;
  p.zeta = zeta;
  p.nu = -zeta;
  p.rho = zeta;
  return p;
}

Matrix3 PolyMatrixField::at(const Point3& x) const {
  Matrix3 m;
  for (std::size_t n = 0; n < entries.size(); ++n) m[n] = entries[n].evaluate(x);
  return m;
}

StrainWrynessFields strain_wryness(const PolyField& u, const PolyField& phi) {
  if (u.components() != 3 || phi.components() != 3) throw ValidationError("u and phi must have 3 components");
  const Tensor3 e = levi_civita();
  StrainWrynessFields f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      RealPolynomial eps = u[i].derivative(j);
      for (int k = 0; k < 3; ++k) {
        if (e(k, i, j) != 0.0) eps += e(k, i, j) * phi[k];
      }
      f.eps(i, j) = std::move(eps);
      f.kap(i, j) = phi[i].derivative(j);
    }
  }
  return f;
}

StrainWryness strain_wryness(std::span<const double> y, std::span<const double> p) {
  if (y.size() != 6 || p.size() != 18) throw ValidationError("micropolar fields need y in R^6 and Dy in R^{6x3}");
  const Tensor3 e = levi_civita();
  StrainWryness s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double eps = p[static_cast<std::size_t>(i * 3 + j)];
      for (int k = 0; k < 3; ++k) eps += e(k, i, j) * y[static_cast<std::size_t>(3 + k)];
      s.eps(i, j) = eps;
      s.kap(i, j) = p[static_cast<std::size_t>((3 + i) * 3 + j)];
    }
  }
  return s;
}

double energy_density(const MicropolarModuli& m, const Matrix3& eps, const Matrix3& kap) {
  return 0.5 * dot(eps, apply4(m.A, eps)) + 0.5 * dot(kap, apply4(m.B, kap)) + dot(eps, apply4(m.D, kap));
}

MicropolarStress constitutive(const MicropolarModuli& m, const Matrix3& eps, const Matrix3& kap) {
  MicropolarStress s;
  s.sigma = apply4(m.A, eps) + apply4(m.D, kap);
  s.mu = apply4(m.B, kap) + apply4(major_transpose(m.D), eps);
  return s;
}

LagrangianEvaluator micropolar_lagrangian(const MicropolarModuli& m, std::string name) {
  const auto form = QuadraticForm::from_energy(6, [&m](std::span<const double> y, std::span<const double> p) {
    const auto s = strain_wryness(y, p);
    return energy_density(m, s.eps, s.kap);
  });
  return LagrangianEvaluator::quadratic(form, std::move(name));
}

double alternator_commutation_violation(const Tensor4& d) {
  const Tensor3 e = levi_civita();
  double worst = 0.0;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int n = 0; n < 3; ++n) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) s += e(m, k, l) * d(k, l, i, n);
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) s -= e(i, j, k) * d(j, k, m, n);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

namespace {

double alternator_contraction_violation(const Tensor4& a) {
  const Tensor3 e = levi_civita();
  double worst = 0.0;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) s += e(m, k, l) * a(i, j, k, l);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

bool distinct(int i, int j, int k) { return i != j && j != k && i != k; }

double claim1_b_violation(const Tensor4& d) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (distinct(i, j, k)) worst = std::max(worst, std::abs(d(i, j, j, i) + d(i, k, k, i)));
  return worst;
}

double claim1_c_violation(const Tensor4& d) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (distinct(i, j, k)) worst = std::max(worst, std::abs(d(i, j, j, k) - d(k, i, k, k) - d(j, i, j, k)));
  return worst;
}

std::size_t at4(int i, int j, int k, int l) { return Tensor4::flatten({i, j, k, l}); }

}  // namespace

ConditionReport check_null_sufficient(const MicropolarModuli& m) {
  ConditionReport r;
  const double na = m.A.max_abs();
  const double nb = m.B.max_abs();
  const double nd = m.D.max_abs();
  r.add("A_swap24_antisymmetric", sym4::swap24_anti().max_violation(m.A), na);
  r.add("B_swap24_antisymmetric", sym4::swap24_anti().max_violation(m.B), nb);
  r.add("D_swap24_antisymmetric", sym4::swap24_anti().max_violation(m.D), nd);
  r.add("D_alternator_commutation", alternator_commutation_violation(m.D), nd);
  r.add("A_alternator_contraction", alternator_contraction_violation(m.A), na);
  r.add("A_zero", na, na);
  return r;
}

ConditionReport check_claim1(const Tensor4& d) {
  ConditionReport r;
  const double nd = d.max_abs();
  r.add("D_swap24_antisymmetric", sym4::swap24_anti().max_violation(d), nd);
  r.add("D_ijji_plus_D_ikki", claim1_b_violation(d), nd);
  r.add("D_ijjk_minus_D_kikk_minus_D_jijk", claim1_c_violation(d), nd);
  return r;
}

const LinearConstraintSet& claim1_set1() {
  static const LinearConstraintSet set = [] {
    LinearConstraintSet s = LinearConstraintSet::from_symmetry(sym4::swap24_anti());
    const Tensor3 e = levi_civita();
    for (int m = 0; m < 3; ++m)
      for (int i = 0; i < 3; ++i)
        for (int n = 0; n < 3; ++n) {
          LinearConstraintSet::Row row;
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
              if (e(m, k, l) != 0.0) row.emplace_back(at4(k, l, i, n), e(m, k, l));
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              if (e(i, j, k) != 0.0) row.emplace_back(at4(j, k, m, n), -e(i, j, k));
          s.add(std::move(row));
        }
    return s;
  }();
  return set;
}

const LinearConstraintSet& claim1_set2() {
  static const LinearConstraintSet set = [] {
    LinearConstraintSet s = LinearConstraintSet::from_symmetry(sym4::swap24_anti());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          if (!distinct(i, j, k)) continue;
          s.add({{at4(i, j, j, i), 1.0}, {at4(i, k, k, i), 1.0}});
          s.add({{at4(i, j, j, k), 1.0}, {at4(k, i, k, k), -1.0}, {at4(j, i, j, k), -1.0}});
        }
    return s;
  }();
  return set;
}

namespace {

Tensor4 project_onto(const LinearSubspace& space, const Tensor4& d) {
  return from_tensor_data(space.project(d.flat()));
}

}  // namespace

Tensor4 project_claim1_set1(const Tensor4& d) {
  static const LinearSubspace space = claim1_set1().solution_space();
  return project_onto(space, d);
}

Tensor4 project_claim1_set2(const Tensor4& d) {
  static const LinearSubspace space = claim1_set2().solution_space();
  return project_onto(space, d);
}

Claim1Probe claim1_probe(const Tensor4& d) {
  const double tol = kClaimProbeTolerance * std::max(1.0, d.max_abs());
  Claim1Probe p;
  p.set1_holds = claim1_set1().max_violation(d.flat()) <= tol;
  p.set2_holds = claim1_set2().max_violation(d.flat()) <= tol;
  return p;
}

bool claim1_equivalence_probe(const Tensor4& d) { return claim1_probe(d).equivalent(); }

SymmetryClass4 centrosymmetric_rund_class() {
  return sym4::major() | sym4::swap24_anti() | sym4::swap13_anti() | sym4::zero_if_ik_or_jl();
}

SymmetryClass4 micropolar_a_null_class() { return sym4::major() | sym4::swap24_anti() | sym4::minor_right(); }

SymmetryClass4 micropolar_a_rund_class() { return centrosymmetric_rund_class() | sym4::minor_left(); }

ConditionReport check_centrosymmetric_rund(const Tensor4& a, const Tensor4& b) {
  ConditionReport r;
  const double na = a.max_abs();
  const double nb = b.max_abs();
  r.add("A_zero", na, na);
  r.add("B_swap24_antisymmetric", sym4::swap24_anti().max_violation(b), nb);
  r.add("B_swap13_antisymmetric", sym4::swap13_anti().max_violation(b), nb);
  r.add("B_zero_if_ik_or_jl", sym4::zero_if_ik_or_jl().max_violation(b), nb);
  r.add("B_major_symmetric", sym4::major().max_violation(b), nb);
  return r;
}

BSplit split_B(const Tensor4& b) {
  const Tensor4 bm = major_transpose(b);
  const Tensor4 b24 = swap24(b);
  const Tensor4 b13 = swap13(b);
  BSplit s;
  for (std::size_t n = 0; n < Tensor4::size; ++n) {
    s.b_hat[n] = 0.25 * (b[n] + bm[n] + b24[n] + b13[n]);
    s.b_tilde[n] = 0.25 * (b[n] + bm[n] - b24[n] - b13[n]);
    s.b_ring[n] = 0.5 * (b[n] - bm[n]);
  }
  return s;
}

const std::array<std::array<int, 4>, 18>& cauchy_analogue_entries() {
  static const std::array<std::array<int, 4>, 18> entries{{
      {2, 2, 3, 3}, {1, 2, 3, 3}, {1, 3, 2, 2},
      {2, 1, 3, 3}, {1, 1, 3, 3}, {2, 3, 1, 1},
      {3, 1, 2, 2}, {3, 2, 1, 1}, {1, 1, 2, 2},
      {3, 1, 1, 3}, {3, 1, 2, 3}, {2, 1, 3, 2},
      {3, 2, 1, 3}, {1, 2, 2, 1}, {1, 2, 3, 1},
      {2, 3, 1, 2}, {1, 3, 2, 1}, {2, 3, 3, 2},
  }};
  return entries;
}

ConditionReport cauchy_analogue(const Tensor4& b_tilde) {
  ConditionReport r;
  const double scale = b_tilde.max_abs();
  for (const auto& e : cauchy_analogue_entries()) {
    const double v = b_tilde(e[0] - 1, e[1] - 1, e[2] - 1, e[3] - 1);
    r.add("Btilde_" + std::to_string(e[0]) + std::to_string(e[1]) + std::to_string(e[2]) + std::to_string(e[3]),
          std::abs(v), scale);
  }
  return r;
}

TildeStructure tilde_structure() {
  const SymmetryClass4 cls = sym4::major() | sym4::swap24_anti() | sym4::swap13_anti();
  TildeStructure t;
  t.zero_entries = cls.structural_zero_count();
  const auto major = sym4::major().permutations().front();
  int free_positions = 0;
  int major_fixed = 0;
  for (std::size_t n = 0; n < Tensor4::size; ++n) {
    Tensor4 single;
    single[n] = 1.0;
    // A unit entry survives projection unless the class forces it to zero.
    if (cls.project(single)[n] == 0.0) continue;
    ++free_positions;
    if (Tensor4::flatten(major.apply(Tensor4::unflatten(n))) == n) ++major_fixed;
  }
  t.independent_entries = (free_positions + major_fixed) / 2;
  t.tilde_dimension = static_cast<int>(LinearConstraintSet::from_symmetry(cls).solution_space().dimension());
  return t;
}

double surface_potential(const Tensor4& b_tilde, const PolyField& phi, int order) {
  if (phi.components() != 3) throw ValidationError("phi must have 3 components");
  const int need = required_order(2 * phi.max_variable_degree());
  if (order < need) {
    throw ValidationError("surface quadrature order " + std::to_string(order) +
                          " is not exact for this integrand; required order " + std::to_string(need));
  }
  double sum = 0.0;
  for (const auto& pt : cube_surface_rule(order)) {
    const auto jet = phi.jet(pt.x);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            s += b_tilde(i, j, k, l) * jet.dy[static_cast<std::size_t>(i * 3 + j)] * jet.y[static_cast<std::size_t>(k)] *
                 pt.normal[static_cast<std::size_t>(l)];
    sum += pt.w * s;
  }
  return 0.5 * sum;
}

double wryness_volume_energy(const Tensor4& b, const PolyField& phi, int order) {
  if (phi.components() != 3) throw ValidationError("phi must have 3 components");
  const int need = required_order(2 * phi.max_variable_degree());
  if (order < need) {
    throw ValidationError("quadrature order " + std::to_string(order) +
                          " is not exact for this integrand; required order " + std::to_string(need));
  }
  double sum = 0.0;
  for (const auto& pt : cube_rule(order)) {
    const auto jet = phi.jet(pt.x);
    const Matrix3 kap = Matrix3::from_flat(jet.dy);
    sum += pt.w * dot(kap, apply4(b, kap));
  }
  return 0.5 * sum;
}

PositiveDefiniteCheck positive_definite(const IsotropicParams& p) {
  PositiveDefiniteCheck c;
  c.passed = p.kappa > 0.0 && 2.0 * p.mu + p.kappa > 0.0 && 3.0 * p.lambda + 2.0 * p.mu + p.kappa > 0.0 &&
             3.0 * p.beta1 + p.beta2 + p.beta3 > 0.0 && p.beta2 + p.beta3 > 0.0 && p.beta2 - p.beta3 > 0.0;
  c.complete = true;
  return c;
}

PositiveDefiniteCheck positive_definite(const HemitropicParams& p) {
  PositiveDefiniteCheck c;
  c.passed = p.kappa > 0.0 && 2.0 * p.mu + p.kappa > 0.0 && 3.0 * p.lambda + 2.0 * p.mu + p.kappa > 0.0 &&
             3.0 * p.beta1 + p.beta3 + p.beta2 > 0.0 && p.beta3 + p.beta2 > 0.0 && p.beta2 - p.beta3 > 0.0;
  c.complete = false;
  c.note = "checks the six inequalities on (lambda, mu, kappa, beta1..3) only; "
           "no condition couples zeta, nu, rho; possibly incomplete";
  return c;
}

double null_lagrangian_iso(double c0, const Matrix3& kap) {
  const double t = trace(kap);
  return c0 * (t * t - dot(kap, transpose(kap)));
}

MicropolarModuli isotropic_null_moduli(double c0) {
  return MicropolarModuli::create(Tensor4{}, 2.0 * c0 * null_pairing(), Tensor4{});
}

HemitropicNullResult hemitropic_null_family(const HemitropicParams& p) {
  HemitropicNullResult res;
  const double scale = std::max({std::abs(p.lambda), std::abs(p.mu), std::abs(p.kappa), std::abs(p.beta1),
                                 std::abs(p.beta2), std::abs(p.beta3), std::abs(p.zeta), std::abs(p.nu),
                                 std::abs(p.rho)});
  auto& r = res.report;
  r.add("mu_plus_lambda", std::abs(p.mu + p.lambda), scale);
  r.add("mu_plus_kappa", std::abs(p.mu + p.kappa), scale);
  r.add("beta3_plus_beta1", std::abs(p.beta3 + p.beta1), scale);
  r.add("beta2", std::abs(p.beta2), scale);
  r.add("nu_plus_zeta", std::abs(p.nu + p.zeta), scale);
  r.add("nu_plus_rho", std::abs(p.nu + p.rho), scale);
  r.add("lambda_zero", std::abs(p.lambda), scale);
  r.add("zeta_zero", std::abs(p.zeta), scale);
  res.lambda_eff = p.lambda;
  res.beta1_eff = p.beta1;
  res.zeta_eff = p.zeta;
  res.null_lagrangian = r.passed();
  return res;
}

}  // namespace nulllag
