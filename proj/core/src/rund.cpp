#include "nulllag/rund.hpp"

#include <algorithm>
#include <cmath>

namespace nulllag {

namespace {

constexpr int kX = 3;

std::vector<double> packed_point(const Point3& x, std::span<const double> y) {
  std::vector<double> z(x.begin(), x.end());
  z.insert(z.end(), y.begin(), y.end());
  return z;
}

}  // namespace

GeneratorSet::GeneratorSet(int arity, std::array<RationalPolynomial, 3> s) : arity_(arity), s_(std::move(s)) {
  if (arity < 1) throw ValidationError("generator arity must be positive");
  for (const auto& p : s_) {
    if (p.variables() != kX + arity) {
      throw ValidationError("generator polynomials must have " + std::to_string(kX + arity) + " variables, got " +
                            std::to_string(p.variables()));
    }
  }
  for (int a = 0; a < 3; ++a) {
    const auto& sa = s_[static_cast<std::size_t>(a)];
    for (int i = 0; i < arity; ++i) dy_.push_back(sa.derivative(kX + i));
    for (int b = 0; b < kX; ++b) dx_.push_back(sa.derivative(b));
  }
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < arity; ++i) {
      const auto& d = dy(a, i);
      c_sy_.emplace_back(d);
      for (int j = 0; j < arity; ++j) c_syy_.emplace_back(d.derivative(kX + j));
      for (int b = 0; b < kX; ++b) c_syx_.emplace_back(d.derivative(b));
    }
    for (int b = 0; b < kX; ++b) {
      const auto& d = dx(a, b);
      c_sx_.emplace_back(d);
      for (int c = 0; c < kX; ++c) c_sxx_.emplace_back(d.derivative(c));
    }
  }
}

int GeneratorSet::total_degree() const {
  int d = 0;
  for (const auto& p : s_) d = std::max(d, p.total_degree());
  return d;
}

const RationalPolynomial& GeneratorSet::dy(int a, int i) const {
  return dy_.at(static_cast<std::size_t>(a * arity_ + i));
}

const RationalPolynomial& GeneratorSet::dx(int a, int b) const {
  return dx_.at(static_cast<std::size_t>(a * kX + b));
}

GeneratorSet::Partials GeneratorSet::partials(const Point3& x, std::span<const double> y, bool second) const {
  if (static_cast<int>(y.size()) != arity_) {
    throw ValidationError("generator expects y of size " + std::to_string(arity_) + ", got " +
                          std::to_string(y.size()));
  }
  const auto z = packed_point(x, y);
  auto eval = [&z](const std::vector<CompiledPolynomial>& ps) {
    std::vector<double> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(p(z));
    return out;
  };
  Partials r;
  r.arity = arity_;
  r.sy = eval(c_sy_);
  r.sx = eval(c_sx_);
  if (second) {
    r.syy = eval(c_syy_);
    r.syx = eval(c_syx_);
    r.sxx = eval(c_sxx_);
  }
  return r;
}

GeneratorSet random_generator_set(std::mt19937_64& rng, int arity, int degree) {
  const auto monos = monomials_up_to(kX + arity, degree);
  std::uniform_int_distribution<int> k(-8, 8);
  std::array<RationalPolynomial, 3> s{RationalPolynomial(kX + arity), RationalPolynomial(kX + arity),
                                      RationalPolynomial(kX + arity)};
  for (auto& p : s) {
    for (const auto& m : monos) p.add_term(m, Rational(k(rng), 8));
  }
  return GeneratorSet(arity, std::move(s));
}

namespace {

RundCoefficients coefficients_from(const GeneratorSet::Partials& pt) {
  const int n = pt.arity;
  auto sy = [&](int a, int i) { return pt.sy[static_cast<std::size_t>(a * n + i)]; };
  auto sx = [&](int a, int b) { return pt.sx[static_cast<std::size_t>(a * kX + b)]; };
  RundCoefficients c;
  c.arity = n;
  c.D2.assign(static_cast<std::size_t>(9 * n * n), 0.0);
  c.D1.assign(static_cast<std::size_t>(3 * n), 0.0);
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
          c.D2[static_cast<std::size_t>(((a1 * 3 + a2) * n + i1) * n + i2)] =
              sy(a1, i1) * sy(a2, i2) - sy(a2, i1) * sy(a1, i2);
        }
  for (int a1 = 0; a1 < 3; ++a1)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int a2 = 0; a2 < 3; ++a2) s += sy(a1, i) * sx(a2, a2) - sy(a2, i) * sx(a1, a2);
      c.D1[static_cast<std::size_t>(a1 * n + i)] = s;
    }
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2) c.D0 += sx(a1, a1) * sx(a2, a2) - sx(a2, a1) * sx(a1, a2);
  return c;
}

}  // namespace

RundCoefficients rund_coefficients(const GeneratorSet& g, const Point3& x, std::span<const double> y) {
  return coefficients_from(g.partials(x, y, false));
}

double rund_lagrangian_value(const GeneratorSet& g, const Point3& x, std::span<const double> y,
                             std::span<const double> p) {
  const int n = g.arity();
  if (static_cast<int>(p.size()) != 3 * n) throw ValidationError("gradient size mismatch");
  const auto c = rund_coefficients(g, x, y);
  auto pp = [&](int i, int a) { return p[static_cast<std::size_t>(i * 3 + a)]; };
  double quad = 0.0;
  double lin = 0.0;
  for (int a1 = 0; a1 < 3; ++a1)
    for (int i1 = 0; i1 < n; ++i1) {
      const double p1 = pp(i1, a1);
      lin += c.d1(a1, i1) * p1;
      if (p1 == 0.0) continue;
      for (int a2 = 0; a2 < 3; ++a2)
        for (int i2 = 0; i2 < n; ++i2) quad += c.d2(a1, a2, i1, i2) * p1 * pp(i2, a2);
    }
  return 0.5 * quad + lin + 0.5 * c.D0;
}

LagrangianEvaluator build_null_lagrangian(const GeneratorSet& g, std::string name) {
  const int degree = g.total_degree();
  LagrangianEvaluator lag(
      g.arity(),
      [g](std::span<const double, 3> x, std::span<const double> y, std::span<const double> p) {
        return rund_lagrangian_value(g, Point3{x[0], x[1], x[2]}, y, p);
      },
      std::move(name));
  lag.with_degree_bound([degree](int d) {
    if (degree == 0) return 0;
    return std::max(0, 2 * ((degree - 1) * std::max(d, 1) + d));
  });
  return lag;
}

MicropolarBlocks micropolar_block_view(const GeneratorSet& g, const Point3& x, std::span<const double> y) {
  if (g.arity() != 6) throw ValidationError("micropolar block view requires N = 6");
  const auto c = rund_coefficients(g, x, y);
  MicropolarBlocks b;
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2) {
          b.D2_uu(a1, a2, i1, i2) = c.d2(a1, a2, i1, i2);
          b.D2_phiphi(a1, a2, i1, i2) = c.d2(a1, a2, i1 + 3, i2 + 3);
          b.D2_uphi(a1, a2, i1, i2) = c.d2(a1, a2, i1, i2 + 3);
        }
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      b.D1_u(a, i) = c.d1(a, i);
      b.D1_phi(a, i) = c.d1(a, i + 3);
    }
  b.D0 = c.D0;
  return b;
}

RundCoefficients reassemble(const MicropolarBlocks& b) {
  RundCoefficients c;
  c.arity = 6;
  c.D2.assign(9 * 36, 0.0);
  c.D1.assign(18, 0.0);
  auto at = [&c](int a1, int a2, int i1, int i2) -> double& {
    return c.D2[static_cast<std::size_t>(((a1 * 3 + a2) * 6 + i1) * 6 + i2)];
  };
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2) {
          at(a1, a2, i1, i2) = b.D2_uu(a1, a2, i1, i2);
          at(a1, a2, i1 + 3, i2 + 3) = b.D2_phiphi(a1, a2, i1, i2);
          at(a1, a2, i1, i2 + 3) = b.D2_uphi(a1, a2, i1, i2);
          at(a1, a2, i1 + 3, i2) = b.D2_uphi(a2, a1, i2, i1);
        }
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      c.D1[static_cast<std::size_t>(a * 6 + i)] = b.D1_u(a, i);
      c.D1[static_cast<std::size_t>(a * 6 + i + 3)] = b.D1_phi(a, i);
    }
  c.D0 = b.D0;
  return c;
}

double AppendixResiduals::max_normalized() const {
  double m = 0.0;
  for (double v : r_rq) m = std::max(m, std::abs(v));
  for (double v : r_rl1) m = std::max(m, std::abs(v));
  return m / scale;
}

AppendixResiduals appendix_identity_residuals(const GeneratorSet& g, const Point3& x, std::span<const double> y) {
  const auto pt = g.partials(x, y, true);
  const int n = g.arity();
  auto Sy = [&](int a, int i) { return pt.sy[static_cast<std::size_t>(a * n + i)]; };
  auto Sx = [&](int a, int b) { return pt.sx[static_cast<std::size_t>(a * kX + b)]; };
  auto Syy = [&](int a, int i, int j) { return pt.syy[static_cast<std::size_t>((a * n + i) * n + j)]; };
  auto Syx = [&](int a, int i, int b) { return pt.syx[static_cast<std::size_t>((a * n + i) * kX + b)]; };
  auto Sxx = [&](int a, int b, int c) { return pt.sxx[static_cast<std::size_t>((a * kX + b) * kX + c)]; };

  // d D(a1; i) / dx^b
  auto dD1dx = [&](int a1, int i, int b) {
    double s = 0.0;
    for (int a2 = 0; a2 < 3; ++a2) {
      s += Syx(a1, i, b) * Sx(a2, a2) + Sy(a1, i) * Sxx(a2, a2, b) - Syx(a2, i, b) * Sx(a1, a2) -
           Sy(a2, i) * Sxx(a1, a2, b);
    }
    return s;
  };
  // d D(a1; i) / dy^j
  auto dD1dy = [&](int a1, int i, int j) {
    double s = 0.0;
    for (int a2 = 0; a2 < 3; ++a2) {
      s += Syy(a1, i, j) * Sx(a2, a2) + Sy(a1, i) * Syx(a2, j, a2) - Syy(a2, i, j) * Sx(a1, a2) -
           Sy(a2, i) * Syx(a1, j, a2);
    }
    return s;
  };
  auto dD0dy = [&](int j) {
    double s = 0.0;
    for (int a1 = 0; a1 < 3; ++a1)
      for (int a2 = 0; a2 < 3; ++a2) {
        s += Syx(a1, j, a1) * Sx(a2, a2) + Sx(a1, a1) * Syx(a2, j, a2) - Syx(a2, j, a1) * Sx(a1, a2) -
             Sx(a2, a1) * Syx(a1, j, a2);
      }
    return s;
  };
  auto dD2dx = [&](int a1, int a2, int i1, int i2, int b) {
    return Syx(a1, i1, b) * Sy(a2, i2) + Sy(a1, i1) * Syx(a2, i2, b) - Syx(a2, i1, b) * Sy(a1, i2) -
           Sy(a2, i1) * Syx(a1, i2, b);
  };

  AppendixResiduals r;
  r.r_rq.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += dD1dx(a, i, a);
    r.r_rq[static_cast<std::size_t>(i)] = 2.0 * s - dD0dy(i);
  }
  r.r_rl1.resize(static_cast<std::size_t>(3 * n * n));
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int gm = 0; gm < 3; ++gm) s += dD2dx(gm, a, k, i, gm);
        r.r_rl1[static_cast<std::size_t>((k * 3 + a) * n + i)] = s + dD1dy(a, k, i) - dD1dy(a, i, k);
      }

  double m1 = 0.0;
  double m2 = 0.0;
  for (double v : pt.sy) m1 = std::max(m1, std::abs(v));
  for (double v : pt.sx) m1 = std::max(m1, std::abs(v));
  for (const auto* vs : {&pt.syy, &pt.syx, &pt.sxx})
    for (double v : *vs) m2 = std::max(m2, std::abs(v));
  r.scale = 1.0 + (m1 + m2) * (m1 + m2);
  return r;
}

bool appendix_identities_exact(const GeneratorSet& g) {
  const int n = g.arity();
  const int nv = kX + n;
  auto Sy = [&](int a, int i) -> const RationalPolynomial& { return g.dy(a, i); };
  auto Sx = [&](int a, int b) -> const RationalPolynomial& { return g.dx(a, b); };

  std::vector<RationalPolynomial> d1;  // [a*N + i]
  for (int a1 = 0; a1 < 3; ++a1)
    for (int i = 0; i < n; ++i) {
      RationalPolynomial s(nv);
      for (int a2 = 0; a2 < 3; ++a2) s += Sy(a1, i) * Sx(a2, a2) - Sy(a2, i) * Sx(a1, a2);
      d1.push_back(std::move(s));
    }
  RationalPolynomial d0(nv);
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2) d0 += Sx(a1, a1) * Sx(a2, a2) - Sx(a2, a1) * Sx(a1, a2);

  for (int i = 0; i < n; ++i) {
    RationalPolynomial r(nv);
    for (int a = 0; a < 3; ++a) r += d1[static_cast<std::size_t>(a * n + i)].derivative(a);
    r = r * Rational(2) - d0.derivative(kX + i);
    if (!r.is_zero()) return false;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < n; ++i) {
        RationalPolynomial r(nv);
        for (int gm = 0; gm < 3; ++gm) {
          r += (Sy(gm, k) * Sy(a, i) - Sy(a, k) * Sy(gm, i)).derivative(gm);
        }
        r += d1[static_cast<std::size_t>(a * n + k)].derivative(kX + i);
        r -= d1[static_cast<std::size_t>(a * n + i)].derivative(kX + k);
        if (!r.is_zero()) return false;
      }
  return true;
}

}  // namespace nulllag
