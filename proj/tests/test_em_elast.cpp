#include <gtest/gtest.h>

#include <random>

#include "nulllag/em_elast.hpp"
#include "test_support.hpp"

using namespace nulllag;
using nulllag::testing::random_tensor;

namespace {

struct RandomEm {
  std::mt19937_64 rng;
  explicit RandomEm(std::uint64_t seed) : rng(seed) {}

  EmModuli operator()() {
    return EmModuli::create((sym4::minor_left() | sym4::major()).project(random_tensor<4>(rng)),
                            sym2::symmetric().project(random_tensor<2>(rng)),
                            sym2::symmetric().project(random_tensor<2>(rng)),
                            sym3::minor_right().project(random_tensor<3>(rng)),
                            sym3::minor_right().project(random_tensor<3>(rng)),
                            sym2::symmetric().project(random_tensor<2>(rng)));
  }
};

Vec3 e1() {
  Vec3 v;
  v(0) = 1.0;
  return v;
}

EmModuli only(Matrix3 ediel, Matrix3 acpl, Tensor3 p = {}) {
  return EmModuli::create(Tensor4{}, ediel, Matrix3{}, p, Tensor3{}, acpl);
}

}  // namespace

TEST(EmModuli, EnforcesSymmetries) {
  std::mt19937_64 rng(51);
  const Tensor3 p = random_tensor<3>(rng);
  const Matrix3 a = random_tensor<2>(rng);
  EXPECT_THROW((void)EmModuli::create(Tensor4{}, Matrix3{}, Matrix3{}, p, Tensor3{}, Matrix3{}), ValidationError);
  EXPECT_THROW((void)EmModuli::create(Tensor4{}, Matrix3{}, Matrix3{}, Tensor3{}, Tensor3{}, a), ValidationError);
  EXPECT_THROW((void)EmModuli::create(random_tensor<4>(rng), Matrix3{}, Matrix3{}, Tensor3{}, Tensor3{}, Matrix3{}),
               ValidationError);
}

TEST(EmEnthalpy, Examples) {
  std::mt19937_64 rng(52);
  const Matrix3 eps = random_tensor<2>(rng);
  EXPECT_EQ(em_enthalpy(EmModuli{}, eps, random_tensor<1>(rng), random_tensor<1>(rng)), 0.0);
  EXPECT_EQ(em_enthalpy(only(identity_matrix(), Matrix3{}), Matrix3{}, e1(), Vec3{}), -0.5);
  EXPECT_EQ(em_enthalpy(only(Matrix3{}, identity_matrix()), Matrix3{}, e1(), e1()), -1.0);
}

TEST(EmConstitutive, Examples) {
  RandomEm gen(53);
  const auto m = gen();
  const auto z = em_constitutive(m, Matrix3{}, Vec3{}, Vec3{});
  EXPECT_EQ(z.sigma.max_abs() + z.d.max_abs() + z.b.max_abs(), 0.0);

  Tensor3 p;
  p(0, 0, 0) = 1.0;
  Matrix3 eps;
  eps(0, 0) = 1.0;
  const auto r = em_constitutive(only(Matrix3{}, Matrix3{}, p), eps, Vec3{}, Vec3{});
  EXPECT_EQ(r.d, e1());

  std::mt19937_64 rng(54);
  const Vec3 e = random_tensor<1>(rng);
  EXPECT_EQ(em_constitutive(only(identity_matrix(), Matrix3{}), Matrix3{}, e, Vec3{}).d, e);
}

TEST(EmConstitutive, DerivativesOfEnthalpy) {
  // sigma = dH/deps, d = -dH/de, b = -dH/dh.
  RandomEm gen(55);
  std::mt19937_64 rng(56);
  for (int t = 0; t < 10; ++t) {
    const auto m = gen();
    const Matrix3 eps = sym(random_tensor<2>(rng));
    const Vec3 e = random_tensor<1>(rng);
    const Vec3 h = random_tensor<1>(rng);
    const auto r = em_constitutive(m, eps, e, h);
    const double step = 1e-3;
    for (int i = 0; i < 3; ++i) {
      Vec3 ep = e, em = e, hp = h, hm = h;
      ep(i) += step;
      em(i) -= step;
      hp(i) += step;
      hm(i) -= step;
      EXPECT_NEAR(-(em_enthalpy(m, eps, ep, h) - em_enthalpy(m, eps, em, h)) / (2 * step), r.d(i), 1e-10);
      EXPECT_NEAR(-(em_enthalpy(m, eps, e, hp) - em_enthalpy(m, eps, e, hm)) / (2 * step), r.b(i), 1e-10);
      for (int j = 0; j < 3; ++j) {
        Matrix3 a = eps, b = eps;
        a(i, j) += step;
        b(i, j) -= step;
        EXPECT_NEAR((em_enthalpy(m, a, e, h) - em_enthalpy(m, b, e, h)) / (2 * step), r.sigma(i, j), 1e-10);
      }
    }
  }
}

TEST(EmEnthalpy, HessianIsConstant) {
  RandomEm gen(57);
  std::mt19937_64 rng(58);
  const auto m = gen();
  auto pack = [](const std::array<double, 15>& z, Matrix3& eps, Vec3& e, Vec3& h) {
    for (std::size_t n = 0; n < 9; ++n) eps[n] = z[n];
    for (std::size_t k = 0; k < 3; ++k) {
      e[k] = z[9 + k];
      h[k] = z[12 + k];
    }
  };
  auto hessian = [&](std::array<double, 15> z0) {
    std::array<double, 225> hs{};
    const double s = 1e-2;
    for (std::size_t a = 0; a < 15; ++a)
      for (std::size_t b = 0; b < 15; ++b) {
        double f[4];
        int q = 0;
        for (double sa : {s, -s})
          for (double sb : {s, -s}) {
            auto z = z0;
            z[a] += sa;
            z[b] += sb;
            Matrix3 eps;
            Vec3 e, h;
            pack(z, eps, e, h);
            f[q++] = em_enthalpy(m, eps, e, h);
          }
        hs[a * 15 + b] = (f[0] - f[1] - f[2] + f[3]) / (4 * s * s);
      }
    return hs;
  };
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::array<double, 15> z1{}, z2{};
  for (auto& v : z1) v = u(rng);
  for (auto& v : z2) v = u(rng);
  const auto h1 = hessian(z1);
  const auto h2 = hessian(z2);
  for (std::size_t n = 0; n < 225; ++n) EXPECT_NEAR(h1[n], h2[n], 1e-8);
}

TEST(CheckEmNull, Examples) {
  EXPECT_TRUE(check_em_null(EmModuli{}).passed());
  Tensor3 p;
  p(0, 0, 0) = 1.0;
  const auto rp = check_em_null(only(Matrix3{}, Matrix3{}, p));
  EXPECT_FALSE(rp.passed());
  EXPECT_FALSE(rp.find("P_zero_if_jk")->passed);
  EXPECT_LE(em_null_classes().P.project(p).max_abs(), 0.0);
  const auto ra = check_em_null(only(Matrix3{}, identity_matrix()));
  EXPECT_FALSE(ra.passed());
  EXPECT_FALSE(ra.find("A_antisymmetric")->passed);
}

TEST(CheckEmNull, PassesOnlyForZeroModel) {
  RandomEm gen(59);
  for (int t = 0; t < 100; ++t) EXPECT_FALSE(check_em_null(gen()).passed());
}

TEST(EmNull, TrivialityProjection) {
  RandomEm gen(60);
  const auto cls = em_null_classes();
  EXPECT_TRUE(cls.C.forces_zero());
  EXPECT_TRUE(cls.P.forces_zero());
  EXPECT_TRUE(cls.Q.forces_zero());
  EXPECT_TRUE(cls.Acpl.forces_zero());
  EXPECT_TRUE(cls.Ediel.forces_zero());
  EXPECT_TRUE(cls.Bperm.forces_zero());
  for (int t = 0; t < 1000; ++t) {
    const auto m = gen();
    EXPECT_LE(cls.C.project(m.C).max_abs(), 1e-14);
    EXPECT_LE(cls.P.project(m.P).max_abs(), 1e-14);
    EXPECT_LE(cls.Q.project(m.Q).max_abs(), 1e-14);
    EXPECT_LE(cls.Acpl.project(m.Acpl).max_abs(), 1e-14);
    EXPECT_LE(cls.Ediel.project(m.Ediel).max_abs(), 1e-14);
    EXPECT_LE(cls.Bperm.project(m.Bperm).max_abs(), 1e-14);
  }
}

TEST(EmLagrangian, ZeroModelIsVacuouslyNull) {
  std::mt19937_64 rng(61);
  const auto lag = em_lagrangian(EmModuli{});
  for (int t = 0; t < 5; ++t) {
    const auto r = euler_residual(lag, random_field(rng, 5, 3), Point3{0.1, 0.5, 0.9});
    for (double v : r) EXPECT_EQ(v, 0.0);
  }
}

TEST(EmLagrangian, EulerResidualIsBalanceLaws) {
  // Components: div sigma, -div d, -div b (sign from e = -grad phi).
  RandomEm gen(62);
  std::mt19937_64 rng(63);
  const auto m = gen();
  const auto lag = em_lagrangian(m);
  const auto y = random_field(rng, 5, 3);
  const Point3 x{0.3, 0.6, 0.2};
  const auto jet = y.jet(x);
  const auto r = euler_residual_detail(lag, y, x);
  // Differentiate the constitutive outputs along x by central differences of the exact jets.
  auto response_at = [&](const Point3& p) {
    const auto j = y.jet(p);
    Matrix3 eps;
    Vec3 e, h;
    for (std::size_t n = 0; n < 9; ++n) eps[n] = j.dy[n];
    for (std::size_t k = 0; k < 3; ++k) {
      e[k] = -j.dy[9 + k];
      h[k] = -j.dy[12 + k];
    }
    return em_constitutive(m, eps, e, h);
  };
  (void)jet;
  std::array<double, 5> expected{};
  const double s = 1e-3;
  for (int g = 0; g < 3; ++g) {
    Point3 xp = x, xm = x;
    xp[static_cast<std::size_t>(g)] += s;
    xm[static_cast<std::size_t>(g)] -= s;
    const auto a = response_at(xp);
    const auto b = response_at(xm);
    for (int i = 0; i < 3; ++i) expected[static_cast<std::size_t>(i)] += (a.sigma(i, g) - b.sigma(i, g)) / (2 * s);
    expected[3] -= -(a.d(g) - b.d(g)) / (2 * s);
    expected[4] -= -(a.b(g) - b.b(g)) / (2 * s);
  }
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(r.values[static_cast<std::size_t>(k)], expected[static_cast<std::size_t>(k)], 1e-5);
}

TEST(EmLagrangian, VerbatimCouplingDiffersOnlyInQ) {
  RandomEm gen(64);
  std::mt19937_64 rng(65);
  auto m = gen();
  const auto y = random_field(rng, 5, 3);
  const Point3 x{0.4, 0.4, 0.4};
  const auto a = euler_residual(em_lagrangian(m, EmCoupling::magnetic), y, x);
  const auto b = euler_residual(em_lagrangian(m, EmCoupling::electric_verbatim), y, x);
  EXPECT_GT(std::abs(a[4] - b[4]), 1e-6);
  m.Q = Tensor3{};
  const auto c = euler_residual(em_lagrangian(m, EmCoupling::magnetic), y, x);
  const auto d = euler_residual(em_lagrangian(m, EmCoupling::electric_verbatim), y, x);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(c[k], d[k]);
}
