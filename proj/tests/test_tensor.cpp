#include <gtest/gtest.h>

#include "nulllag/linear_constraints.hpp"
#include "nulllag/symmetry.hpp"
#include "nulllag/tensor.hpp"
#include "nulllag/tensor_json.hpp"
#include "test_support.hpp"

using namespace nulllag;
using nulllag::testing::kron;
using nulllag::testing::random_tensor;

TEST(LeviCivita, MatchesPermutationParity) {
  const Tensor3 e = levi_civita();
  EXPECT_EQ(e(0, 1, 2), 1.0);
  EXPECT_EQ(e(1, 0, 2), -1.0);
  EXPECT_EQ(e(0, 0, 1), 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(e(i, j, k), nulllag::testing::parity_alternator(i, j, k));
        EXPECT_EQ(e(i, j, k), -e(j, i, k));
        EXPECT_EQ(e(i, j, k), -e(i, k, j));
      }
}

TEST(Apply4, IdentityTransposerAndTrace) {
  std::mt19937_64 rng(1);
  const Matrix3 m = random_tensor<2>(rng);
  EXPECT_EQ(apply4(identity_pairing(), m), m);
  EXPECT_EQ(apply4(transposer(), m), transpose(m));
  EXPECT_EQ(apply4(trace_pairing(), identity_matrix()), 3.0 * identity_matrix());
}

TEST(Apply4, AdjointIdentity) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Tensor4 a = random_tensor<4>(rng);
    const Matrix3 m = random_tensor<2>(rng);
    const Matrix3 n = random_tensor<2>(rng);
    const double lhs = dot(m, apply4(a, n));
    const double rhs = dot(n, apply4(major_transpose(a), m));
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Apply3, AdjointIdentity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Tensor3 p = random_tensor<3>(rng);
    const Matrix3 m = random_tensor<2>(rng);
    const Vec3 v = random_tensor<1>(rng);
    EXPECT_NEAR(dot(m, apply3_adjoint(p, v)), dot(apply3(p, m), v), 1e-13);
  }
}

TEST(Permutations, Involutive) {
  std::mt19937_64 rng(4);
  const Tensor4 t = random_tensor<4>(rng);
  EXPECT_EQ(swap24(swap24(t)), t);
  EXPECT_EQ(swap13(swap13(t)), t);
  EXPECT_EQ(major_transpose(major_transpose(t)), t);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          EXPECT_EQ(swap24(t)(i, j, k, l), t(i, l, k, j));
          EXPECT_EQ(swap13(t)(i, j, k, l), t(k, j, i, l));
          EXPECT_EQ(major_transpose(t)(i, j, k, l), t(k, l, i, j));
        }
}

TEST(Isotropic4, MatchesKroneckerForm) {
  const Tensor4 t = isotropic4(2.0, 3.0, 5.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          EXPECT_EQ(t(i, j, k, l), 2.0 * kron(i, j) * kron(k, l) + 3.0 * kron(i, k) * kron(j, l) +
                                       5.0 * kron(i, l) * kron(j, k));
        }
}

TEST(Matrix3Parts, SymPlusSkewRecoversMatrix) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Matrix3 m = random_tensor<2>(rng, -10.0, 10.0);
    EXPECT_LE((sym(m) + skew(m) - m).max_abs(), 4e-15);
  }
}

TEST(CheckSymmetry, Examples) {
  EXPECT_EQ(check_symmetry(isotropic4(1.5, -2.0, 0.25), sym4::major()), 0.0);
  Tensor4 single;
  single(0, 0, 0, 0) = 1.0;
  EXPECT_EQ(check_symmetry(single, SymmetryClass4::zero_if("ik", {{0, 2}})), 1.0);
  const Tensor4 zero;
  for (const auto& cls : {sym4::major(), sym4::minor_left(), sym4::swap24_anti(), sym4::swap13_anti(),
                          sym4::zero_if_ik_or_jl(), sym4::zero_if_jl()}) {
    EXPECT_EQ(check_symmetry(zero, cls), 0.0);
  }
}

TEST(CheckSymmetry, ProjectionSatisfiesClass) {
  std::mt19937_64 rng(6);
  const std::vector<SymmetryClass4> classes = {
      sym4::major(), sym4::major() | sym4::swap24_anti(), sym4::major() | sym4::swap24_anti() | sym4::swap13_anti(),
      sym4::minor_left() | sym4::minor_right() | sym4::major(),
      sym4::major() | sym4::swap13_anti() | sym4::swap24_anti() | sym4::zero_if_ik_or_jl()};
  for (const auto& cls : classes) {
    const Tensor4 p = cls.project(random_tensor<4>(rng));
    EXPECT_LE(check_symmetry(p, cls), 1e-15) << cls.name();
    EXPECT_LE((cls.project(p) - p).max_abs(), 1e-15) << cls.name();
  }
}

TEST(CheckSymmetry, ProjectionAgreesWithLeastSquares) {
  std::mt19937_64 rng(7);
  const auto cls = sym4::major() | sym4::swap24_anti() | sym4::zero_if_jl();
  const auto space = LinearConstraintSet::from_symmetry(cls).solution_space();
  const Tensor4 t = random_tensor<4>(rng);
  const auto ls = space.project(t.flat());
  const Tensor4 p = cls.project(t);
  for (std::size_t n = 0; n < Tensor4::size; ++n) EXPECT_NEAR(ls[n], p[n], 1e-13);
}

TEST(StructuralZeros, TildeClassHas45) {
  const auto tilde = sym4::major() | sym4::swap24_anti() | sym4::swap13_anti();
  EXPECT_EQ(tilde.structural_zero_count(), 45);
  int predicate = 0;
  for (std::size_t n = 0; n < Tensor4::size; ++n) {
    const auto idx = Tensor4::unflatten(n);
    predicate += (idx[0] == idx[2] || idx[1] == idx[3]) ? 1 : 0;
  }
  EXPECT_EQ(predicate, 45);
}

TEST(Invariants2, Examples) {
  const auto a = invariants2(identity_matrix());
  EXPECT_EQ(a.trace, 3.0);
  EXPECT_EQ(a.i2, 3.0);
  EXPECT_EQ(a.frobenius_with_transpose, 3.0);
  Vec3 w;
  w(2) = 1.0;
  const auto b = invariants2(skew_from_axial(w));
  EXPECT_EQ(b.trace, 0.0);
  EXPECT_EQ(b.i2, 1.0);
  EXPECT_EQ(b.frobenius_with_transpose, -2.0);
  const auto c = invariants2(Matrix3{});
  EXPECT_EQ(c.trace, 0.0);
  EXPECT_EQ(c.i2, 0.0);
  EXPECT_EQ(c.frobenius_with_transpose, 0.0);
}

TEST(Invariants2, SecondInvariantIdentity) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const Matrix3 m = random_tensor<2>(rng, -5.0, 5.0);
    const auto inv = invariants2(m);
    const double lhs = inv.trace * inv.trace - inv.frobenius_with_transpose;
    EXPECT_NEAR(lhs, 2.0 * inv.i2, 1e-13 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(TensorJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Tensor4 a = random_tensor<4>(rng, -1e6, 1e6);
    const Tensor4 b = tensor_from_json<4>(Json::parse(to_json(a).dump()));
    EXPECT_EQ(a, b);
  }
}

TEST(TensorJson, StrictParsing) {
  Json j = to_json(Tensor4{});
  j["data"].erase(80);
  try {
    (void)tensor_from_json<4>(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("expected length 81, got length 80"), std::string::npos);
  }
  Json extra = to_json(Matrix3{});
  extra["units"] = "GPa";
  EXPECT_THROW((void)tensor_from_json<2>(extra), ValidationError);
  EXPECT_THROW((void)tensor_from_json<3>(to_json(Matrix3{})), ValidationError);
  Json nan = to_json(Matrix3{});
  nan["data"][0] = "x";
  EXPECT_THROW((void)tensor_from_json<2>(nan), ValidationError);
}
