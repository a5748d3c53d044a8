#pragma once

// Dense tensors of rank 1..4 over R^3.
//
// Storage is contiguous row-major (last index fastest), indices are 0-based in
// code. All operations are pure; values are regular types.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace nulllag {

inline constexpr int kDim = 3;

/// Thrown for malformed input: wrong lengths, non-finite entries, violated
/// constructor invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t pow3(int rank) {
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= kDim;
  return n;
}

template <int Rank>
class Tensor {
  static_assert(Rank >= 1 && Rank <= 4, "Tensor rank must be in 1..4");

 public:
  static constexpr int rank = Rank;
  static constexpr std::size_t size = pow3(Rank);
  using Index = std::array<int, Rank>;

  constexpr Tensor() : data_{} {}

  /// Builds from a flat row-major array; throws ValidationError on a length
  /// mismatch or a non-finite entry.
  static Tensor from_flat(std::span<const double> values) {
    if (values.size() != size) {
      throw ValidationError("tensor of order " + std::to_string(Rank) + " expects " +
                            std::to_string(size) + " entries, got length " +
                            std::to_string(values.size()));
    }
    Tensor t;
    for (std::size_t n = 0; n < size; ++n) {
      if (!std::isfinite(values[n])) {
        throw ValidationError("non-finite tensor entry at flat index " + std::to_string(n));
      }
      t.data_[n] = values[n];
    }
    return t;
  }

  static constexpr std::size_t flatten(const Index& idx) {
    std::size_t n = 0;
    for (int r = 0; r < Rank; ++r) n = n * kDim + static_cast<std::size_t>(idx[r]);
    return n;
  }

  static constexpr Index unflatten(std::size_t n) {
    Index idx{};
    for (int r = Rank - 1; r >= 0; --r) {
      idx[r] = static_cast<int>(n % kDim);
      n /= kDim;
    }
    return idx;
  }

  template <typename... I>
  constexpr double& operator()(I... i) {
    static_assert(sizeof...(I) == Rank);
    return data_[flatten(Index{static_cast<int>(i)...})];
  }
  template <typename... I>
  constexpr double operator()(I... i) const {
    static_assert(sizeof...(I) == Rank);
    return data_[flatten(Index{static_cast<int>(i)...})];
  }

  constexpr double& at(const Index& idx) { return data_[flatten(idx)]; }
  constexpr double at(const Index& idx) const { return data_[flatten(idx)]; }
  constexpr double& operator[](std::size_t n) { return data_[n]; }
  constexpr double operator[](std::size_t n) const { return data_[n]; }

  std::span<const double, size> flat() const { return std::span<const double, size>(data_); }
  std::span<double, size> flat() { return std::span<double, size>(data_); }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor& operator+=(const Tensor& o) {
    for (std::size_t n = 0; n < size; ++n) data_[n] += o.data_[n];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (std::size_t n = 0; n < size; ++n) data_[n] -= o.data_[n];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }
  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::array<double, size> data_;
};

using Vec3 = Tensor<1>;
using Matrix3 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

inline constexpr double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

/// Alternating tensor, E_ijk = e_i . (e_j ^ e_k).
Tensor3 levi_civita();

Matrix3 identity_matrix();
Matrix3 transpose(const Matrix3& m);
Matrix3 sym(const Matrix3& m);
Matrix3 skew(const Matrix3& m);
double trace(const Matrix3& m);
/// Deviatoric part m - (tr m / 3) I.
Matrix3 dev(const Matrix3& m);
/// A.B = A_ij B_ij.
double dot(const Matrix3& a, const Matrix3& b);
double dot(const Vec3& a, const Vec3& b);
Vec3 apply(const Matrix3& m, const Vec3& v);
/// Skew matrix W with W a = w ^ a, i.e. W_ij = -E_ijk w_k.
Matrix3 skew_from_axial(const Vec3& w);

/// (T[M])_ij = T_ijkl M_kl.
Matrix3 apply4(const Tensor4& t, const Matrix3& m);
/// (P M)_k = P_kij M_ij.
Vec3 apply3(const Tensor3& p, const Matrix3& m);
/// Index adjoint of apply3: (P^T v)_ij = P_kij v_k, so M.(P^T v) = (P M).v.
Matrix3 apply3_adjoint(const Tensor3& p, const Vec3& v);

/// T_klij.
Tensor4 major_transpose(const Tensor4& t);
/// T_ilkj (second and fourth index exchanged).
Tensor4 swap24(const Tensor4& t);
/// T_kjil (first and third index exchanged).
Tensor4 swap13(const Tensor4& t);

/// a d_ij d_kl + b d_ik d_jl + c d_il d_jk.
Tensor4 isotropic4(double a, double b, double c);
inline Tensor4 identity_pairing() { return isotropic4(0.0, 1.0, 0.0); }
inline Tensor4 transposer() { return isotropic4(0.0, 0.0, 1.0); }
inline Tensor4 trace_pairing() { return isotropic4(1.0, 0.0, 0.0); }

struct Invariants2 {
  double trace = 0.0;
  /// 1/2 ((tr M)^2 - tr M^2).
  double i2 = 0.0;
  /// M_ij M_ji.
  double frobenius_with_transpose = 0.0;
};

Invariants2 invariants2(const Matrix3& m);

}  // namespace nulllag
