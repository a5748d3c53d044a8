#include "nulllag/tensor.hpp"

namespace nulllag {

Tensor3 levi_civita() {
  Tensor3 e;
  e(0, 1, 2) = e(1, 2, 0) = e(2, 0, 1) = 1.0;
  e(0, 2, 1) = e(2, 1, 0) = e(1, 0, 2) = -1.0;
  return e;
}

Matrix3 identity_matrix() {
  Matrix3 m;
  for (int i = 0; i < kDim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix3 transpose(const Matrix3& m) {
  Matrix3 t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t(i, j) = m(j, i);
  return t;
}

Matrix3 sym(const Matrix3& m) { return 0.5 * (m + transpose(m)); }
Matrix3 skew(const Matrix3& m) { return 0.5 * (m - transpose(m)); }

double trace(const Matrix3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

Matrix3 dev(const Matrix3& m) { return m - (trace(m) / 3.0) * identity_matrix(); }

double dot(const Matrix3& a, const Matrix3& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < Matrix3::size; ++n) s += a[n] * b[n];
  return s;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 apply(const Matrix3& m, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r(i) += m(i, j) * v(j);
  return r;
}

Matrix3 skew_from_axial(const Vec3& w) {
  const Tensor3 e = levi_civita();
  Matrix3 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) m(i, j) -= e(i, j, k) * w(k);
  return m;
}

Matrix3 apply4(const Tensor4& t, const Matrix3& m) {
  Matrix3 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) s += t(i, j, k, l) * m(k, l);
      r(i, j) = s;
    }
  return r;
}

Vec3 apply3(const Tensor3& p, const Matrix3& m) {
  Vec3 r;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) r(k) += p(k, i, j) * m(i, j);
  return r;
}

Matrix3 apply3_adjoint(const Tensor3& p, const Vec3& v) {
  Matrix3 r;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) r(i, j) += p(k, i, j) * v(k);
  return r;
}

namespace {

template <typename Map>
Tensor4 permute4(const Tensor4& t, Map map) {
  Tensor4 r;
  for (std::size_t n = 0; n < Tensor4::size; ++n) {
    const auto idx = Tensor4::unflatten(n);
    r[n] = t.at(map(idx));
  }
  return r;
}

}  // namespace

Tensor4 major_transpose(const Tensor4& t) {
  return permute4(t, [](const Tensor4::Index& x) { return Tensor4::Index{x[2], x[3], x[0], x[1]}; });
}

Tensor4 swap24(const Tensor4& t) {
  return permute4(t, [](const Tensor4::Index& x) { return Tensor4::Index{x[0], x[3], x[2], x[1]}; });
}

Tensor4 swap13(const Tensor4& t) {
  return permute4(t, [](const Tensor4::Index& x) { return Tensor4::Index{x[2], x[1], x[0], x[3]}; });
}

Tensor4 isotropic4(double a, double b, double c) {
  Tensor4 t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l)
          t(i, j, k, l) = a * kronecker(i, j) * kronecker(k, l) +
                          b * kronecker(i, k) * kronecker(j, l) +
                          c * kronecker(i, l) * kronecker(j, k);
  return t;
}

Invariants2 invariants2(const Matrix3& m) {
  Invariants2 inv;
  inv.trace = trace(m);
  inv.frobenius_with_transpose = dot(m, transpose(m));
  inv.i2 = 0.5 * (inv.trace * inv.trace - inv.frobenius_with_transpose);
  return inv;
}

}  // namespace nulllag
