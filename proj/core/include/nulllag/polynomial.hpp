#pragma once

// Sparse multivariate polynomials with exact differentiation.
//
// Polynomial<Scalar> stores a map from exponent vectors to coefficients;
// Scalar is double for test fields and Rational for generator functions.
// CompiledPolynomial is a flat double-precision copy used in hot loops.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nulllag/tensor.hpp"

namespace nulllag {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a finite decimal ("-0.125") exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

using Exponents = std::vector<std::uint16_t>;

template <typename Scalar>
class Polynomial {
 public:
  using Terms = std::map<Exponents, Scalar>;

  explicit Polynomial(int variables = 0) : variables_(variables) {}

  static Polynomial constant(int variables, Scalar c) {
    Polynomial p(variables);
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), std::move(c));
    return p;
  }

  static Polynomial variable(int variables, int var, Scalar c = Scalar(1)) {
    Exponents e(static_cast<std::size_t>(variables), 0);
    e.at(static_cast<std::size_t>(var)) = 1;
    Polynomial p(variables);
    p.add_term(std::move(e), std::move(c));
    return p;
  }

  int variables() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponents e, Scalar c) {
    if (static_cast<int>(e.size()) != variables_) {
      throw ValidationError("monomial has " + std::to_string(e.size()) + " exponents, polynomial has " +
                            std::to_string(variables_) + " variables");
    }
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
  }

  int max_variable_degree() const {
    int d = 0;
    for (int v = 0; v < variables_; ++v) d = std::max(d, degree_in(v));
    return d;
  }

  Polynomial derivative(int var) const {
    Polynomial r(variables_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exponents f = e;
      const Scalar k(static_cast<int>(f[v]));
      --f[v];
      r.add_term(std::move(f), c * k);
    }
    return r;
  }

  double evaluate(std::span<const double> point) const;

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial r(a.variables_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint16_t>(e[v] + eb[v]);
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  template <typename To>
  Polynomial<To> cast() const {
    Polynomial<To> r(variables_);
    for (const auto& [e, c] : terms_) {
      if constexpr (std::is_same_v<To, double>) {
        r.add_term(e, to_double(c));
      } else {
        r.add_term(e, To(c));
      }
    }
    return r;
  }

  /// Re-expresses the polynomial in `new_variables` variables, old variable v
  /// becoming variable at + v.
  Polynomial embed(int new_variables, int at) const {
    Polynomial r(new_variables);
    for (const auto& [e, c] : terms_) {
      Exponents f(static_cast<std::size_t>(new_variables), 0);
      for (std::size_t v = 0; v < e.size(); ++v) f.at(static_cast<std::size_t>(at) + v) = e[v];
      r.add_term(std::move(f), c);
    }
    return r;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (o.variables_ != variables_) throw ValidationError("polynomials have different variable counts");
  }

  int variables_;
  Terms terms_;
};

/// Flat double-precision form for repeated evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  template <typename Scalar>
  explicit CompiledPolynomial(const Polynomial<Scalar>& p) : variables_(p.variables()) {
    max_degree_ = p.max_variable_degree();
    for (const auto& [e, c] : p.terms()) {
      coeffs_.push_back(to_double(c));
      exponents_.insert(exponents_.end(), e.begin(), e.end());
    }
  }

  int variables() const { return variables_; }
  bool is_zero() const { return coeffs_.empty(); }
  double operator()(std::span<const double> point) const;

 private:
  int variables_ = 0;
  int max_degree_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint16_t> exponents_;
};

template <typename Scalar>
double Polynomial<Scalar>::evaluate(std::span<const double> point) const {
  return CompiledPolynomial(*this)(point);
}

using RealPolynomial = Polynomial<double>;
using RationalPolynomial = Polynomial<Rational>;

/// Values and exact derivatives of a field at one point; row-major
/// dy[j*3 + b] = dy^j/dx^b, d2y[(j*3 + b)*3 + c] = d2y^j/dx^b dx^c.
struct FieldJet {
  std::vector<double> y;
  std::vector<double> dy;
  std::vector<double> d2y;
};

/// Polynomial map R^3 -> R^N with precompiled first and second derivatives.
class PolyField {
 public:
  PolyField() = default;
  explicit PolyField(std::vector<RealPolynomial> components);

  static PolyField zero(int components);
  /// Every monomial of total degree <= degree gets a coefficient from `draw`.
  template <typename Draw>
  static PolyField random(int components, int degree, Draw&& draw);
  /// Gradient of a scalar polynomial in x.
  static PolyField gradient_of(const RealPolynomial& potential);

  int components() const { return static_cast<int>(components_.size()); }
  const std::vector<RealPolynomial>& polynomials() const { return components_; }
  const RealPolynomial& operator[](int i) const { return components_.at(static_cast<std::size_t>(i)); }

  int total_degree() const;
  /// Largest exponent of any single coordinate; governs tensor-product quadrature.
  int max_variable_degree() const;

  FieldJet jet(std::span<const double, 3> x) const;
  std::vector<double> value(std::span<const double, 3> x) const;

  /// Replaces components [first, first + block.components()) with `block`.
  PolyField with_block(int first, const PolyField& block) const;

  friend PolyField operator+(const PolyField& a, const PolyField& b);
  /// Multiplies every component by a scalar polynomial.
  friend PolyField operator*(const RealPolynomial& s, const PolyField& f);

 private:
  void compile();

  std::vector<RealPolynomial> components_;
  std::vector<CompiledPolynomial> value_;
  std::vector<CompiledPolynomial> first_;   // [j*3 + b]
  std::vector<CompiledPolynomial> second_;  // [(j*3 + b)*3 + c]
};

/// Monomials of total degree <= degree in `variables` variables, graded order.
std::vector<Exponents> monomials_up_to(int variables, int degree);

template <typename Draw>
PolyField PolyField::random(int components, int degree, Draw&& draw) {
  const auto monos = monomials_up_to(3, degree);
  std::vector<RealPolynomial> comps;
  comps.reserve(static_cast<std::size_t>(components));
  for (int c = 0; c < components; ++c) {
    RealPolynomial p(3);
    for (const auto& e : monos) p.add_term(e, draw());
    comps.push_back(std::move(p));
  }
  return PolyField(std::move(comps));
}

/// b(x) = prod_a x_a (1 - x_a); vanishes on the boundary of the unit cube.
RealPolynomial cube_bubble();

}  // namespace nulllag
