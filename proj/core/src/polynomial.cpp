#include "nulllag/polynomial.hpp"

#include <cctype>

namespace nulllag {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

cpp_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ValidationError("malformed rational '" + std::string(whole) + "'");
  // Leading zeros would select octal in the cpp_int string constructor.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  cpp_int v{std::string(s)};
  return negative ? cpp_int(-v) : v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const cpp_int ev = parse_integer(s.substr(e + 1), whole);
    if (ev > 400 || ev < -400) throw ValidationError("exponent out of range in '" + std::string(whole) + "'");
    exponent = ev.convert_to<long>();
    s = s.substr(0, e);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto ip = s.substr(0, dot);
    const auto fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw ValidationError("malformed rational '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ValidationError("malformed rational '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  const auto nz = digits.find_first_not_of('0');
  cpp_int num{nz == std::string::npos ? std::string("0") : digits.substr(nz)};
  cpp_int den(1);
  const cpp_int ten(10);
  for (long k = 0; k < exponent; ++k) num *= ten;
  for (long k = 0; k > exponent; --k) den *= ten;
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), text);
    const cpp_int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text, text);
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != variables_) {
    throw ValidationError("polynomial in " + std::to_string(variables_) + " variables evaluated at a point of size " +
                          std::to_string(point.size()));
  }
  if (coeffs_.empty()) return 0.0;
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  // Power table pw[v*stride + e] = x_v^e.
  thread_local std::vector<double> pw;
  pw.resize(static_cast<std::size_t>(variables_) * stride);
  for (std::size_t v = 0; v < static_cast<std::size_t>(variables_); ++v) {
    double p = 1.0;
    for (std::size_t e = 0; e < stride; ++e) {
      pw[v * stride + e] = p;
      p *= point[v];
    }
  }
  double sum = 0.0;
  const std::size_t nv = static_cast<std::size_t>(variables_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const std::uint16_t* e = exponents_.data() + t * nv;
    for (std::size_t v = 0; v < nv; ++v) term *= pw[v * stride + e[v]];
    sum += term;
  }
  return sum;
}

std::vector<Exponents> monomials_up_to(int variables, int degree) {
  std::vector<Exponents> out;
  Exponents cur(static_cast<std::size_t>(variables), 0);
  for (int d = 0; d <= degree; ++d) {
    // Enumerate all exponent vectors of total degree d.
    auto rec = [&](auto&& self, int v, int left) -> void {
      if (v == variables - 1) {
        cur[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(left);
        out.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(k);
        self(self, v + 1, left - k);
      }
    };
    if (variables == 0) {
      if (d == 0) out.push_back(cur);
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

PolyField::PolyField(std::vector<RealPolynomial> components) : components_(std::move(components)) {
  for (const auto& p : components_) {
    if (p.variables() != kDim) throw ValidationError("field components must be polynomials in 3 variables");
  }
  compile();
}

void PolyField::compile() {
  value_.clear();
  first_.clear();
  second_.clear();
  for (const auto& p : components_) {
    value_.emplace_back(p);
    for (int b = 0; b < kDim; ++b) {
      const auto db = p.derivative(b);
      first_.emplace_back(db);
      for (int c = 0; c < kDim; ++c) second_.emplace_back(db.derivative(c));
    }
  }
}

PolyField PolyField::zero(int components) {
  return PolyField(std::vector<RealPolynomial>(static_cast<std::size_t>(components), RealPolynomial(kDim)));
}

PolyField PolyField::gradient_of(const RealPolynomial& potential) {
  std::vector<RealPolynomial> comps;
  for (int b = 0; b < kDim; ++b) comps.push_back(potential.derivative(b));
  return PolyField(std::move(comps));
}

int PolyField::total_degree() const {
  int d = 0;
  for (const auto& p : components_) d = std::max(d, p.total_degree());
  return d;
}

int PolyField::max_variable_degree() const {
  int d = 0;
  for (const auto& p : components_) d = std::max(d, p.max_variable_degree());
  return d;
}

FieldJet PolyField::jet(std::span<const double, 3> x) const {
  FieldJet j;
  j.y.reserve(value_.size());
  j.dy.reserve(first_.size());
  j.d2y.reserve(second_.size());
  for (const auto& p : value_) j.y.push_back(p(x));
  for (const auto& p : first_) j.dy.push_back(p(x));
  for (const auto& p : second_) j.d2y.push_back(p(x));
  return j;
}

std::vector<double> PolyField::value(std::span<const double, 3> x) const {
  std::vector<double> v;
  v.reserve(value_.size());
  for (const auto& p : value_) v.push_back(p(x));
  return v;
}

PolyField PolyField::with_block(int first, const PolyField& block) const {
  if (first < 0 || first + block.components() > components()) throw ValidationError("field block out of range");
  auto comps = components_;
  for (int c = 0; c < block.components(); ++c) comps[static_cast<std::size_t>(first + c)] = block[c];
  return PolyField(std::move(comps));
}

PolyField operator+(const PolyField& a, const PolyField& b) {
  if (a.components() != b.components()) throw ValidationError("adding fields with different component counts");
  std::vector<RealPolynomial> comps;
  for (int c = 0; c < a.components(); ++c) comps.push_back(a[c] + b[c]);
  return PolyField(std::move(comps));
}

PolyField operator*(const RealPolynomial& s, const PolyField& f) {
  std::vector<RealPolynomial> comps;
  for (int c = 0; c < f.components(); ++c) comps.push_back(s * f[c]);
  return PolyField(std::move(comps));
}

RealPolynomial cube_bubble() {
  RealPolynomial b = RealPolynomial::constant(kDim, 1.0);
  const RealPolynomial one = RealPolynomial::constant(kDim, 1.0);
  for (int a = 0; a < kDim; ++a) {
    const auto xa = RealPolynomial::variable(kDim, a);
    b = b * (xa * (one - xa));
  }
  return b;
}

}  // namespace nulllag
