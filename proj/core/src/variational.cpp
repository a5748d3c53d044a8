#include "nulllag/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <exception>
#include <thread>

#include "nulllag/quadrature.hpp"

namespace nulllag {

QuadraticForm::QuadraticForm(int n, Eigen::MatrixXd matrix) : arity(n), q(std::move(matrix)) {
  if (q.rows() != 4 * n || q.cols() != 4 * n) throw ValidationError("quadratic form must be 4N x 4N");
  if (!q.allFinite()) throw ValidationError("quadratic form has non-finite entries");
}

QuadraticForm QuadraticForm::from_energy(
    int n, const std::function<double(std::span<const double>, std::span<const double>)>& energy) {
  const int m = 4 * n;
  std::vector<double> z(static_cast<std::size_t>(m), 0.0);
  auto eval = [&] {
    return energy(std::span<const double>(z.data(), static_cast<std::size_t>(n)),
                  std::span<const double>(z.data() + n, static_cast<std::size_t>(3 * n)));
  };
  std::vector<double> diag(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    z[static_cast<std::size_t>(a)] = 1.0;
    diag[static_cast<std::size_t>(a)] = eval();
    z[static_cast<std::size_t>(a)] = 0.0;
  }
  Eigen::MatrixXd q(m, m);
  for (int a = 0; a < m; ++a) {
    q(a, a) = 2.0 * diag[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < m; ++b) {
      z[static_cast<std::size_t>(a)] = z[static_cast<std::size_t>(b)] = 1.0;
      const double v = eval() - diag[static_cast<std::size_t>(a)] - diag[static_cast<std::size_t>(b)];
      z[static_cast<std::size_t>(a)] = z[static_cast<std::size_t>(b)] = 0.0;
      q(a, b) = q(b, a) = v;
    }
  }
  return QuadraticForm(n, std::move(q));
}

double QuadraticForm::value(std::span<const double> y, std::span<const double> p) const {
  Eigen::VectorXd z(size());
  for (int a = 0; a < arity; ++a) z(a) = y[static_cast<std::size_t>(a)];
  for (int a = 0; a < 3 * arity; ++a) z(arity + a) = p[static_cast<std::size_t>(a)];
  return 0.5 * z.dot(q * z);
}

double QuadraticForm::max_pp() const {
  return q.bottomRightCorner(3 * arity, 3 * arity).cwiseAbs().maxCoeff();
}

LagrangianEvaluator::LagrangianEvaluator(int arity, LagrangianFn fn, std::string name)
    : arity_(arity), fn_(std::move(fn)), name_(std::move(name)) {
  if (arity < 1) throw ValidationError("Lagrangian arity must be >= 1");
}

LagrangianEvaluator LagrangianEvaluator::quadratic(QuadraticForm form, std::string name) {
  const int n = form.arity;
  auto shared = std::make_shared<const QuadraticForm>(form);
  LagrangianEvaluator lag(
      n, [shared](std::span<const double, 3>, std::span<const double> y, std::span<const double> p) {
        return shared->value(y, p);
      },
      std::move(name));
  lag.quadratic_ = std::move(form);
  lag.degree_bound_ = [](int d) { return 2 * d; };
  return lag;
}

LagrangianEvaluator LagrangianEvaluator::constant(int arity, double c) {
  LagrangianEvaluator lag = quadratic(QuadraticForm(arity, Eigen::MatrixXd::Zero(4 * arity, 4 * arity)), "constant");
  lag.fn_ = [c](std::span<const double, 3>, std::span<const double>, std::span<const double>) { return c; };
  lag.degree_bound_ = [](int) { return 0; };
  return lag;
}

std::optional<int> LagrangianEvaluator::integrand_degree(int field_degree) const {
  if (!degree_bound_) return std::nullopt;
  return degree_bound_(field_degree);
}

double LagrangianEvaluator::operator()(std::span<const double, 3> x, std::span<const double> y,
                                       std::span<const double> p) const {
  if (static_cast<int>(y.size()) != arity_ || static_cast<int>(p.size()) != 3 * arity_) {
    throw ValidationError("Lagrangian of arity " + std::to_string(arity_) + " called with " +
                          std::to_string(y.size()) + " field values");
  }
  const double v = fn_(x, y, p);
  if (!std::isfinite(v)) throw ValidationError("non-finite Lagrangian value");
  return v;
}

std::string to_string(ResidualPath path) {
  switch (path) {
    case ResidualPath::automatic: return "automatic";
    case ResidualPath::closed_form: return "closed_form";
    case ResidualPath::finite_difference: return "finite_difference";
  }
  return "unknown";
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

EulerResidual closed_form_residual(const QuadraticForm& form, const FieldJet& jet) {
  const int n = form.arity;
  const auto& q = form.q;
  auto P = [n](int j, int b) { return n + 3 * j + b; };
  EulerResidual r;
  r.path = ResidualPath::closed_form;
  r.values.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int g = 0; g < 3; ++g) {
      const int row = P(k, g);
      for (int j = 0; j < n; ++j) {
        s += q(row, j) * jet.dy[static_cast<std::size_t>(j * 3 + g)];
        for (int b = 0; b < 3; ++b) s += q(row, P(j, b)) * jet.d2y[static_cast<std::size_t>((j * 3 + b) * 3 + g)];
      }
    }
    for (int j = 0; j < n; ++j) {
      s -= q(k, j) * jet.y[static_cast<std::size_t>(j)];
      for (int b = 0; b < 3; ++b) s -= q(k, P(j, b)) * jet.dy[static_cast<std::size_t>(j * 3 + b)];
    }
    r.values[static_cast<std::size_t>(k)] = s;
  }
  r.scale = 1.0 + form.max_pp() * max_abs(jet.d2y);
  return r;
}

// Psi as a function of the packed argument z = (x, y, p).
class PackedLagrangian {
 public:
  PackedLagrangian(const LagrangianEvaluator& lag, const Point3& x, const FieldJet& jet, double base)
      : lag_(lag), n_(lag.arity()), base_(base) {
    z0_.reserve(static_cast<std::size_t>(3 + 4 * n_));
    z0_.insert(z0_.end(), x.begin(), x.end());
    z0_.insert(z0_.end(), jet.y.begin(), jet.y.end());
    z0_.insert(z0_.end(), jet.dy.begin(), jet.dy.end());
    work_ = z0_;
  }

  int x_offset() const { return 0; }
  int y_offset() const { return 3; }
  int p_offset() const { return 3 + n_; }
  std::size_t size() const { return z0_.size(); }
  double at(int a) const { return z0_[static_cast<std::size_t>(a)]; }

  double step(double magnitude) const {
    const double h = base_ * (1.0 + std::abs(magnitude));
    if (!(h > 1e3 * std::numeric_limits<double>::min()) || !std::isfinite(h)) {
      throw ValidationError("finite-difference step underflow");
    }
    return h;
  }

  // f(z0 + sum_i c_i d_i), directions given densely.
  double eval_shift(const std::vector<std::pair<const std::vector<double>*, double>>& moves) {
    work_ = z0_;
    for (const auto& [dir, c] : moves)
      for (std::size_t a = 0; a < work_.size(); ++a) work_[a] += c * (*dir)[a];
    const std::span<const double, 3> x(work_.data(), 3);
    return lag_(x, std::span<const double>(work_.data() + 3, static_cast<std::size_t>(n_)),
                std::span<const double>(work_.data() + 3 + n_, static_cast<std::size_t>(3 * n_)));
  }

  std::vector<double> unit(int a) const {
    std::vector<double> e(z0_.size(), 0.0);
    e[static_cast<std::size_t>(a)] = 1.0;
    return e;
  }

  // Mixed second derivative along u (step hu) and v (step hv), two-level Richardson.
  double mixed(const std::vector<double>& u, double hu, const std::vector<double>& v, double hv) {
    auto level = [&](double su, double sv) {
      const double fpp = eval_shift({{&u, su}, {&v, sv}});
      const double fpm = eval_shift({{&u, su}, {&v, -sv}});
      const double fmp = eval_shift({{&u, -su}, {&v, sv}});
      const double fmm = eval_shift({{&u, -su}, {&v, -sv}});
      return (fpp - fpm - fmp + fmm) / (4.0 * su * sv);
    };
    const double d1 = level(hu, hv);
    const double d2 = level(0.5 * hu, 0.5 * hv);
    return (4.0 * d2 - d1) / 3.0;
  }

  double first(const std::vector<double>& u, double h) {
    auto level = [&](double s) { return (eval_shift({{&u, s}}) - eval_shift({{&u, -s}})) / (2.0 * s); };
    const double d1 = level(h);
    const double d2 = level(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
  }

 private:
  const LagrangianEvaluator& lag_;
  int n_;
  double base_;
  std::vector<double> z0_;
  std::vector<double> work_;
};

EulerResidual fd_residual(const LagrangianEvaluator& lag, const Point3& x, const FieldJet& jet, const FdOptions& fd) {
  const int n = lag.arity();
  const int np = 3 * n;
  PackedLagrangian f(lag, x, jet, fd.base_step);
  const int po = f.p_offset();

  std::vector<std::vector<double>> units;
  units.reserve(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) units.push_back(f.unit(static_cast<int>(a)));
  std::vector<double> steps(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) steps[a] = f.step(f.at(static_cast<int>(a)));

  // Full (p, p) Hessian; gives the d2y contraction and the normalization scale.
  Eigen::MatrixXd hpp(np, np);
  for (int a = 0; a < np; ++a) {
    for (int b = a; b < np; ++b) {
      const auto ia = static_cast<std::size_t>(po + a);
      const auto ib = static_cast<std::size_t>(po + b);
      const double v = f.mixed(units[ia], steps[ia], units[ib], steps[ib]);
      hpp(a, b) = hpp(b, a) = v;
    }
  }

  EulerResidual r;
  r.path = ResidualPath::finite_difference;
  r.values.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int g = 0; g < 3; ++g) {
      // Explicit x and y dependence: derivative of dPsi/dp[k][g] along (e_g, y_,g, 0).
      std::vector<double> dir(f.size(), 0.0);
      dir[static_cast<std::size_t>(g)] = 1.0;
      double norm = 1.0;
      for (int j = 0; j < n; ++j) {
        const double v = jet.dy[static_cast<std::size_t>(j * 3 + g)];
        dir[static_cast<std::size_t>(f.y_offset() + j)] = v;
        norm = std::max(norm, std::abs(v));
      }
      const double ht = f.step(f.at(g)) / norm;
      const auto ik = static_cast<std::size_t>(po + 3 * k + g);
      s += f.mixed(dir, ht, units[ik], steps[ik]);
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < 3; ++b)
          s += hpp(3 * k + g, 3 * j + b) * jet.d2y[static_cast<std::size_t>((j * 3 + b) * 3 + g)];
    }
    const auto iy = static_cast<std::size_t>(f.y_offset() + k);
    s -= f.first(units[iy], steps[iy]);
    r.values[static_cast<std::size_t>(k)] = s;
  }
  r.scale = 1.0 + hpp.cwiseAbs().maxCoeff() * max_abs(jet.d2y);
  return r;
}

}  // namespace

EulerResidual euler_residual_at(const LagrangianEvaluator& lag, const Point3& x, const FieldJet& jet,
                                ResidualPath path, const FdOptions& fd) {
  const auto n = static_cast<std::size_t>(lag.arity());
  if (jet.y.size() != n || jet.dy.size() != 3 * n || jet.d2y.size() != 9 * n) {
    throw ValidationError("field has " + std::to_string(jet.y.size()) + " components, Lagrangian expects " +
                          std::to_string(n));
  }
  if (path == ResidualPath::automatic) {
    path = lag.quadratic_form() ? ResidualPath::closed_form : ResidualPath::finite_difference;
  }
  EulerResidual r;
  if (path == ResidualPath::closed_form) {
    if (!lag.quadratic_form()) throw ValidationError("closed-form residual requires a quadratic Lagrangian");
    r = closed_form_residual(*lag.quadratic_form(), jet);
  } else {
    r = fd_residual(lag, x, jet, fd);
  }
  for (double v : r.values) {
    if (!std::isfinite(v)) throw ValidationError("non-finite Euler residual");
  }
  r.normalized = max_abs(r.values) / r.scale;
  return r;
}

EulerResidual euler_residual_detail(const LagrangianEvaluator& lag, const PolyField& y, const Point3& x,
                                    ResidualPath path, const FdOptions& fd) {
  return euler_residual_at(lag, x, y.jet(x), path, fd);
}

std::vector<double> euler_residual(const LagrangianEvaluator& lag, const PolyField& y, const Point3& x,
                                   ResidualPath path, const FdOptions& fd) {
  return euler_residual_detail(lag, y, x, path, fd).values;
}

std::optional<int> exact_action_order(const LagrangianEvaluator& lag, const PolyField& y) {
  const auto deg = lag.integrand_degree(y.max_variable_degree());
  if (!deg) return std::nullopt;
  return required_order(*deg);
}

double action_integral(const LagrangianEvaluator& lag, const PolyField& y, int order) {
  if (y.components() != lag.arity()) throw ValidationError("field and Lagrangian arity differ");
  if (const auto need = exact_action_order(lag, y); need && *need > order) {
    throw ValidationError("quadrature order " + std::to_string(order) +
                          " is not exact for this integrand; required order " + std::to_string(*need));
  }
  double sum = 0.0;
  for (const auto& pt : cube_rule(order)) {
    const auto jet = y.jet(pt.x);
    sum += pt.w * lag(pt.x, jet.y, jet.dy);
  }
  return sum;
}

double boundary_dependence_test(const LagrangianEvaluator& lag, const PolyField& y, const PolyField& w, int order) {
  const PolyField perturbed = y + cube_bubble() * w;
  return std::abs(action_integral(lag, perturbed, order) - action_integral(lag, y, order));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PolyField random_field(std::mt19937_64& rng, int components, int degree) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  return PolyField::random(components, degree, [&] { return coeff(rng); });
}

FieldSampler default_sampler() {
  FieldSampler s;
  s.name = "polynomial";
  s.field = [](std::mt19937_64& rng, int n, int d) { return random_field(rng, n, d); };
  s.perturbation = [](std::mt19937_64& rng, int n, int d) { return cube_bubble() * random_field(rng, n, d); };
  return s;
}

FieldSampler curl_free_sampler(int first) {
  FieldSampler s;
  s.name = "curl_free";
  s.field = [first](std::mt19937_64& rng, int n, int d) {
    if (first < 0 || first + 3 > n) throw ValidationError("curl-free block out of range");
    const PolyField base = random_field(rng, n, d);
    const PolyField potential = random_field(rng, 1, d + 1);
    return base.with_block(first, PolyField::gradient_of(potential[0]));
  };
  s.perturbation = [first](std::mt19937_64& rng, int n, int d) {
    if (first < 0 || first + 3 > n) throw ValidationError("curl-free block out of range");
    const RealPolynomial b = cube_bubble();
    const PolyField base = b * random_field(rng, n, d);
    const PolyField g = random_field(rng, 1, d);
    return base.with_block(first, PolyField::gradient_of(b * b * g[0]));
  };
  return s;
}

int worker_count(int requested) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NULLLAG_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
    }
  }
  return std::max(1, n);
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(threads), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

NullCertificate certify_null(const LagrangianEvaluator& lag, int trials, int degree, std::uint64_t seed,
                             const CertifyOptions& options) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (degree < 2) throw ValidationError("degree must be >= 2");
  const int n = lag.arity();
  const FieldSampler sampler = options.sampler ? *options.sampler : default_sampler();
  ResidualPath path = options.path;
  if (path == ResidualPath::automatic) {
    path = lag.quadratic_form() ? ResidualPath::closed_form : ResidualPath::finite_difference;
  }

  NullCertificate cert;
  cert.trials = trials;
  cert.degree = degree;
  cert.seed = seed;
  cert.path = path;
  cert.sampler = sampler.name;
  cert.residual_tolerance = options.residual_tolerance >= 0.0
                                ? options.residual_tolerance
                                : (path == ResidualPath::closed_form ? kClosedFormTolerance : kFiniteDifferenceTolerance);
  cert.action_tolerance = options.action_tolerance;

  std::vector<double> residuals(static_cast<std::size_t>(trials));
  parallel_for(trials, options.threads, [&](int t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    const PolyField y = sampler.field(rng, n, degree);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Point3 x{unit(rng), unit(rng), unit(rng)};
    residuals[static_cast<std::size_t>(t)] = euler_residual_detail(lag, y, x, path, options.fd).normalized;
  });
  for (double r : residuals) cert.max_normalized_residual = std::max(cert.max_normalized_residual, r);

  const int pairs = std::max(0, options.boundary_pairs);
  cert.boundary_action_deltas.assign(static_cast<std::size_t>(pairs), 0.0);
  cert.boundary_action_relative.assign(static_cast<std::size_t>(pairs), 0.0);
  std::vector<int> orders(static_cast<std::size_t>(pairs), options.quadrature_order);
  parallel_for(pairs, options.threads, [&](int i) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trials + i)));
    const PolyField y = sampler.field(rng, n, degree);
    const PolyField perturbed = y + sampler.perturbation(rng, n, degree);
    int order = options.quadrature_order;
    if (const auto need = exact_action_order(lag, perturbed)) order = std::max(order, *need);
    const double a0 = action_integral(lag, y, order);
    const double a1 = action_integral(lag, perturbed, order);
    const double delta = std::abs(a1 - a0);
    cert.boundary_action_deltas[static_cast<std::size_t>(i)] = delta;
    cert.boundary_action_relative[static_cast<std::size_t>(i)] = delta / std::max(1.0, std::abs(a0));
    orders[static_cast<std::size_t>(i)] = order;
  });
  cert.quadrature_order = options.quadrature_order;
  for (int o : orders) cert.quadrature_order = std::max(cert.quadrature_order, o);

  cert.residual_passed = cert.max_normalized_residual <= cert.residual_tolerance;
  cert.action_passed = std::all_of(cert.boundary_action_relative.begin(), cert.boundary_action_relative.end(),
                                   [&](double d) { return d <= cert.action_tolerance; });
  cert.passed = cert.residual_passed && cert.action_passed;
  return cert;
}

}  // namespace nulllag
