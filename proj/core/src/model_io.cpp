#include "nulllag/model_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nulllag {

namespace {

void require_keys(const Json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      throw ValidationError(what + ": unknown key '" + key + "'");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) throw ValidationError(what + ": missing key '" + key + "'");
  }
}

template <int Rank>
Tensor<Rank> tensor_field(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (v.is_object()) return tensor_from_json<Rank>(v, key);
  return tensor_from_json_array<Rank>(v, key);
}

double number_field(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(key + ": non-finite value");
  return d;
}

IsotropicParams iso_params(const Json& j) {
  IsotropicParams p;
  p.lambda = number_field(j, "lambda");
  p.mu = number_field(j, "mu");
  p.kappa = number_field(j, "kappa");
  p.beta1 = number_field(j, "beta1");
  p.beta2 = number_field(j, "beta2");
  p.beta3 = number_field(j, "beta3");
  return p;
}

}  // namespace

std::string model_tag(const Model& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MicropolarModel>) {
          return v.tag;
        } else if constexpr (std::is_same_v<T, QuasicrystalModel>) {
          return "quasicrystal";
        } else {
          return "em_elast";
        }
      },
      m);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

Model parse_model(const Json& j) {
  if (!j.is_object()) throw ValidationError("model: expected a JSON object");
  if (!j.contains("model") || !j["model"].is_string()) throw ValidationError("model: missing string key 'model'");
  const std::string tag = j["model"].get<std::string>();
  if (tag == "micropolar") {
    require_keys(j, {"model", "A", "B", "D"}, {}, tag);
    MicropolarModel m;
    m.moduli = MicropolarModuli::create(tensor_field<4>(j, "A"), tensor_field<4>(j, "B"), tensor_field<4>(j, "D"));
    return m;
  }
  if (tag == "micropolar_isotropic") {
    require_keys(j, {"model", "lambda", "mu", "kappa", "beta1", "beta2", "beta3"}, {}, tag);
    MicropolarModel m;
    m.tag = tag;
    m.isotropic = iso_params(j);
    m.moduli = m.isotropic->moduli();
    return m;
  }
  if (tag == "micropolar_hemitropic") {
    require_keys(j, {"model", "lambda", "mu", "kappa", "beta1", "beta2", "beta3", "zeta", "nu", "rho"}, {}, tag);
    const IsotropicParams iso = iso_params(j);
    HemitropicParams h{iso.lambda, iso.mu,          iso.kappa,           iso.beta1,         iso.beta2,
                       iso.beta3,  number_field(j, "zeta"), number_field(j, "nu"), number_field(j, "rho")};
    MicropolarModel m;
    m.tag = tag;
    m.hemitropic = h;
    m.moduli = h.moduli();
    return m;
  }
  if (tag == "quasicrystal") {
    require_keys(j, {"model", "C", "D", "E"}, {}, tag);
    return QuasicrystalModel{
        QcModuli::create(tensor_field<4>(j, "C"), tensor_field<4>(j, "D"), tensor_field<4>(j, "E"))};
  }
  if (tag == "em_elast") {
    require_keys(j, {"model", "C", "P", "Q", "Ediel", "Bperm", "Acpl"}, {"coupling"}, tag);
    EmModel m;
    m.moduli = EmModuli::create(tensor_field<4>(j, "C"), tensor_field<2>(j, "Ediel"), tensor_field<2>(j, "Bperm"),
                                tensor_field<3>(j, "P"), tensor_field<3>(j, "Q"), tensor_field<2>(j, "Acpl"));
    if (j.contains("coupling")) {
      const Json& c = j["coupling"];
      if (c == "magnetic") {
        m.coupling = EmCoupling::magnetic;
      } else if (c == "electric_verbatim") {
        m.coupling = EmCoupling::electric_verbatim;
      } else {
        throw ValidationError("coupling: expected \"magnetic\" or \"electric_verbatim\"");
      }
    }
    return m;
  }
  throw ValidationError("unknown model tag '" + tag + "'");
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_json_file(path)); }

Json model_to_json(const Model& model) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MicropolarModel>) {
          if (m.isotropic) {
            const auto& p = *m.isotropic;
            return Json{{"model", m.tag}, {"lambda", p.lambda}, {"mu", p.mu},       {"kappa", p.kappa},
                        {"beta1", p.beta1}, {"beta2", p.beta2}, {"beta3", p.beta3}};
          }
          if (m.hemitropic) {
            const auto& p = *m.hemitropic;
            return Json{{"model", m.tag}, {"lambda", p.lambda}, {"mu", p.mu},     {"kappa", p.kappa},
                        {"beta1", p.beta1}, {"beta2", p.beta2}, {"beta3", p.beta3}, {"zeta", p.zeta},
                        {"nu", p.nu},       {"rho", p.rho}};
          }
          return Json{{"model", "micropolar"},
                      {"A", to_json_array(m.moduli.A)},
                      {"B", to_json_array(m.moduli.B)},
                      {"D", to_json_array(m.moduli.D)}};
        } else if constexpr (std::is_same_v<T, QuasicrystalModel>) {
          return Json{{"model", "quasicrystal"},
                      {"C", to_json_array(m.moduli.C)},
                      {"D", to_json_array(m.moduli.D)},
                      {"E", to_json_array(m.moduli.E)}};
        } else {
          Json j{{"model", "em_elast"},
                 {"C", to_json_array(m.moduli.C)},
                 {"P", to_json_array(m.moduli.P)},
                 {"Q", to_json_array(m.moduli.Q)},
                 {"Ediel", to_json_array(m.moduli.Ediel)},
                 {"Bperm", to_json_array(m.moduli.Bperm)},
                 {"Acpl", to_json_array(m.moduli.Acpl)}};
          if (m.coupling == EmCoupling::electric_verbatim) j["coupling"] = "electric_verbatim";
          return j;
        }
      },
      model);
}

LagrangianEvaluator model_lagrangian(const Model& model) {
  return std::visit(
      [](const auto& m) -> LagrangianEvaluator {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MicropolarModel>) {
          return micropolar_lagrangian(m.moduli, m.tag);
        } else if constexpr (std::is_same_v<T, QuasicrystalModel>) {
          return qc_lagrangian(m.moduli);
        } else {
          return em_lagrangian(m.moduli, m.coupling);
        }
      },
      model);
}

bool is_generator_document(const Json& j) { return j.is_array(); }

GeneratorSet parse_generators(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("generators: expected a list of three polynomials");
  int variables = -1;
  std::array<RationalPolynomial, 3> s;
  for (std::size_t a = 0; a < 3; ++a) {
    const Json& poly = j[a];
    const std::string what = "generators[" + std::to_string(a) + "]";
    if (!poly.is_array()) throw ValidationError(what + ": expected a list of terms");
    std::vector<std::pair<Exponents, Rational>> terms;
    for (const Json& term : poly) {
      if (!term.is_object()) throw ValidationError(what + ": term must be an object");
      require_keys(term, {"exponents", "coeff"}, {}, what);
      const Json& e = term["exponents"];
      if (!e.is_array()) throw ValidationError(what + ": exponents must be a list");
      if (variables < 0) variables = static_cast<int>(e.size());
      if (static_cast<int>(e.size()) != variables) {
        throw ValidationError(what + ": expected length " + std::to_string(variables) + " exponent list, got length " +
                              std::to_string(e.size()));
      }
      Exponents ex;
      for (const Json& v : e) {
        if (!v.is_number_unsigned() || v.get<unsigned>() > 64) {
          throw ValidationError(what + ": exponents must be integers in [0, 64]");
        }
        ex.push_back(static_cast<std::uint16_t>(v.get<unsigned>()));
      }
      const Json& c = term["coeff"];
      Rational coeff;
      if (c.is_string()) {
        coeff = parse_rational(c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeff = Rational(c.get<long long>());
      } else {
        throw ValidationError(what + ": coeff must be a rational string or an integer");
      }
      terms.emplace_back(std::move(ex), std::move(coeff));
    }
    s[a] = RationalPolynomial(std::max(variables, 0));
    for (auto& [ex, c] : terms) s[a].add_term(std::move(ex), c);
  }
  if (variables < 4) throw ValidationError("generators: exponent lists must have 3 + N entries with N >= 1");
  for (auto& p : s) {
    if (p.variables() != variables) p = RationalPolynomial(variables);
  }
  return GeneratorSet(variables - 3, std::move(s));
}

GeneratorSet load_generators(const std::filesystem::path& path) { return parse_generators(read_json_file(path)); }

Json generators_to_json(const GeneratorSet& g) {
  Json out = Json::array();
  for (const auto& p : g.generators()) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponents", e}, {"coeff", format_rational(c)}});
    out.push_back(std::move(terms));
  }
  return out;
}

}  // namespace nulllag
