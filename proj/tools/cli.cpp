#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "nulllag/model_io.hpp"

namespace nulllag::cli {

namespace {

Json condition_json(const ConditionRecord& r) {
  return Json{{"name", r.name},
              {"max_violation", r.max_violation},
              {"relative_violation", r.relative_violation},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

Json report_json(const ConditionReport& report) {
  Json a = Json::array();
  for (const auto& r : report.records) a.push_back(condition_json(r));
  return a;
}

void retolerance(ConditionReport& report, double tol) {
  for (auto& r : report.records) {
    r.tolerance = tol;
    r.passed = r.max_violation <= tol;
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void print_report_text(std::ostream& out, const ConditionReport& report) {
  for (const auto& r : report.records) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  violation " << fmt(r.max_violation) << "  tolerance "
        << fmt(r.tolerance) << '\n';
  }
}

ResidualPath parse_path(const std::string& s) {
  if (s == "auto") return ResidualPath::automatic;
  if (s == "closed") return ResidualPath::closed_form;
  if (s == "fd") return ResidualPath::finite_difference;
  throw ValidationError("path: expected auto, closed or fd");
}

struct Input {
  std::optional<Model> model;
  std::optional<GeneratorSet> generators;

  LagrangianEvaluator lagrangian() const {
    if (generators) return build_null_lagrangian(*generators);
    return model_lagrangian(*model);
  }
  std::string tag() const { return generators ? std::string("generators") : model_tag(*model); }
};

Input load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ValidationError("no input file given");
  const Json doc = read_json_file(cfg.input);
  Input in;
  if (is_generator_document(doc)) {
    in.generators = parse_generators(doc);
  } else {
    in.model = parse_model(doc);
  }
  return in;
}

const Model& require_model(const Input& in, const std::string& command) {
  if (!in.model) throw ValidationError(command + " expects a model file, not a generator file");
  return *in.model;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const Model& model = require_model(in, "check");
  ConditionReport report = std::visit(
      [](const auto& m) -> ConditionReport {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MicropolarModel>) {
          return check_null_sufficient(m.moduli);
        } else if constexpr (std::is_same_v<T, QuasicrystalModel>) {
          return check_qc_null(m.moduli);
        } else {
          return check_em_null(m.moduli);
        }
      },
      model);
  if (cfg.tol_abs) retolerance(report, *cfg.tol_abs);
  const bool passed = report.passed();
  if (cfg.format == Format::json) {
    out << Json{{"command", "check"}, {"model", model_tag(model)}, {"passed", passed}, {"conditions", report_json(report)}}
               .dump(2)
        << '\n';
  } else {
    out << "check " << model_tag(model) << '\n';
    print_report_text(out, report);
    out << (passed ? "verdict PASS" : "verdict FAIL") << '\n';
  }
  return passed ? kExitPass : kExitFail;
}

int cmd_split(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const Model& model = require_model(in, "split");
  const auto* mp = std::get_if<MicropolarModel>(&model);
  if (!mp) throw ValidationError("split expects a micropolar model, got '" + model_tag(model) + "'");
  const BSplit s = split_B(mp->moduli.B);
  ConditionReport cauchy = cauchy_analogue(s.b_tilde);
  if (cfg.tol_abs) retolerance(cauchy, *cfg.tol_abs);
  const TildeStructure ts = tilde_structure();

  Json table = Json::array();
  for (const auto& e : cauchy_analogue_entries()) {
    const double v = s.b_tilde(e[0] - 1, e[1] - 1, e[2] - 1, e[3] - 1);
    table.push_back(Json{{"index", e}, {"value", v}});
  }
  if (cfg.format == Format::json) {
    out << Json{{"command", "split"},
                {"model", model_tag(model)},
                {"b_hat", to_json_array(s.b_hat)},
                {"b_tilde", to_json_array(s.b_tilde)},
                {"b_ring", to_json_array(s.b_ring)},
                {"b_ring_max_abs", s.b_ring.max_abs()},
                {"cauchy_analogue", Json{{"table", table}, {"passed", cauchy.passed()}, {"conditions", report_json(cauchy)}}},
                {"zero_entries", ts.zero_entries},
                {"independent_entries", ts.independent_entries},
                {"tilde_dimension", ts.tilde_dimension}}
               .dump(2)
        << '\n';
  } else {
    out << "split " << model_tag(model) << '\n';
    out << "b_ring max abs " << fmt(s.b_ring.max_abs()) << '\n';
    out << "tilde entries (1-based ijkl):\n";
    for (const auto& row : table) {
      const auto idx = row["index"].get<std::array<int, 4>>();
      out << "  B~_" << idx[0] << idx[1] << idx[2] << idx[3] << " = " << fmt(row["value"].get<double>()) << '\n';
    }
    out << "zero entries " << ts.zero_entries << ", independent entries " << ts.independent_entries
        << ", tilde dimension " << ts.tilde_dimension << '\n';
    out << (cauchy.passed() ? "cauchy analogue PASS" : "cauchy analogue FAIL") << '\n';
  }
  return kExitPass;
}

Json certificate_json(const NullCertificate& c) {
  return Json{{"passed", c.passed},
              {"residual_passed", c.residual_passed},
              {"action_passed", c.action_passed},
              {"max_normalized_residual", c.max_normalized_residual},
              {"residual_tolerance", c.residual_tolerance},
              {"action_tolerance", c.action_tolerance},
              {"boundary_action_deltas", c.boundary_action_deltas},
              {"boundary_action_relative", c.boundary_action_relative},
              {"trials", c.trials},
              {"degree", c.degree},
              {"seed", c.seed},
              {"quadrature_order", c.quadrature_order},
              {"path", to_string(c.path)},
              {"sampler", c.sampler}};
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const LagrangianEvaluator lag = in.lagrangian();
  CertifyOptions opts;
  if (cfg.tol_norm) opts.residual_tolerance = *cfg.tol_norm;
  if (cfg.tol_abs) opts.action_tolerance = *cfg.tol_abs;
  opts.quadrature_order = cfg.order;
  opts.path = parse_path(cfg.path);
  if (cfg.curl_free > 0) opts.sampler = curl_free_sampler(cfg.curl_free - 1);
  const NullCertificate c = certify_null(lag, cfg.trials, cfg.degree, cfg.seed, opts);
  if (cfg.format == Format::json) {
    Json j = certificate_json(c);
    j["command"] = "certify";
    j["model"] = in.tag();
    out << j.dump(2) << '\n';
  } else {
    double worst = 0.0;
    for (double v : c.boundary_action_relative) worst = std::max(worst, v);
    out << "certify " << in.tag() << " (" << c.trials << " trials, degree " << c.degree << ", seed " << c.seed << ", "
        << to_string(c.path) << " path, sampler " << c.sampler << ")\n";
    out << (c.residual_passed ? "PASS  " : "FAIL  ") << "euler residual  " << fmt(c.max_normalized_residual)
        << "  tolerance " << fmt(c.residual_tolerance) << '\n';
    out << (c.action_passed ? "PASS  " : "FAIL  ") << "boundary action  " << fmt(worst) << "  tolerance "
        << fmt(c.action_tolerance) << '\n';
    out << (c.passed ? "verdict PASS" : "verdict FAIL") << '\n';
  }
  return c.passed ? kExitPass : kExitFail;
}

int cmd_action(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const LagrangianEvaluator lag = in.lagrangian();
  if (cfg.degree < 0) throw ValidationError("degree must be non-negative");
  std::mt19937_64 rng(mix_seed(cfg.seed, 0));
  const PolyField y = random_field(rng, lag.arity(), cfg.degree);
  int order = cfg.order;
  const auto exact = exact_action_order(lag, y);
  if (exact) order = std::max(order, *exact);
  const double action = action_integral(lag, y, order);
  const Point3 centre{0.5, 0.5, 0.5};
  const auto jet = y.jet(centre);
  const double density = lag(centre, jet.y, jet.dy);
  if (cfg.format == Format::json) {
    out << Json{{"command", "action"},
                {"model", in.tag()},
                {"action", action},
                {"density_at_centre", density},
                {"quadrature_order", order},
                {"exact", exact.has_value()},
                {"degree", cfg.degree},
                {"seed", cfg.seed}}
               .dump(2)
        << '\n';
  } else {
    out << "action " << in.tag() << " = " << std::setprecision(17) << action << " (order " << order
        << (exact ? ", exact" : "") << ")\n";
    out << "density at centre = " << std::setprecision(17) << density << '\n';
  }
  return kExitPass;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  throw ValidationError("format: expected json or text");
}

}  // namespace

void apply_config_file(const std::filesystem::path& file, RunConfig& cfg, const std::vector<std::string>& explicit_flags) {
  const Json j = read_json_file(file);
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  const std::set<std::string> given(explicit_flags.begin(), explicit_flags.end());
  auto integer = [](const Json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ValidationError("config: " + key + " must be an integer");
    return v.get<long long>();
  };
  auto number = [](const Json& v, const std::string& key) {
    if (!v.is_number()) throw ValidationError("config: " + key + " must be a number");
    return v.get<double>();
  };
  auto string = [](const Json& v, const std::string& key) {
    if (!v.is_string()) throw ValidationError("config: " + key + " must be a string");
    return v.get<std::string>();
  };
  for (const auto& [key, v] : j.items()) {
    const bool keep = given.contains(key);
    if (key == "command") {
      if (string(v, key) != cfg.command) {
        throw ValidationError("config: command '" + v.get<std::string>() + "' does not match '" + cfg.command + "'");
      }
    } else if (key == "input") {
      if (!keep) cfg.input = string(v, key);
    } else if (key == "tol_abs") {
      if (!keep) cfg.tol_abs = number(v, key);
    } else if (key == "tol_norm") {
      if (!keep) cfg.tol_norm = number(v, key);
    } else if (key == "trials") {
      if (!keep) cfg.trials = static_cast<int>(integer(v, key));
    } else if (key == "degree") {
      if (!keep) cfg.degree = static_cast<int>(integer(v, key));
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ValidationError("config: seed must be a non-negative integer");
      if (!keep) cfg.seed = v.get<std::uint64_t>();
    } else if (key == "order") {
      if (!keep) cfg.order = static_cast<int>(integer(v, key));
    } else if (key == "format") {
      if (!keep) cfg.format = parse_format(string(v, key));
    } else if (key == "path") {
      if (!keep) cfg.path = string(v, key);
    } else if (key == "curl_free") {
      if (!keep) cfg.curl_free = static_cast<int>(integer(v, key));
    } else {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null-Lagrangian checks for linear generalized elasticity", "nulllag"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::string input;
  std::string config;

  struct Sub {
    CLI::App* app;
    bool certify_options;
  };
  std::vector<Sub> subs = {
      {app.add_subcommand("check", "Check the null-Lagrangian conditions on the moduli of a model"), false},
      {app.add_subcommand("split", "Split B of a micropolar model into hat, tilde and ring parts"), false},
      {app.add_subcommand("certify", "Certify a model or generator set as a null Lagrangian"), true},
      {app.add_subcommand("action", "Evaluate the action of a seeded random field on the unit cube"), true},
  };
  for (auto& s : subs) {
    auto* a = s.app;
    a->add_option("input", input, "Model or generator JSON file");
    a->add_option("--config", config, "JSON file with run settings")->check(CLI::ExistingFile);
    a->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    a->add_option("--tol-abs", cfg.tol_abs, "Absolute tolerance for conditions and boundary action");
    if (s.certify_options) {
      a->add_option("--tol-norm", cfg.tol_norm, "Tolerance on the normalized Euler residual");
      a->add_option("--trials", cfg.trials, "Random test fields")->capture_default_str();
      a->add_option("--degree", cfg.degree, "Polynomial degree of test fields")->capture_default_str();
      a->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
      a->add_option("--order", cfg.order, "Gauss-Legendre points per axis")->capture_default_str();
      a->add_option("--path", cfg.path, "Residual path")->check(CLI::IsMember({"auto", "closed", "fd"}))->capture_default_str();
      a->add_option("--curl-free", cfg.curl_free, "First component (1-based) of a gradient-field block");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    cfg.format = parse_format(format);
    cfg.input = input;
    if (!config.empty()) {
      std::vector<std::string> given;
      const std::vector<std::pair<std::string, std::string>> flags = {
          {"input", "input"},       {"--format", "format"}, {"--tol-abs", "tol_abs"}, {"--tol-norm", "tol_norm"},
          {"--trials", "trials"},   {"--degree", "degree"}, {"--seed", "seed"},       {"--order", "order"},
          {"--path", "path"},       {"--curl-free", "curl_free"}};
      for (const auto& [flag, key] : flags) {
        if (active->get_option_no_throw(flag) && active->count(flag) > 0) given.push_back(key);
      }
      apply_config_file(config, cfg, given);
    }
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "split") return cmd_split(cfg, out);
    if (cfg.command == "certify") return cmd_certify(cfg, out);
    return cmd_action(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace nulllag::cli
