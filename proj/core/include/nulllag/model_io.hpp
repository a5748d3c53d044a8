#pragma once

// Model and generator files.
//
//   {"model": "micropolar", "A": [81], "B": [81], "D": [81]}
//   {"model": "micropolar_isotropic", "lambda", "mu", "kappa", "beta1", "beta2", "beta3"}
//   {"model": "micropolar_hemitropic", ... plus "zeta", "nu", "rho"}
//   {"model": "quasicrystal", "C": [81], "D": [81], "E": [81]}
//   {"model": "em_elast", "C": [81], "P": [27], "Q": [27], "Ediel": [9], "Bperm": [9], "Acpl": [9]}
//
// em_elast also accepts "coupling": "magnetic" | "electric_verbatim".
// Tensors may be bare arrays or {"order", "data"} objects. Unknown keys are
// rejected.
//
// Generator files are a list of three polynomials, each a list of
// {"exponents": [e_x1, e_x2, e_x3, e_y1, ..., e_yN], "coeff": "p/q"}.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "nulllag/em_elast.hpp"
#include "nulllag/micropolar.hpp"
#include "nulllag/quasicrystal.hpp"
#include "nulllag/rund.hpp"
#include "nulllag/tensor_json.hpp"

namespace nulllag {

struct MicropolarModel {
  std::string tag = "micropolar";
  MicropolarModuli moduli;
  std::optional<IsotropicParams> isotropic;
  std::optional<HemitropicParams> hemitropic;
};

struct QuasicrystalModel {
  QcModuli moduli;
};

struct EmModel {
  EmModuli moduli;
  EmCoupling coupling = EmCoupling::magnetic;
};

using Model = std::variant<MicropolarModel, QuasicrystalModel, EmModel>;

std::string model_tag(const Model& m);

/// Reads and parses a JSON file; parse errors become ValidationError.
Json read_json_file(const std::filesystem::path& path);

Model parse_model(const Json& j);
Model load_model(const std::filesystem::path& path);
/// Parameterized micropolar models keep their tag and parameters.
Json model_to_json(const Model& m);

LagrangianEvaluator model_lagrangian(const Model& m);

GeneratorSet parse_generators(const Json& j);
GeneratorSet load_generators(const std::filesystem::path& path);
Json generators_to_json(const GeneratorSet& g);

/// True for a JSON list (generator file) rather than a model object.
bool is_generator_document(const Json& j);

}  // namespace nulllag
