#pragma once

// JSON encoding of tensors: {"order": R, "data": [3^R numbers]} row-major, or
// a bare array of 3^R numbers inside model files. Parsing is strict.

#include "json.hpp"

#include "nulllag/tensor.hpp"

namespace nulllag {

using Json = nlohmann::json;

template <int Rank>
Json to_json_array(const Tensor<Rank>& t) {
  Json a = Json::array();
  for (double v : t.flat()) a.push_back(v);
  return a;
}

template <int Rank>
Json to_json(const Tensor<Rank>& t) {
  return Json{{"order", Rank}, {"data", to_json_array(t)}};
}

/// Accepts a bare array; `what` names the field in diagnostics.
template <int Rank>
Tensor<Rank> tensor_from_json_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of " + std::to_string(Tensor<Rank>::size) + " numbers");
  if (j.size() != Tensor<Rank>::size) {
    throw ValidationError(what + ": expected length " + std::to_string(Tensor<Rank>::size) + ", got length " +
                          std::to_string(j.size()));
  }
  std::array<double, Tensor<Rank>::size> v{};
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (!j[n].is_number()) throw ValidationError(what + ": entry " + std::to_string(n) + " is not a number");
    v[n] = j[n].get<double>();
  }
  try {
    return Tensor<Rank>::from_flat(v);
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

/// Accepts {"order": R, "data": [...]} only; unknown keys are rejected.
template <int Rank>
Tensor<Rank> tensor_from_json(const Json& j, const std::string& what = "tensor") {
  if (!j.is_object()) throw ValidationError(what + ": expected an object with keys order, data");
  for (const auto& [key, value] : j.items()) {
    if (key != "order" && key != "data") throw ValidationError(what + ": unknown key '" + key + "'");
  }
  if (!j.contains("order") || !j.contains("data")) throw ValidationError(what + ": missing order or data");
  if (!j["order"].is_number_integer() || j["order"].get<int>() != Rank) {
    throw ValidationError(what + ": expected order " + std::to_string(Rank));
  }
  return tensor_from_json_array<Rank>(j["data"], what);
}

}  // namespace nulllag
