#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace nulllag {

/// Default absolute tolerance for entry-level linear relations.
inline constexpr double kConditionTolerance = 1e-12;

struct ConditionRecord {
  std::string name;
  double max_violation = 0.0;
  /// max_violation / scale, where scale is the infinity norm of the tensor the
  /// relation is about (0 when that tensor is zero).
  double relative_violation = 0.0;
  double tolerance = kConditionTolerance;
  bool passed = true;
};

struct ConditionReport {
  std::vector<ConditionRecord> records;

  void add(std::string name, double violation, double scale, double tolerance = kConditionTolerance) {
    ConditionRecord r;
    r.name = std::move(name);
    r.max_violation = violation;
    r.relative_violation = scale > 0.0 ? violation / scale : 0.0;
    r.tolerance = tolerance;
    r.passed = violation <= tolerance;
    records.push_back(std::move(r));
  }

  void append(const ConditionReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }

  bool passed() const {
    return std::all_of(records.begin(), records.end(), [](const ConditionRecord& r) { return r.passed; });
  }

  const ConditionRecord* find(const std::string& name) const {
    for (const auto& r : records)
      if (r.name == name) return &r;
    return nullptr;
  }
};

}  // namespace nulllag
