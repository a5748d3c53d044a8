#include "nulllag/linear_constraints.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace nulllag {

std::vector<double> LinearSubspace::project(std::span<const double> v) const {
  if (v.size() != ambient_dimension()) {
    throw ValidationError("projection input has wrong length");
  }
  const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
  const Eigen::VectorXd coeff = basis_.transpose() * x;
  const Eigen::VectorXd p = basis_ * coeff;
  return {p.data(), p.data() + p.size()};
}

void LinearConstraintSet::add(Row row) {
  for (const auto& [col, coef] : row) {
    if (col >= unknowns_) throw ValidationError("constraint column out of range");
    (void)coef;
  }
  rows_.push_back(std::move(row));
}

void LinearConstraintSet::append(const LinearConstraintSet& other) {
  if (other.unknowns_ != unknowns_) throw ValidationError("constraint sets have different sizes");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

double LinearConstraintSet::max_violation(std::span<const double> v) const {
  if (v.size() != unknowns_) throw ValidationError("constraint input has wrong length");
  double worst = 0.0;
  for (const auto& row : rows_) {
    double s = 0.0;
    for (const auto& [col, coef] : row) s += coef * v[col];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

LinearSubspace LinearConstraintSet::solution_space(double rel_tol) const {
  const auto n = static_cast<Eigen::Index>(unknowns_);
  if (rows_.empty()) return LinearSubspace(Eigen::MatrixXd::Identity(n, n));

  // Pad to at least n rows so the full V is available from the thin SVD.
  const auto m = std::max(static_cast<Eigen::Index>(rows_.size()), n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [col, coef] : rows_[r]) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) += coef;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return LinearSubspace(svd.matrixV().rightCols(n - rank));
}

}  // namespace nulllag
