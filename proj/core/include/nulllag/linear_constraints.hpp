#pragma once

// General homogeneous linear relations over the flat entries of a tensor.
// Used where a condition system is not a signed-permutation class (the
// alternating-tensor relations of the chiral coupling, for instance).

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nulllag/symmetry.hpp"

namespace nulllag {

/// Orthogonal complement of a constraint matrix, held as an orthonormal basis.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  explicit LinearSubspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}

  std::size_t ambient_dimension() const { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  std::vector<double> project(std::span<const double> v) const;

 private:
  Eigen::MatrixXd basis_;
};

class LinearConstraintSet {
 public:
  using Row = std::vector<std::pair<std::size_t, double>>;

  explicit LinearConstraintSet(std::size_t unknowns, std::string name = {})
      : unknowns_(unknowns), name_(std::move(name)) {}

  void add(Row row);
  void append(const LinearConstraintSet& other);

  template <int Rank>
  static LinearConstraintSet from_symmetry(const SymmetryClass<Rank>& cls) {
    using T = Tensor<Rank>;
    LinearConstraintSet set(T::size, cls.name());
    for (std::size_t n = 0; n < T::size; ++n) {
      const auto idx = T::unflatten(n);
      for (const auto& g : cls.permutations()) {
        set.add({{T::flatten(g.apply(idx)), 1.0}, {n, -static_cast<double>(g.sign)}});
      }
      for (const auto& z : cls.zero_relations()) {
        if (z.matches(idx)) set.add({{n, 1.0}});
      }
    }
    return set;
  }

  std::size_t unknowns() const { return unknowns_; }
  std::size_t size() const { return rows_.size(); }
  const std::string& name() const { return name_; }

  /// Max over rows of |row . v|.
  double max_violation(std::span<const double> v) const;

  /// Solution space via SVD; singular values below rel_tol * s_max count as zero.
  LinearSubspace solution_space(double rel_tol = 1e-10) const;

 private:
  std::size_t unknowns_;
  std::string name_;
  std::vector<Row> rows_;
};

}  // namespace nulllag
