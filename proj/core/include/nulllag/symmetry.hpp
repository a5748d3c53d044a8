#pragma once

// Symmetry classes are plain data: a list of signed index permutations
//   T_{perm(idx)} = sign * T_idx      for all idx,
// where perm(idx)[p] = idx[perm[p]], plus zero relations
//   T_idx = 0                         whenever idx[a] == idx[b] for some listed (a, b).
//
// check_symmetry() enumerates every relation over every index tuple.
// project() is the Reynolds operator of the finite signed-permutation group
// generated by the relations, followed by zeroing every orbit that touches a
// zero relation. Both steps are orthogonal projections that commute, so the
// result is the orthogonal projection onto the class.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nulllag/tensor.hpp"

namespace nulllag {

template <int Rank>
struct SignedPermutation {
  std::array<int, Rank> perm{};
  int sign = 1;

  std::array<int, Rank> apply(const std::array<int, Rank>& idx) const {
    std::array<int, Rank> out{};
    for (int p = 0; p < Rank; ++p) out[p] = idx[perm[p]];
    return out;
  }

  /// Composition acting as (a * b).T == a.(b.T).
  friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
    SignedPermutation c;
    for (int p = 0; p < Rank; ++p) c.perm[p] = a.perm[b.perm[p]];
    c.sign = a.sign * b.sign;
    return c;
  }

  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

  static SignedPermutation identity() {
    SignedPermutation s;
    for (int p = 0; p < Rank; ++p) s.perm[p] = p;
    return s;
  }
};

template <int Rank>
struct ZeroRelation {
  /// Entry vanishes if idx[a] == idx[b] for any listed pair. An empty list
  /// means the entry always vanishes.
  std::vector<std::pair<int, int>> any_equal;

  bool matches(const std::array<int, Rank>& idx) const {
    if (any_equal.empty()) return true;
    return std::any_of(any_equal.begin(), any_equal.end(),
                       [&](const auto& ab) { return idx[ab.first] == idx[ab.second]; });
  }
};

template <int Rank>
class SymmetryClass {
 public:
  using Perm = SignedPermutation<Rank>;
  using Index = typename Tensor<Rank>::Index;

  SymmetryClass() = default;
  explicit SymmetryClass(std::string name) : name_(std::move(name)) {}

  static SymmetryClass permutation(std::string name, std::array<int, Rank> perm, int sign) {
    SymmetryClass c(std::move(name));
    c.perms_.push_back(Perm{perm, sign});
    return c;
  }

  static SymmetryClass zero_if(std::string name, std::vector<std::pair<int, int>> pairs) {
    SymmetryClass c(std::move(name));
    c.zeros_.push_back(ZeroRelation<Rank>{std::move(pairs)});
    return c;
  }

  static SymmetryClass zero_all(std::string name) { return zero_if(std::move(name), {}); }

  /// Union of relations.
  friend SymmetryClass operator|(SymmetryClass a, const SymmetryClass& b) {
    a.name_ = a.name_.empty() ? b.name_ : (b.name_.empty() ? a.name_ : a.name_ + "|" + b.name_);
    a.perms_.insert(a.perms_.end(), b.perms_.begin(), b.perms_.end());
    a.zeros_.insert(a.zeros_.end(), b.zeros_.begin(), b.zeros_.end());
    return a;
  }

  const std::string& name() const { return name_; }
  const std::vector<Perm>& permutations() const { return perms_; }
  const std::vector<ZeroRelation<Rank>>& zero_relations() const { return zeros_; }

  /// Max over all relations of |lhs - rhs| (or |entry| for zero relations).
  double max_violation(const Tensor<Rank>& t) const {
    double worst = 0.0;
    for (std::size_t n = 0; n < Tensor<Rank>::size; ++n) {
      const Index idx = Tensor<Rank>::unflatten(n);
      for (const Perm& g : perms_) {
        worst = std::max(worst, std::abs(t.at(g.apply(idx)) - g.sign * t[n]));
      }
      for (const auto& z : zeros_) {
        if (z.matches(idx)) worst = std::max(worst, std::abs(t[n]));
      }
    }
    return worst;
  }

  /// Closure of the generating permutations (always contains the identity).
  std::vector<Perm> group() const {
    std::set<Perm> seen{Perm::identity()};
    std::vector<Perm> frontier{Perm::identity()};
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& a : frontier) {
        for (const Perm& g : perms_) {
          const Perm c = g * a;
          if (seen.insert(c).second) next.push_back(c);
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  /// True when the relations admit only the zero tensor.
  bool forces_zero() const { return structural_zero_count() == static_cast<int>(Tensor<Rank>::size); }

  /// Number of entries that vanish for every member of the class.
  int structural_zero_count() const {
    const auto g = group();
    int count = 0;
    for (std::size_t n = 0; n < Tensor<Rank>::size; ++n) {
      if (forced_zero_entry(Tensor<Rank>::unflatten(n), g)) ++count;
    }
    return count;
  }

  Tensor<Rank> project(const Tensor<Rank>& t) const {
    const auto g = group();
    const double inv = 1.0 / static_cast<double>(g.size());
    Tensor<Rank> out;
    for (std::size_t n = 0; n < Tensor<Rank>::size; ++n) {
      const Index idx = Tensor<Rank>::unflatten(n);
      if (forced_zero_entry(idx, g)) continue;
      double s = 0.0;
      for (const Perm& p : g) s += p.sign * t.at(p.apply(idx));
      out[n] = s * inv;
    }
    return out;
  }

 private:
  bool forced_zero_entry(const Index& idx, const std::vector<Perm>& g) const {
    for (const Perm& p : g) {
      const Index image = p.apply(idx);
      // Identity permutation with negative sign on this orbit.
      if (image == idx && p.sign < 0) return true;
      for (const auto& z : zeros_) {
        if (z.matches(image)) return true;
      }
    }
    return false;
  }

  std::string name_;
  std::vector<Perm> perms_;
  std::vector<ZeroRelation<Rank>> zeros_;
};

template <int Rank>
double check_symmetry(const Tensor<Rank>& t, const SymmetryClass<Rank>& cls) {
  return cls.max_violation(t);
}

using SymmetryClass4 = SymmetryClass<4>;
using SymmetryClass3 = SymmetryClass<3>;
using SymmetryClass2 = SymmetryClass<2>;

/// Named presets.
namespace sym4 {
/// T_ijkl = T_klij
inline SymmetryClass4 major() { return SymmetryClass4::permutation("MAJOR", {2, 3, 0, 1}, 1); }
/// T_ijkl = T_jikl
inline SymmetryClass4 minor_left() { return SymmetryClass4::permutation("MINOR_LEFT", {1, 0, 2, 3}, 1); }
/// T_ijkl = T_ijlk
inline SymmetryClass4 minor_right() { return SymmetryClass4::permutation("MINOR_RIGHT", {0, 1, 3, 2}, 1); }
/// T_ilkj = -T_ijkl
inline SymmetryClass4 swap24_anti() { return SymmetryClass4::permutation("SWAP24_ANTI", {0, 3, 2, 1}, -1); }
/// T_kjil = -T_ijkl
inline SymmetryClass4 swap13_anti() { return SymmetryClass4::permutation("SWAP13_ANTI", {2, 1, 0, 3}, -1); }
/// T_ijkl = 0 if i = k or j = l
inline SymmetryClass4 zero_if_ik_or_jl() {
  return SymmetryClass4::zero_if("ZERO_IF_IK_OR_JL", {{0, 2}, {1, 3}});
}
/// T_ijkl = 0 if j = l
inline SymmetryClass4 zero_if_jl() { return SymmetryClass4::zero_if("ZERO_IF_JL", {{1, 3}}); }
inline SymmetryClass4 zero_all() { return SymmetryClass4::zero_all("ZERO"); }
}  // namespace sym4

namespace sym3 {
/// P_kij = P_kji
inline SymmetryClass3 minor_right() { return SymmetryClass3::permutation("MINOR_RIGHT", {0, 2, 1}, 1); }
/// P_kij = -P_jik
inline SymmetryClass3 swap13_anti() { return SymmetryClass3::permutation("SWAP13_ANTI", {2, 1, 0}, -1); }
/// P_kij = 0 if j = k
inline SymmetryClass3 zero_if_13() { return SymmetryClass3::zero_if("ZERO_IF_13", {{0, 2}}); }
}  // namespace sym3

namespace sym2 {
inline SymmetryClass2 symmetric() { return SymmetryClass2::permutation("SYMMETRIC", {1, 0}, 1); }
inline SymmetryClass2 antisymmetric() { return SymmetryClass2::permutation("ANTISYMMETRIC", {1, 0}, -1); }
inline SymmetryClass2 zero_all() { return SymmetryClass2::zero_all("ZERO"); }
}  // namespace sym2

}  // namespace nulllag
