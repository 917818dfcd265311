#pragma once

// Finite groups given by multiplication tables, used as homomorphism targets.

#include <cstdint>
#include <vector>

#include "exptop/groups.hpp"

namespace exptop {

class FiniteGroup {
 public:
  /// table[a][b] = a*b on elements 0..n-1. Throws std::invalid_argument unless
  /// the table is a group law.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  /// Closure of the given permutations of 0..m-1 under composition.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators);
  static FiniteGroup symmetric(int n);
  static FiniteGroup cyclic(int n);
  /// Symmetries of the regular n-gon, order 2n.
  static FiniteGroup dihedral(int n);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  bool is_abelian() const;

  /// Value of w with generator i + 1 sent to assignment[i].
  int evaluate(const Word& w, const std::vector<int>& assignment) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// Number of homomorphisms P -> G, by evaluating every assignment of the
/// generators. Throws std::invalid_argument if |G|^generators exceeds limit.
std::uint64_t count_homs(const Presentation& p, const FiniteGroup& g, std::uint64_t limit = 100'000'000);

}  // namespace exptop
