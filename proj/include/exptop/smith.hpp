#pragma once

// Smith normal form over the integers, exact (arbitrary precision).

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace exptop {

using Integer = boost::multiprecision::cpp_int;

using DenseIntMatrix = std::vector<std::vector<Integer>>;

/// Column-oriented sparse matrix with int64 entries.
class SparseIntMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::int64_t value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nonzeros() const;

  /// Adds v to entry (r, c).
  void add(std::size_t r, std::size_t c, std::int64_t v);

  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }

  /// this * rhs, exact; throws std::overflow_error on int64 overflow.
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;

  bool is_zero() const;

  DenseIntMatrix to_dense() const;
  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

/// Nonzero diagonal of the Smith form d_1 | d_2 | ... | d_rank. Leading unit
/// invariants are stored as a count.
struct SmithResult {
  std::size_t unit_count = 0;
  std::vector<Integer> nonunit;  // each > 1, in divisibility order

  std::size_t rank() const { return unit_count + nonunit.size(); }
  std::vector<Integer> invariants() const;
};

/// Dispatches to the dense routine below 200 x 200 and the sparse one above.
SmithResult smith_normal_form(const SparseIntMatrix& m);

/// Sparse elimination: unit pivots chosen by smallest column count first,
/// then a greedy smallest-magnitude pivot rule for whatever remains.
SmithResult smith_normal_form_sparse(const SparseIntMatrix& m);

SmithResult smith_normal_form_dense(DenseIntMatrix m);

/// D = U * M * V with U, V unimodular and D in Smith form.
struct SmithDecomposition {
  DenseIntMatrix u;
  DenseIntMatrix d;
  DenseIntMatrix v;
};

SmithDecomposition smith_with_transforms(const DenseIntMatrix& m);

DenseIntMatrix multiply(const DenseIntMatrix& a, const DenseIntMatrix& b);

/// Replaces a list of nonzero diagonal entries by the equivalent divisibility
/// chain (same abelian group), dropping signs.
SmithResult normalize_diagonal(std::vector<Integer> diagonal);

}  // namespace exptop
