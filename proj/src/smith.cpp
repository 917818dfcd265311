#include "exptop/smith.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace exptop {

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, std::int64_t v) {
  if (r >= rows_ || c >= columns_.size()) throw std::out_of_range("SparseIntMatrix::add");
  if (v == 0) return;
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) {
    it->value += v;
    if (it->value == 0) col.erase(it);
  } else {
    col.insert(it, Entry{static_cast<std::uint32_t>(r), v});
  }
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("SparseIntMatrix::multiply: shape mismatch");
  SparseIntMatrix out(rows_, rhs.cols());
  std::vector<std::int64_t> acc(rows_, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    touched.clear();
    for (const Entry& e : rhs.column(j)) {
      for (const Entry& f : columns_[e.row]) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(f.value, e.value, &prod) ||
            __builtin_add_overflow(acc[f.row], prod, &acc[f.row])) {
          throw std::overflow_error("SparseIntMatrix::multiply: int64 overflow");
        }
        touched.push_back(f.row);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t r : touched) {
      if (acc[r] != 0) out.columns_[j].push_back(Entry{r, acc[r]});
      acc[r] = 0;
    }
  }
  return out;
}

bool SparseIntMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

DenseIntMatrix SparseIntMatrix::to_dense() const {
  DenseIntMatrix d(rows_, std::vector<Integer>(cols(), 0));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const Entry& e : columns_[c]) d[e.row][c] = e.value;
  }
  return d;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  SparseIntMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("from_dense: ragged rows");
    for (std::size_t c = 0; c < ncols; ++c) m.add(r, c, rows[r][c]);
  }
  return m;
}

std::vector<Integer> SmithResult::invariants() const {
  std::vector<Integer> out(unit_count, Integer(1));
  out.insert(out.end(), nonunit.begin(), nonunit.end());
  return out;
}

SmithResult normalize_diagonal(std::vector<Integer> diagonal) {
  SmithResult result;
  std::vector<Integer> rest;
  for (Integer& d : diagonal) {
    if (d < 0) d = -d;
    if (d == 0) throw std::invalid_argument("normalize_diagonal: zero entry");
    if (d == 1) {
      ++result.unit_count;
    } else {
      rest.push_back(std::move(d));
    }
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      Integer g = boost::multiprecision::gcd(rest[i], rest[j]);
      Integer l = rest[i] / g * rest[j];
      rest[i] = g;
      rest[j] = l;
    }
  }
  for (Integer& d : rest) {
    if (d == 1) {
      ++result.unit_count;
    } else {
      result.nonunit.push_back(std::move(d));
    }
  }
  return result;
}

namespace {

// Row-major working copy for sparse elimination.
class Eliminator {
 public:
  struct Cell {
    std::uint32_t col;
    Integer value;
  };
  using Row = std::vector<Cell>;

  explicit Eliminator(const SparseIntMatrix& m)
      : rows_(m.rows()), col_rows_(m.cols()), row_alive_(m.rows(), true), col_alive_(m.cols(), true) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& e : m.column(c)) {
        rows_[e.row].push_back(Cell{static_cast<std::uint32_t>(c), Integer(e.value)});
        col_rows_[c].push_back(e.row);
      }
    }
  }

  std::vector<Integer> run() {
    unit_phase();
    general_phase();
    return std::move(diagonal_);
  }

 private:
  using HeapItem = std::pair<std::size_t, std::uint32_t>;

  const Integer* find(std::uint32_t r, std::uint32_t c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Cell& x, std::uint32_t col) { return x.col < col; });
    return (it != row.end() && it->col == c) ? &it->value : nullptr;
  }

  void detach(std::uint32_t r, std::uint32_t c) {
    auto& list = col_rows_[c];
    auto it = std::find(list.begin(), list.end(), r);
    *it = list.back();
    list.pop_back();
    touched_cols_.push_back(c);
  }

  // rows_[target] -= q * rows_[source]
  void axpy(std::uint32_t target, std::uint32_t source, const Integer& q) {
    const Row& src = rows_[source];
    Row& dst = rows_[target];
    Row merged;
    merged.reserve(dst.size() + src.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
        merged.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].col < dst[i].col) {
        merged.push_back(Cell{src[j].col, -q * src[j].value});
        col_rows_[src[j].col].push_back(target);
        touched_cols_.push_back(src[j].col);
        ++j;
      } else {
        Integer v = dst[i].value - q * src[j].value;
        if (v == 0) {
          detach(target, dst[i].col);
        } else {
          merged.push_back(Cell{dst[i].col, std::move(v)});
        }
        ++i;
        ++j;
      }
    }
    dst = std::move(merged);
  }

  void remove_row(std::uint32_t r) {
    for (const Cell& x : rows_[r]) detach(r, x.col);
    rows_[r].clear();
    row_alive_[r] = false;
  }

  // Clears column c using pivot row r; returns false if some remainder is
  // nonzero (the pivot does not divide the column).
  bool clear_column(std::uint32_t r, std::uint32_t c, const Integer& a) {
    bool exact = true;
    std::vector<std::uint32_t> others = col_rows_[c];
    for (std::uint32_t t : others) {
      if (t == r) continue;
      const Integer* b = find(t, c);
      Integer q = *b / a;
      if (q * a != *b) exact = false;
      if (q != 0) axpy(t, r, q);
    }
    return exact;
  }

  void unit_phase() {
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    for (std::uint32_t c = 0; c < col_rows_.size(); ++c) {
      if (!col_rows_[c].empty()) heap.emplace(col_rows_[c].size(), c);
    }
    std::vector<bool> deferred(col_rows_.size(), false);
    while (!heap.empty()) {
      auto [count, c] = heap.top();
      heap.pop();
      if (!col_alive_[c] || deferred[c] || count != col_rows_[c].size()) continue;
      if (count == 0) continue;
      std::uint32_t pivot_row = 0;
      std::size_t best_len = std::numeric_limits<std::size_t>::max();
      const Integer* pivot = nullptr;
      for (std::uint32_t r : col_rows_[c]) {
        const Integer* v = find(r, c);
        if ((*v == 1 || *v == -1) && rows_[r].size() < best_len) {
          best_len = rows_[r].size();
          pivot_row = r;
          pivot = v;
        }
      }
      if (pivot == nullptr) {
        deferred[c] = true;
        continue;
      }
      Integer a = *pivot;
      touched_cols_.clear();
      clear_column(pivot_row, c, a);
      remove_row(pivot_row);
      col_alive_[c] = false;
      diagonal_.push_back(Integer(1));
      std::sort(touched_cols_.begin(), touched_cols_.end());
      touched_cols_.erase(std::unique(touched_cols_.begin(), touched_cols_.end()), touched_cols_.end());
      for (std::uint32_t t : touched_cols_) {
        if (col_alive_[t]) {
          deferred[t] = false;
          heap.emplace(col_rows_[t].size(), t);
        }
      }
    }
  }

  void general_phase() {
    for (;;) {
      // Smallest magnitude, then smallest fill estimate.
      std::uint32_t pr = 0;
      std::uint32_t pc = 0;
      const Integer* best = nullptr;
      Integer best_abs;
      std::size_t best_cost = 0;
      for (std::uint32_t r = 0; r < rows_.size(); ++r) {
        if (!row_alive_[r]) continue;
        for (const Cell& x : rows_[r]) {
          Integer mag = abs(x.value);
          std::size_t cost = (rows_[r].size() - 1) * (col_rows_[x.col].size() - 1);
          if (best == nullptr || mag < best_abs || (mag == best_abs && cost < best_cost)) {
            best = &x.value;
            best_abs = mag;
            best_cost = cost;
            pr = r;
            pc = x.col;
          }
        }
      }
      if (best == nullptr) return;
      Integer a = *best;
      if (!clear_column(pr, pc, a)) continue;
      // Column pc now holds only the pivot, so column operations touch row pr
      // alone: replace its other entries by their remainders.
      bool exact = true;
      Row& row = rows_[pr];
      Row kept;
      for (Cell& x : row) {
        if (x.col == pc) {
          kept.push_back(std::move(x));
          continue;
        }
        Integer rem = x.value % a;
        if (rem == 0) {
          detach(pr, x.col);
        } else {
          exact = false;
          kept.push_back(Cell{x.col, std::move(rem)});
        }
      }
      row = std::move(kept);
      if (!exact) continue;
      remove_row(pr);
      col_alive_[pc] = false;
      diagonal_.push_back(a);
    }
  }

  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<bool> row_alive_;
  std::vector<bool> col_alive_;
  std::vector<std::uint32_t> touched_cols_;
  std::vector<Integer> diagonal_;
};

void swap_rows(DenseIntMatrix& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void swap_cols(DenseIntMatrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(DenseIntMatrix& m, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] += q * m[j][k];
}

// col_i += q * col_j
void add_col(DenseIntMatrix& m, std::size_t i, std::size_t j, const Integer& q) {
  for (auto& row : m) row[i] += q * row[j];
}

DenseIntMatrix identity(std::size_t n) {
  DenseIntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// In-place Smith form; u and v (when non-null) accumulate the row and column
// operations so that u * original * v = result.
void dense_smith(DenseIntMatrix& a, DenseIntMatrix* u, DenseIntMatrix* v) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  auto row_swap = [&](std::size_t i, std::size_t j) {
    swap_rows(a, i, j);
    if (u) swap_rows(*u, i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(a, i, j);
    if (v) swap_cols(*v, i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const Integer& q) {
    add_row(a, i, j, q);
    if (u) add_row(*u, i, j, q);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Integer& q) {
    add_col(a, i, j, q);
    if (v) add_col(*v, i, j, q);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      bool found = false;
      std::size_t bi = t;
      std::size_t bj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          Integer mag = abs(a[i][j]);
          if (!found || mag < best) {
            found = true;
            best = mag;
            bi = i;
            bj = j;
          }
        }
      }
      if (!found) return;
      if (bi != t) row_swap(bi, t);
      if (bj != t) col_swap(bj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        row_add(i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        col_add(j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row with a non-multiple into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            row_add(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      }
      if (!divides) continue;
      if (a[t][t] < 0) {
        for (auto& x : a[t]) x = -x;
        if (u) {
          for (auto& x : (*u)[t]) x = -x;
        }
      }
      break;
    }
  }
}

}  // namespace

SmithResult smith_normal_form_sparse(const SparseIntMatrix& m) {
  return normalize_diagonal(Eliminator(m).run());
}

SmithResult smith_normal_form_dense(DenseIntMatrix m) {
  dense_smith(m, nullptr, nullptr);
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < m.size() && i < (m.empty() ? 0 : m[0].size()); ++i) {
    if (m[i][i] != 0) diag.push_back(m[i][i]);
  }
  return normalize_diagonal(std::move(diag));
}

SmithResult smith_normal_form(const SparseIntMatrix& m) {
  constexpr std::size_t kDenseLimit = 200;
  if (m.rows() < kDenseLimit && m.cols() < kDenseLimit) return smith_normal_form_dense(m.to_dense());
  return smith_normal_form_sparse(m);
}

SmithDecomposition smith_with_transforms(const DenseIntMatrix& m) {
  SmithDecomposition out;
  out.d = m;
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  out.u = identity(rows);
  out.v = identity(cols);
  dense_smith(out.d, &out.u, &out.v);
  return out;
}

DenseIntMatrix multiply(const DenseIntMatrix& a, const DenseIntMatrix& b) {
  std::size_t n = a.size();
  std::size_t inner = b.size();
  std::size_t p = inner == 0 ? 0 : b[0].size();
  DenseIntMatrix out(n, std::vector<Integer>(p, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("multiply: shape mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

}  // namespace exptop
