#include "exptop/finite_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

namespace exptop {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("FiniteGroup: table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: entry out of range");
    }
  }
  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.table_[e][a] == a && g.table_[a][e] == a;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw std::invalid_argument("FiniteGroup: no identity");
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.table_[a][b] == g.identity_ && g.table_[b][a] == g.identity_) g.inverse_[a] = b;
    }
    if (g.inverse_[a] < 0) throw std::invalid_argument("FiniteGroup: element without inverse");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]]) {
          throw std::invalid_argument("FiniteGroup: multiplication is not associative");
        }
      }
    }
  }
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators) {
  std::size_t m = generators.empty() ? 0 : generators.front().size();
  for (const auto& p : generators) {
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(m);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw std::invalid_argument("FiniteGroup: generator is not a permutation");
  }
  // Product a*b acts as "first b, then a".
  auto compose = [m](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = a[b[i]];
    return out;
  };
  std::vector<int> id(m);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elements{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      auto h = compose(g, elements[head]);
      if (index.emplace(h, static_cast<int>(elements.size())).second) elements.push_back(std::move(h));
    }
  }
  std::size_t n = elements.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
  }
  return from_table(std::move(table));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1) throw std::invalid_argument("symmetric: n must be positive");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> swap(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens = {swap, cycle};
  } else {
    gens = {{0}};
  }
  return from_permutations(gens);
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: n must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return from_table(std::move(table));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 3) throw std::invalid_argument("dihedral: n must be at least 3");
  std::vector<int> rotation(n);
  std::vector<int> reflection(n);
  for (int i = 0; i < n; ++i) {
    rotation[i] = (i + 1) % n;
    reflection[i] = (n - i) % n;
  }
  return from_permutations({rotation, reflection});
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = 0; b < a; ++b) {
      if (table_[a][b] != table_[b][a]) return false;
    }
  }
  return true;
}

int FiniteGroup::evaluate(const Word& w, const std::vector<int>& assignment) const {
  int x = identity_;
  for (int l : w) {
    int g = assignment.at(std::abs(l) - 1);
    x = table_[x][l > 0 ? g : inverse_[g]];
  }
  return x;
}

std::uint64_t count_homs(const Presentation& p, const FiniteGroup& g, std::uint64_t limit) {
  std::size_t k = p.generator_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<std::uint64_t>(g.order());
    if (total > limit) throw std::invalid_argument("count_homs: search space exceeds the limit");
  }
  std::vector<int> assignment(k, 0);
  std::uint64_t count = 0;
  for (std::uint64_t step = 0; step < total; ++step) {
    bool ok = std::all_of(p.relators().begin(), p.relators().end(),
                          [&](const Word& r) { return g.evaluate(r, assignment) == g.identity(); });
    if (ok) ++count;
    for (std::size_t i = 0; i < k; ++i) {
      if (++assignment[i] < g.order()) break;
      assignment[i] = 0;
    }
  }
  return count;
}

}  // namespace exptop
