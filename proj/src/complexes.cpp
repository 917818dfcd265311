#include "exptop/complexes.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exptop {

Simplex::Simplex(std::span<const int> vertices) {
  if (vertices.empty() || vertices.size() > kMaxVertices) {
    throw std::invalid_argument("Simplex: need between 1 and 6 vertices");
  }
  size_ = static_cast<std::uint8_t>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  std::sort(v_.begin(), v_.begin() + size_);
  if (std::adjacent_find(v_.begin(), v_.begin() + size_) != v_.begin() + size_) {
    throw std::invalid_argument("Simplex: repeated vertex");
  }
}

Simplex::Simplex(std::initializer_list<int> vertices)
    : Simplex(std::span<const int>(vertices.begin(), vertices.size())) {}

Simplex Simplex::facet(std::size_t i) const {
  Simplex f;
  f.size_ = static_cast<std::uint8_t>(size_ - 1);
  for (std::size_t j = 0, k = 0; j < size_; ++j) {
    if (j != i) f.v_[k++] = v_[j];
  }
  return f;
}

namespace {

// Sub-simplex of s selected by a bitmask over its vertex positions.
Simplex subsimplex(const Simplex& s, unsigned mask) {
  std::array<int, Simplex::kMaxVertices> buf{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (mask & (1u << i)) buf[n++] = s[i];
  }
  return Simplex(std::span<const int>(buf.data(), n));
}

void sort_unique(std::vector<Simplex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(std::vector<Simplex> facets) {
  SimplicialComplex k;
  for (const Simplex& f : facets) {
    if (static_cast<int>(k.by_dim_.size()) <= f.dimension()) k.by_dim_.resize(f.dimension() + 1);
    unsigned full = (1u << f.size()) - 1;
    for (unsigned mask = 1; mask <= full; ++mask) {
      Simplex s = subsimplex(f, mask);
      k.by_dim_[s.dimension()].push_back(s);
    }
  }
  for (auto& v : k.by_dim_) sort_unique(v);
  return k;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  SimplicialComplex k;
  for (const Simplex& s : simplices) {
    if (static_cast<int>(k.by_dim_.size()) <= s.dimension()) k.by_dim_.resize(s.dimension() + 1);
    k.by_dim_[s.dimension()].push_back(s);
  }
  for (auto& v : k.by_dim_) {
    std::size_t before = v.size();
    sort_unique(v);
    if (v.size() != before) throw std::invalid_argument("from_simplices: duplicate simplex");
  }
  for (int d = 1; d <= k.dimension(); ++d) {
    for (const Simplex& s : k.by_dim_[d]) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!k.contains(s.facet(i))) throw std::invalid_argument("from_simplices: missing face");
      }
    }
  }
  return k;
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return 0;
  return by_dim_[d].size();
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& v : by_dim_) n += v.size();
  return n;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  int d = s.dimension();
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return std::nullopt;
  const auto& v = by_dim_[d];
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(count(d));
  return chi;
}

SparseIntMatrix SimplicialComplex::boundary_matrix(int d) const {
  if (d < 1) throw std::invalid_argument("boundary_matrix: d must be >= 1");
  SparseIntMatrix m(count(d - 1), count(d));
  if (d > dimension()) return m;
  const auto& cols = by_dim_[d];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < cols[c].size(); ++i) {
      m.add(*index_of(cols[c].facet(i)), c, i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

ChainComplexZ ChainComplexZ::from_complex(const SimplicialComplex& k) {
  ChainComplexZ c;
  for (int d = 0; d <= k.dimension(); ++d) c.ranks.push_back(k.count(d));
  for (int d = 1; d <= k.dimension(); ++d) c.boundaries.push_back(k.boundary_matrix(d));
  return c;
}

ChainComplexZ ChainComplexZ::relative(const SimplicialComplex& k,
                                      const std::vector<std::vector<bool>>& in_subcomplex) {
  int top = k.dimension();
  std::vector<std::vector<long>> new_index(top + 1);
  ChainComplexZ c;
  for (int d = 0; d <= top; ++d) {
    new_index[d].assign(k.count(d), -1);
    long next = 0;
    for (std::size_t i = 0; i < k.count(d); ++i) {
      if (!in_subcomplex[d][i]) new_index[d][i] = next++;
    }
    c.ranks.push_back(static_cast<std::size_t>(next));
  }
  for (int d = 1; d <= top; ++d) {
    SparseIntMatrix m(c.ranks[d - 1], c.ranks[d]);
    const auto& cols = k.simplices(d);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (new_index[d][j] < 0) continue;
      for (std::size_t i = 0; i < cols[j].size(); ++i) {
        long r = new_index[d - 1][*k.index_of(cols[j].facet(i))];
        if (r >= 0) m.add(r, new_index[d][j], i % 2 == 0 ? 1 : -1);
      }
    }
    c.boundaries.push_back(std::move(m));
  }
  return c;
}

bool ChainComplexZ::boundary_squared_zero() const {
  for (std::size_t d = 1; d < boundaries.size(); ++d) {
    if (!boundaries[d - 1].multiply(boundaries[d]).is_zero()) return false;
  }
  return true;
}

std::string to_string(const AbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (g.rank > 0) {
    os << "Z";
    if (g.rank > 1) os << "^" << g.rank;
    first = false;
  }
  for (const Integer& t : g.torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

std::vector<std::size_t> HomologyResult::betti() const {
  std::vector<std::size_t> b;
  for (const auto& g : groups) b.push_back(g.rank);
  return b;
}

bool HomologyResult::torsion_free() const {
  return std::all_of(groups.begin(), groups.end(), [](const AbelianGroup& g) { return g.torsion.empty(); });
}

long HomologyResult::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < groups.size(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(groups[d].rank);
  }
  return chi;
}

HomologyResult homology(const ChainComplexZ& c) {
  std::size_t top = c.ranks.size();
  std::vector<SmithResult> snf;
  for (const auto& b : c.boundaries) snf.push_back(smith_normal_form(b));
  auto rank_of = [&](std::size_t d) -> std::size_t {
    // rank of the map out of C_d
    if (d == 0 || d > snf.size()) return 0;
    return snf[d - 1].rank();
  };
  HomologyResult h;
  for (std::size_t d = 0; d < top; ++d) {
    AbelianGroup g;
    g.rank = c.ranks[d] - rank_of(d) - rank_of(d + 1);
    if (d + 1 <= snf.size()) g.torsion = snf[d].nonunit;
    h.groups.push_back(std::move(g));
  }
  return h;
}

HomologyResult homology(const SimplicialComplex& k) { return homology(ChainComplexZ::from_complex(k)); }

std::vector<int> torus_coordinates(int vertex, int k, int n) {
  std::vector<int> x(k);
  for (int i = 0; i < k; ++i) {
    x[i] = vertex % n;
    vertex /= n;
  }
  return x;
}

namespace {

int torus_id(const std::vector<int>& x, int n) {
  int id = 0;
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) id = id * n + x[i];
  return id;
}

}  // namespace

SimplicialComplex build_torus_complex(int k, int n) {
  if (k < 1 || k > 3) throw std::invalid_argument("build_torus_complex: k must be 1, 2 or 3");
  if (n < 3) throw std::invalid_argument("build_torus_complex: need n >= 3 subdivisions");
  int vertices = 1;
  for (int i = 0; i < k; ++i) vertices *= n;
  std::vector<int> order(k);
  std::vector<Simplex> facets;
  for (int base = 0; base < vertices; ++base) {
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<int> x = torus_coordinates(base, k, n);
      std::vector<int> ids{base};
      for (int axis : order) {
        x[axis] = (x[axis] + 1) % n;
        ids.push_back(torus_id(x, n));
      }
      facets.emplace_back(ids);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return SimplicialComplex::from_facets(std::move(facets));
}

namespace {

std::vector<std::size_t> dimension_offsets(const SimplicialComplex& k) {
  std::vector<std::size_t> off(k.dimension() + 2, 0);
  for (int d = 0; d <= k.dimension(); ++d) off[d + 1] = off[d] + k.count(d);
  return off;
}

std::size_t global_index(const SimplicialComplex& k, const std::vector<std::size_t>& off, const Simplex& s) {
  auto idx = k.index_of(s);
  if (!idx) throw std::invalid_argument("simplex not in complex");
  return off[s.dimension()] + *idx;
}

// Image of a simplex under a vertex map, or nullopt if it is not a simplex.
std::optional<Simplex> image(const Simplex& s, const std::vector<int>& map) {
  std::array<int, Simplex::kMaxVertices> buf{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    int v = s[i];
    if (v < 0 || static_cast<std::size_t>(v) >= map.size()) return std::nullopt;
    buf[i] = map[v];
  }
  std::sort(buf.begin(), buf.begin() + s.size());
  if (std::adjacent_find(buf.begin(), buf.begin() + s.size()) != buf.begin() + s.size()) return std::nullopt;
  return Simplex(std::span<const int>(buf.data(), s.size()));
}

// Action on the vertices of the barycentric subdivision (simplices of k).
std::vector<std::vector<int>> induced_action(const SimplicialComplex& k,
                                             const std::vector<std::vector<int>>& elements) {
  auto off = dimension_offsets(k);
  std::vector<std::vector<int>> out;
  for (const auto& g : elements) {
    std::vector<int> map(off.back());
    for (int d = 0; d <= k.dimension(); ++d) {
      const auto& list = k.simplices(d);
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto img = image(list[i], g);
        if (!img || !k.contains(*img)) {
          throw std::invalid_argument("quotient_complex: action does not carry simplices to simplices");
        }
        map[off[d] + i] = static_cast<int>(global_index(k, off, *img));
      }
    }
    out.push_back(std::move(map));
  }
  return out;
}

}  // namespace

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
  // Vertex ids of the subdivision are global simplex indices (ordered by
  // dimension), so every chain lists its vertices in increasing order.
  auto off = dimension_offsets(k);
  int top = k.dimension();
  std::vector<std::vector<Simplex>> by_dim(top + 1);
  std::array<int, 64> face_id{};
  std::array<int, Simplex::kMaxVertices> chain{};
  for (int d = 0; d <= top; ++d) {
    for (const Simplex& s : k.simplices(d)) {
      unsigned full = (1u << s.size()) - 1;
      for (unsigned mask = 1; mask <= full; ++mask) {
        face_id[mask] = static_cast<int>(global_index(k, off, subsimplex(s, mask)));
      }
      // Chains of faces ending at s: walk down through proper submasks.
      // Recursion depth is below s.size() <= kMaxVertices.
      auto walk = [&](auto&& self, unsigned mask, std::size_t depth) -> void {
        chain.at(depth) = face_id[mask];
        std::array<int, Simplex::kMaxVertices> ids{};
        std::reverse_copy(chain.begin(), chain.begin() + depth + 1, ids.begin());
        by_dim[depth].emplace_back(std::span<const int>(ids.data(), depth + 1));
        for (unsigned sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) self(self, sub, depth + 1);
      };
      walk(walk, full, std::size_t{0});
    }
  }
  std::vector<Simplex> all;
  for (auto& v : by_dim) {
    all.insert(all.end(), v.begin(), v.end());
    v.clear();
    v.shrink_to_fit();
  }
  // Every face of a chain is a chain, so the list is already closed.
  return SimplicialComplex::from_simplices(std::move(all));
}

VertexAction VertexAction::trivial(std::size_t vertex_count) {
  std::vector<int> id(vertex_count);
  std::iota(id.begin(), id.end(), 0);
  return VertexAction{{id}};
}

VertexAction VertexAction::generated_by(std::vector<std::vector<int>> generators, std::size_t vertex_count) {
  for (const auto& g : generators) {
    if (g.size() != vertex_count) throw std::invalid_argument("VertexAction: wrong permutation length");
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("VertexAction: not a permutation");
    }
  }
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue{VertexAction::trivial(vertex_count).elements.front()};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : generators) {
      std::vector<int> h(vertex_count);
      for (std::size_t v = 0; v < vertex_count; ++v) h[v] = g[queue[head][v]];
      if (seen.insert(h).second) queue.push_back(std::move(h));
    }
  }
  return VertexAction{std::move(queue)};
}

VertexAction coordinate_permutation_action(int k, int n) {
  int vertices = 1;
  for (int i = 0; i < k; ++i) vertices *= n;
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> gens;
  do {
    std::vector<int> map(vertices);
    for (int v = 0; v < vertices; ++v) {
      std::vector<int> x = torus_coordinates(v, k, n);
      std::vector<int> y(k);
      for (int i = 0; i < k; ++i) y[i] = x[order[i]];
      map[v] = torus_id(y, n);
    }
    gens.push_back(std::move(map));
  } while (std::next_permutation(order.begin(), order.end()));
  return VertexAction::generated_by(std::move(gens), static_cast<std::size_t>(vertices));
}

namespace {

// Identifies vertices with equal labels; labels are 0..L-1 with every label used.
SimplicialComplex label_quotient(const SimplicialComplex& k, const std::vector<int>& label) {
  std::vector<Simplex> images;
  images.reserve(k.size());
  for (int d = 0; d <= k.dimension(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      auto img = image(s, label);
      if (!img) throw std::logic_error("quotient: vertex identification collapsed a simplex");
      images.push_back(*img);
    }
  }
  return SimplicialComplex::from_facets(std::move(images));
}

template <typename Key>
std::vector<int> compact_labels(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> label(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    label[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  }
  return label;
}

void check_vertex_ids(const SimplicialComplex& k) {
  for (std::size_t i = 0; i < k.count(0); ++i) {
    if (k.simplices(0)[i][0] != static_cast<int>(i)) {
      throw std::invalid_argument("quotient_complex: vertex ids must be 0..V-1");
    }
  }
}

}  // namespace

SimplicialComplex quotient_complex(const SimplicialComplex& k, const VertexAction& g) {
  check_vertex_ids(k);
  for (const auto& e : g.elements) {
    if (e.size() != k.count(0)) throw std::invalid_argument("quotient_complex: action size mismatch");
  }
  SimplicialComplex k1 = barycentric_subdivision(k);
  auto act1 = induced_action(k, g.elements);
  SimplicialComplex k2 = barycentric_subdivision(k1);
  auto act2 = induced_action(k1, act1);

  std::vector<int> orbit_min(k2.count(0));
  for (std::size_t v = 0; v < orbit_min.size(); ++v) {
    int best = static_cast<int>(v);
    for (const auto& e : act2) best = std::min(best, e[v]);
    orbit_min[v] = best;
  }
  return label_quotient(k2, compact_labels(orbit_min));
}

ExpComplex build_exp_model(int k, int n) {
  if (k != 2 && k != 3) throw std::invalid_argument("build_exp_complex: k must be 2 or 3");
  SimplicialComplex torus = build_torus_complex(k, n);
  SimplicialComplex k1 = barycentric_subdivision(torus);
  SimplicialComplex k2 = barycentric_subdivision(k1);
  auto off0 = dimension_offsets(torus);
  auto off1 = dimension_offsets(k1);
  auto to_local = [](const std::vector<std::size_t>& off, std::size_t global) {
    int d = static_cast<int>(std::upper_bound(off.begin(), off.end(), global) - off.begin()) - 1;
    return std::pair<int, std::size_t>{d, global - off[d]};
  };

  // Each vertex of k2 is the barycentre of a chain of torus simplices. Its
  // point in (R/nZ)^k, scaled by 144, is integral: chains have at most four
  // members and torus simplices at most four vertices.
  constexpr long kScale = 144;
  const long period = kScale * n;
  std::vector<std::vector<long>> keys(k2.count(0));
  for (std::size_t v = 0; v < keys.size(); ++v) {
    auto [d1, i1] = to_local(off1, v);
    const Simplex& chain = k1.simplices(d1)[i1];
    auto [dt, it] = to_local(off0, static_cast<std::size_t>(chain[chain.size() - 1]));
    const Simplex& top = torus.simplices(dt)[it];
    // Coordinates of a staircase simplex take at most two cyclically adjacent
    // values per axis; n >= 3 makes the wrap {n-1, 0} unambiguous.
    std::vector<bool> wraps(k, false);
    for (int axis = 0; axis < k; ++axis) {
      bool has_zero = false;
      bool has_last = false;
      for (int u : top) {
        int c = torus_coordinates(u, k, n)[axis];
        has_zero |= c == 0;
        has_last |= c == n - 1;
      }
      wraps[axis] = has_zero && has_last;
    }
    std::vector<long> point(k, 0);
    for (int member : chain) {
      auto [dm, im] = to_local(off0, static_cast<std::size_t>(member));
      const Simplex& face = torus.simplices(dm)[im];
      long weight = kScale / static_cast<long>(chain.size() * face.size());
      for (int u : face) {
        auto x = torus_coordinates(u, k, n);
        for (int axis = 0; axis < k; ++axis) {
          long c = x[axis] + (wraps[axis] && x[axis] == 0 ? n : 0);
          point[axis] += weight * c;
        }
      }
    }
    for (long& c : point) c %= period;
    std::sort(point.begin(), point.end());
    point.erase(std::unique(point.begin(), point.end()), point.end());
    keys[v] = std::move(point);
  }
  std::vector<int> label = compact_labels(keys);
  ExpComplex out;
  out.complex = label_quotient(k2, label);
  out.cardinality.assign(out.complex.count(0), 0);
  for (std::size_t v = 0; v < keys.size(); ++v) out.cardinality[label[v]] = static_cast<int>(keys[v].size());
  return out;
}

SimplicialComplex build_exp_complex(int k, int n) { return build_exp_model(k, n).complex; }

HomologyResult relative_quotient_homology(int n) {
  ExpComplex model = build_exp_model(3, n);
  const SimplicialComplex& x = model.complex;
  // The subsets with at most two points span a full subcomplex.
  std::vector<std::vector<bool>> in_sub(x.dimension() + 1);
  for (int d = 0; d <= x.dimension(); ++d) {
    for (const Simplex& s : x.simplices(d)) {
      in_sub[d].push_back(std::all_of(s.begin(), s.end(), [&](int v) { return model.cardinality[v] <= 2; }));
    }
  }
  HomologyResult rel = homology(ChainComplexZ::relative(x, in_sub));
  // Reduced H_0 of the quotient is H_0 of the pair.
  rel.groups[0].rank += 1;
  return rel;
}

void write_complex(std::ostream& os, const SimplicialComplex& k) {
  os << "# simplicial complex: dimension then sorted vertex ids\n";
  for (int d = 0; d <= k.dimension(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      os << d;
      for (int v : s) os << ' ' << v;
      os << '\n';
    }
  }
}

SimplicialComplex read_complex(std::istream& is) {
  std::vector<Simplex> simplices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int d = 0;
    if (!(ls >> d)) continue;
    std::vector<int> ids;
    int v = 0;
    while (ls >> v) ids.push_back(v);
    if (!ls.eof() || static_cast<int>(ids.size()) != d + 1) {
      throw std::invalid_argument("read_complex: malformed line " + std::to_string(line_no));
    }
    simplices.emplace_back(ids);
  }
  return SimplicialComplex::from_simplices(std::move(simplices));
}

}  // namespace exptop
