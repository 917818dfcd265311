#pragma once

// Finite simplicial models of exp_k(S^1) for k <= 3 and their integer
// homology.
//
// exp_k(S^1) is the quotient of the torus (S^1)^k sending a tuple to its set
// of entries. The torus is triangulated by the staircase (Freudenthal)
// subdivision of the n^k cube grid, which coordinate permutations preserve;
// identifications are made after two barycentric subdivisions so that the
// quotient is again a simplicial complex.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exptop/smith.hpp"

namespace exptop {

/// Sorted set of at most kMaxVertices vertex ids.
class Simplex {
 public:
  static constexpr std::size_t kMaxVertices = 6;

  Simplex() = default;
  /// Sorts the ids; throws std::invalid_argument on repeats or overflow.
  explicit Simplex(std::span<const int> vertices);
  Simplex(std::initializer_list<int> vertices);

  int dimension() const { return static_cast<int>(size_) - 1; }
  std::size_t size() const { return size_; }
  int operator[](std::size_t i) const { return v_[i]; }
  const int* begin() const { return v_.data(); }
  const int* end() const { return v_.data() + size_; }

  /// Face with vertex i removed.
  Simplex facet(std::size_t i) const;

  auto operator<=>(const Simplex& other) const {
    return std::lexicographical_compare_three_way(begin(), end(), other.begin(), other.end());
  }
  bool operator==(const Simplex& other) const {
    return size_ == other.size_ && std::equal(begin(), end(), other.begin());
  }

 private:
  std::array<int, kMaxVertices> v_{};
  std::uint8_t size_ = 0;
};

/// Abstract simplicial complex: simplices grouped by dimension, each list
/// sorted and duplicate free, closed under taking faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Adds every face of the given simplices.
  static SimplicialComplex from_facets(std::vector<Simplex> facets);

  /// Takes the list as complete; throws std::invalid_argument on duplicates or
  /// a missing face.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int d) const;
  std::size_t size() const;
  const std::vector<Simplex>& simplices(int d) const { return by_dim_.at(d); }

  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  long euler_characteristic() const;

  /// Boundary map C_d -> C_{d-1} with the alternating-sign convention; rows
  /// index (d-1)-simplices and columns d-simplices. d >= 1.
  SparseIntMatrix boundary_matrix(int d) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
};

/// Free chain complex of finitely generated abelian groups given by integer
/// boundary matrices: boundaries[d - 1] is the map C_d -> C_{d-1}.
struct ChainComplexZ {
  std::vector<std::size_t> ranks;
  std::vector<SparseIntMatrix> boundaries;

  static ChainComplexZ from_complex(const SimplicialComplex& k);

  /// C(K)/C(L) for the subcomplex L of simplices flagged in `in_subcomplex`
  /// (indexed per dimension like K.simplices(d)).
  static ChainComplexZ relative(const SimplicialComplex& k,
                                const std::vector<std::vector<bool>>& in_subcomplex);

  /// Exact check that every composite of consecutive boundaries vanishes.
  bool boundary_squared_zero() const;
};

struct AbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // each > 1, d_1 | d_2 | ...

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup&) const = default;
};

std::string to_string(const AbelianGroup& g);

struct HomologyResult {
  std::vector<AbelianGroup> groups;  // H_0, H_1, ...

  std::vector<std::size_t> betti() const;
  bool torsion_free() const;
  long euler_characteristic() const;
  bool operator==(const HomologyResult&) const = default;
};

HomologyResult homology(const ChainComplexZ& c);
HomologyResult homology(const SimplicialComplex& k);

/// Staircase triangulation of (Z/n)^k, k in {1, 2, 3}; vertex id sum x_i n^i.
/// Throws std::invalid_argument for n < 3.
SimplicialComplex build_torus_complex(int k, int n);

/// Vertex coordinates in (Z/n)^k of a torus vertex id.
std::vector<int> torus_coordinates(int vertex, int k, int n);

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);

/// A finite group acting on the vertex ids 0..V-1; each element is a
/// permutation given as its image list. The identity is added and the list is
/// closed under composition.
struct VertexAction {
  std::vector<std::vector<int>> elements;

  static VertexAction generated_by(std::vector<std::vector<int>> generators, std::size_t vertex_count);
  static VertexAction trivial(std::size_t vertex_count);
};

/// Coordinate permutations of (Z/n)^k acting on torus vertex ids.
VertexAction coordinate_permutation_action(int k, int n);

/// Orbit complex of a simplicial action after two barycentric subdivisions.
/// The input complex must use vertex ids 0..V-1. Throws std::invalid_argument
/// if some element does not carry simplices to simplices.
SimplicialComplex quotient_complex(const SimplicialComplex& k, const VertexAction& g);

/// exp_k(S^1) for k in {2, 3}: the torus complex twice subdivided, with two
/// vertices identified when their points of (S^1)^k have the same underlying
/// set. For k = 3 this is coarser than the S_3 orbit quotient, which would
/// keep (a, a, b) and (a, b, b) apart.
struct ExpComplex {
  SimplicialComplex complex;
  std::vector<int> cardinality;  // number of distinct points per vertex
};

ExpComplex build_exp_model(int k, int n);
SimplicialComplex build_exp_complex(int k, int n);

/// Homology of exp_3(S^1) / exp_2(S^1): H_0 = Z and H_d = H_d(exp_3, exp_2) above.
HomologyResult relative_quotient_homology(int n);

/// Plain text: one simplex per line, dimension then sorted vertex ids; lines
/// starting with '#' are comments.
void write_complex(std::ostream& os, const SimplicialComplex& k);
SimplicialComplex read_complex(std::istream& is);

}  // namespace exptop
