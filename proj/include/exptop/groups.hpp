#pragma once

// Finitely presented groups: words, presentations, pushouts, Tietze
// simplification, coset enumeration and abelianization.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exptop/complexes.hpp"

namespace exptop {

/// Word in the generators: +i is generator i (1-based), -i its inverse.
using Word = std::vector<int>;

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int e);
/// [x, y] = x y x^-1 y^-1.
Word commutator(const Word& x, const Word& y);
Word free_reduce(const Word& w);
/// Free reduction followed by cancellation of inverse end letters.
Word cyclic_reduce(const Word& w);
/// Least rotation of w or of w^-1; equal for conjugate cyclic words.
Word canonical_cyclic(const Word& w);

class Presentation {
 public:
  Presentation() = default;
  /// Reduces every relator; throws std::invalid_argument on an index out of
  /// range or a repeated/empty generator name.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  /// Plain format: `gens: s t; rels: s^3 t^-2, s t^-1`. Products are
  /// juxtaposition, `x^n` powers, `[u,v]` commutators of words, `u = v` the
  /// relator u v^-1, and `1` the empty word.
  static Presentation parse(std::string_view text);

  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  std::string word_to_string(const Word& w) const;
  /// Inverse of to_string on the plain format.
  std::string to_string() const;
  /// Compact form such as ⟨s,t|s^3=t^2⟩ or ⟨b,c|[c^2,b]⟩.
  std::string pretty() const;

  Presentation renamed(std::vector<std::string> names) const;

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

/// Same generator count and the same multiset of cyclic relators after some
/// bijection of generators (inverting generators is not allowed). Presentations
/// with more than 8 generators throw std::invalid_argument.
bool equal_up_to_renaming(const Presentation& a, const Presentation& b);

enum class HomCheck { Verified, Failed, Unchecked };

/// Homomorphism given by one image word per source generator.
struct GroupHom {
  Presentation source;
  Presentation target;
  std::vector<Word> images;

  /// Throws std::invalid_argument if the image list is malformed.
  void validate() const;
  Word apply(const Word& w) const;
  /// Decides whether every source relator maps to the identity where a
  /// sufficient test applies: a free target, an image conjugate to a target
  /// relator, or a test in the abelianization.
  HomCheck check() const;
};

struct PushoutData {
  Presentation a;
  Presentation b;
  Presentation c;
  std::vector<Word> c_to_a;
  std::vector<Word> c_to_b;
};

/// Generators of a then b; relators of a, of b, then i(x) j(x)^-1 for each
/// generator x of c. Throws std::invalid_argument on malformed maps or clashing
/// generator names.
Presentation pushout(const PushoutData& d);

struct TietzeResult {
  Presentation presentation;
  bool final = true;  // false when the step budget ran out
  std::size_t steps = 0;
};

/// Deterministic simplification. Each round applies the first rule that
/// changes something:
///   1. drop empty relators and relators duplicating an earlier one up to
///      rotation and inversion;
///   2. eliminate a generator occurring exactly once in a shortest such
///      relator (the largest such generator);
///   3. with a two-syllable relator x^a y^b, rewrite powers y^(kb) as
///      x^(-ka) (or x^(ka) as y^(-kb)) in another relator when this shortens it.
/// Throws std::logic_error if the abelianization changed (internal check).
TietzeResult tietze_simplify(const Presentation& p, std::size_t budget = 1000);

/// Coset table of the trivial subgroup: row c, column 2g for generator g + 1
/// and 2g + 1 for its inverse.
struct CosetTable {
  std::size_t generators = 0;
  std::vector<std::vector<int>> rows;
};

struct CosetResult {
  std::optional<std::size_t> order;  // empty when inconclusive
  CosetTable table;                  // complete and compacted when order is set
  std::size_t cosets_defined = 0;
};

/// HLT enumeration with coincidence processing. Returns an empty
/// order once more than `limit` cosets would be defined; never claims that a
/// group is infinite. Throws std::invalid_argument when limit == 0.
CosetResult coset_enumeration(const Presentation& p, std::size_t limit);

/// The table is complete, inverse columns agree, every relator traced from
/// every coset returns to it, and all cosets are reachable from coset 0.
bool verify_coset_table(const Presentation& p, const CosetTable& t);

/// Smith form of the exponent-sum matrix.
AbelianGroup abelianization(const Presentation& p);

}  // namespace exptop
