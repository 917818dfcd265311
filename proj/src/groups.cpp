#include "exptop/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace exptop {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(const Word& w, int e) {
  Word base = e < 0 ? inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word commutator(const Word& x, const Word& y) {
  return concat(concat(x, y), concat(inverse(x), inverse(y)));
}

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (l == 0) throw std::invalid_argument("word letter 0 is not a generator");
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

Word canonical_cyclic(const Word& w) {
  Word r = cyclic_reduce(w);
  if (r.empty()) return r;
  Word best = r;
  for (const Word& base : {r, inverse(r)}) {
    for (std::size_t s = 0; s < base.size(); ++s) {
      Word rot(base.begin() + s, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + s);
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

namespace {

struct Syllable {
  int gen;  // 1-based
  int exp;
};

std::vector<Syllable> syllables(const Word& w) {
  std::vector<Syllable> out;
  for (int l : w) {
    int g = std::abs(l);
    int e = l > 0 ? 1 : -1;
    if (!out.empty() && out.back().gen == g) {
      out.back().exp += e;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back({g, e});
    }
  }
  return out;
}

Word from_syllables(const std::vector<Syllable>& s) {
  Word w;
  for (const auto& [g, e] : s) {
    for (int i = 0; i < std::abs(e); ++i) w.push_back(e > 0 ? g : -g);
  }
  return w;
}

// Syllables of a cyclically reduced word, rotated so that no syllable wraps
// around the end.
std::vector<Syllable> cyclic_syllables(Word w) {
  if (w.empty()) return {};
  std::size_t turns = 0;
  while (std::abs(w.front()) == std::abs(w.back()) && turns < w.size()) {
    std::rotate(w.begin(), w.begin() + 1, w.end());
    ++turns;
  }
  return syllables(w);
}

std::vector<std::vector<Syllable>> rotations(const std::vector<Syllable>& s) {
  std::vector<std::vector<Syllable>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Syllable> r(s.begin() + i, s.end());
    r.insert(r.end(), s.begin(), s.begin() + i);
    out.push_back(std::move(r));
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& gens) : text_(text), gens_(gens) {}

  std::vector<Word> relators() {
    std::vector<Word> out;
    skip_space();
    if (at_end()) return out;
    out.push_back(relator());
    skip_space();
    while (!at_end()) {
      expect(',');
      out.push_back(relator());
      skip_space();
    }
    return out;
  }

 private:
  Word relator() {
    Word lhs = word();
    skip_space();
    if (peek() == '=') {
      ++pos_;
      Word rhs = word();
      return concat(lhs, inverse(rhs));
    }
    return lhs;
  }

  Word word() {
    Word w;
    for (;;) {
      skip_space();
      char c = peek();
      if (c == '\0' || c == ',' || c == ']' || c == ')' || c == '=') break;
      Word f = factor();
      w.insert(w.end(), f.begin(), f.end());
    }
    return w;
  }

  Word factor() {
    Word a = atom();
    skip_space();
    if (peek() != '^') return a;
    ++pos_;
    skip_space();
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = text_[pos_++] == '-';
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent expected");
    long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 1'000'000) fail("exponent too large");
    }
    return power(a, static_cast<int>(negative ? -e : e));
  }

  Word atom() {
    skip_space();
    char c = peek();
    if (c == '[') {
      ++pos_;
      Word x = word();
      expect(',');
      Word y = word();
      expect(']');
      return commutator(x, y);
    }
    if (c == '(') {
      ++pos_;
      Word x = word();
      expect(')');
      return x;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(gens_.begin(), gens_.end(), name);
      if (it == gens_.end()) fail("unknown generator '" + name + "'");
      return {static_cast<int>(it - gens_.begin()) + 1};
    }
    fail(std::string("unexpected character '") + c + "'");
    return {};
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_space() {
    while (std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("presentation parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(const std::string& n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  return std::all_of(n.begin(), n.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (!valid_name(g)) throw std::invalid_argument("invalid generator name '" + g + "'");
    if (!names.insert(g).second) throw std::invalid_argument("repeated generator name '" + g + "'");
  }
  int n = static_cast<int>(generators_.size());
  for (const Word& r : relators) {
    for (int l : r) {
      if (l == 0 || std::abs(l) > n) throw std::invalid_argument("relator letter out of range");
    }
    relators_.push_back(cyclic_reduce(r));
  }
}

Presentation Presentation::parse(std::string_view text) {
  text = trim(text);
  auto semi = text.find(';');
  std::string_view gens_part = trim(text.substr(0, semi));
  std::string_view rels_part = semi == std::string_view::npos ? std::string_view{} : trim(text.substr(semi + 1));
  if (gens_part.substr(0, 5) != "gens:") throw std::invalid_argument("presentation must start with 'gens:'");
  std::vector<std::string> gens;
  {
    std::string list(gens_part.substr(5));
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream is(list);
    std::string g;
    while (is >> g) gens.push_back(g);
  }
  std::vector<Word> rels;
  if (!rels_part.empty()) {
    if (rels_part.substr(0, 5) != "rels:") throw std::invalid_argument("expected 'rels:' after ';'");
    Parser parser(rels_part.substr(5), gens);
    rels = parser.relators();
  }
  return Presentation(std::move(gens), std::move(rels));
}

std::string Presentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, e] : syllables(w)) {
    if (!first) os << ' ';
    os << generators_[g - 1];
    if (e != 1) os << '^' << e;
    first = false;
  }
  return os.str();
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << "gens:";
  for (const auto& g : generators_) os << ' ' << g;
  os << "; rels:";
  for (std::size_t i = 0; i < relators_.size(); ++i) os << (i == 0 ? " " : ", ") << word_to_string(relators_[i]);
  return os.str();
}

std::string Presentation::pretty() const {
  bool short_names = std::all_of(generators_.begin(), generators_.end(), [](const std::string& g) { return g.size() == 1; });
  auto syl = [&](const Syllable& s) {
    std::string out = generators_[s.gen - 1];
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
    return out;
  };
  auto plain = [&](const std::vector<Syllable>& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0 && !short_names) out += ' ';
      out += syl(s[i]);
    }
    return out;
  };
  auto relator_text = [&](const Word& r) -> std::string {
    if (r.empty()) return "1";
    std::vector<std::vector<Syllable>> forms = rotations(cyclic_syllables(r));
    for (auto& f : rotations(cyclic_syllables(inverse(r)))) forms.push_back(std::move(f));
    for (const auto& f : forms) {
      if (f.size() == 4 && f[0].gen == f[2].gen && f[1].gen == f[3].gen && f[0].exp == -f[2].exp &&
          f[1].exp == -f[3].exp) {
        return "[" + syl(f[0]) + "," + syl(f[1]) + "]";
      }
    }
    for (const auto& f : forms) {
      if (f.size() == 2 && f[0].exp > 0) return syl(f[0]) + "=" + syl({f[1].gen, -f[1].exp});
    }
    return plain(syllables(r));
  };
  std::string out = "⟨";
  for (std::size_t i = 0; i < generators_.size(); ++i) out += (i ? "," : "") + generators_[i];
  out += "|";
  for (std::size_t i = 0; i < relators_.size(); ++i) out += (i ? "," : "") + relator_text(relators_[i]);
  return out + "⟩";
}

Presentation Presentation::renamed(std::vector<std::string> names) const {
  if (names.size() != generators_.size()) throw std::invalid_argument("renamed: wrong number of names");
  return Presentation(std::move(names), relators_);
}

bool equal_up_to_renaming(const Presentation& a, const Presentation& b) {
  std::size_t n = a.generator_count();
  if (n != b.generator_count() || a.relators().size() != b.relators().size()) return false;
  if (n > 8) throw std::invalid_argument("equal_up_to_renaming: more than 8 generators");
  auto canonical_set = [](const std::vector<Word>& rels) {
    std::vector<Word> out;
    for (const Word& r : rels) out.push_back(canonical_cyclic(r));
    std::sort(out.begin(), out.end());
    return out;
  };
  const std::vector<Word> target = canonical_set(a.relators());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<Word> mapped;
    for (const Word& r : b.relators()) {
      Word m;
      for (int l : r) m.push_back(l > 0 ? perm[l - 1] : -perm[-l - 1]);
      mapped.push_back(std::move(m));
    }
    if (canonical_set(mapped) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t gens) {
  std::vector<std::int64_t> v(gens, 0);
  for (int l : w) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return v;
}

DenseIntMatrix relation_matrix(const Presentation& p) {
  DenseIntMatrix m;
  for (const Word& r : p.relators()) {
    auto v = exponent_sums(r, p.generator_count());
    m.emplace_back(v.begin(), v.end());
  }
  return m;
}

// Whether v lies in the row lattice of m.
bool in_row_lattice(const DenseIntMatrix& m, const std::vector<std::int64_t>& v) {
  std::size_t cols = v.size();
  if (m.empty()) return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  SmithDecomposition s = smith_with_transforms(m);
  DenseIntMatrix row{std::vector<Integer>(v.begin(), v.end())};
  std::vector<Integer> w = multiply(row, s.v)[0];
  for (std::size_t j = 0; j < cols; ++j) {
    Integer d = j < s.d.size() ? s.d[j][j] : Integer(0);
    if (d == 0) {
      if (w[j] != 0) return false;
    } else if (w[j] % d != 0) {
      return false;
    }
  }
  return true;
}

bool obviously_abelian(const Presentation& p) {
  std::set<Word> rels;
  for (const Word& r : p.relators()) rels.insert(canonical_cyclic(r));
  int n = static_cast<int>(p.generator_count());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!rels.count(canonical_cyclic(commutator({i}, {j})))) return false;
    }
  }
  return true;
}

}  // namespace

void GroupHom::validate() const {
  if (images.size() != source.generator_count()) {
    throw std::invalid_argument("homomorphism needs one image per source generator");
  }
  int n = static_cast<int>(target.generator_count());
  for (const Word& w : images) {
    for (int l : w) {
      if (l == 0 || std::abs(l) > n) throw std::invalid_argument("homomorphism image letter out of range");
    }
  }
}

Word GroupHom::apply(const Word& w) const {
  Word out;
  for (int l : w) {
    const Word& img = images.at(std::abs(l) - 1);
    Word piece = l > 0 ? img : inverse(img);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

HomCheck GroupHom::check() const {
  validate();
  std::set<Word> target_rels;
  for (const Word& r : target.relators()) target_rels.insert(canonical_cyclic(r));
  DenseIntMatrix rel_matrix = relation_matrix(target);
  bool abelian = obviously_abelian(target);
  bool unchecked = false;
  for (const Word& r : source.relators()) {
    Word w = canonical_cyclic(apply(r));
    if (w.empty() || target_rels.count(w)) continue;
    if (target.relators().empty()) return HomCheck::Failed;
    if (!in_row_lattice(rel_matrix, exponent_sums(w, target.generator_count()))) return HomCheck::Failed;
    if (!abelian) unchecked = true;
  }
  return unchecked ? HomCheck::Unchecked : HomCheck::Verified;
}

Presentation pushout(const PushoutData& d) {
  GroupHom{d.c, d.a, d.c_to_a}.validate();
  GroupHom{d.c, d.b, d.c_to_b}.validate();
  std::vector<std::string> gens = d.a.generators();
  for (const auto& g : d.b.generators()) {
    if (std::find(gens.begin(), gens.end(), g) != gens.end()) {
      throw std::invalid_argument("pushout: generator name '" + g + "' occurs in both factors");
    }
    gens.push_back(g);
  }
  int shift = static_cast<int>(d.a.generator_count());
  auto shifted = [shift](const Word& w) {
    Word out;
    for (int l : w) out.push_back(l > 0 ? l + shift : l - shift);
    return out;
  };
  std::vector<Word> rels = d.a.relators();
  for (const Word& r : d.b.relators()) rels.push_back(shifted(r));
  for (std::size_t i = 0; i < d.c.generator_count(); ++i) {
    rels.push_back(concat(d.c_to_a[i], inverse(shifted(d.c_to_b[i]))));
  }
  return Presentation(std::move(gens), std::move(rels));
}

namespace {

struct TietzeState {
  std::vector<std::string> gens;
  std::vector<Word> rels;
};

std::optional<TietzeState> drop_redundant(const TietzeState& s) {
  TietzeState out{s.gens, {}};
  std::set<Word> seen;
  for (const Word& r : s.rels) {
    if (r.empty()) continue;
    if (seen.insert(canonical_cyclic(r)).second) out.rels.push_back(r);
  }
  if (out.rels.size() == s.rels.size()) return std::nullopt;
  return out;
}

std::optional<TietzeState> eliminate_generator(const TietzeState& s) {
  std::vector<std::size_t> order(s.rels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return s.rels[i].size() < s.rels[j].size(); });
  for (std::size_t idx : order) {
    const Word& r = s.rels[idx];
    std::vector<int> count(s.gens.size() + 1, 0);
    for (int l : r) ++count[std::abs(l)];
    int g = 0;
    for (int i = static_cast<int>(s.gens.size()); i >= 1; --i) {
      if (count[i] == 1) {
        g = i;
        break;
      }
    }
    if (g == 0) continue;
    // Rotate r so that the letter of g comes first: g^e W = 1.
    std::size_t pos = 0;
    while (std::abs(r[pos]) != g) ++pos;
    Word rot(r.begin() + pos, r.end());
    rot.insert(rot.end(), r.begin(), r.begin() + pos);
    Word rest(rot.begin() + 1, rot.end());
    Word value = rot[0] > 0 ? inverse(rest) : rest;

    TietzeState out;
    for (int i = 1; i <= static_cast<int>(s.gens.size()); ++i) {
      if (i != g) out.gens.push_back(s.gens[i - 1]);
    }
    auto renumber = [g](int l) {
      int a = std::abs(l);
      int b = a > g ? a - 1 : a;
      return l > 0 ? b : -b;
    };
    for (std::size_t j = 0; j < s.rels.size(); ++j) {
      if (j == idx) continue;
      Word w;
      for (int l : s.rels[j]) {
        if (std::abs(l) == g) {
          Word piece = l > 0 ? value : inverse(value);
          w.insert(w.end(), piece.begin(), piece.end());
        } else {
          w.push_back(l);
        }
      }
      for (int& l : w) l = renumber(l);
      out.rels.push_back(cyclic_reduce(w));
    }
    return out;
  }
  return std::nullopt;
}

std::optional<TietzeState> rewrite_powers(const TietzeState& s) {
  for (std::size_t i = 0; i < s.rels.size(); ++i) {
    std::vector<Syllable> rel = cyclic_syllables(s.rels[i]);
    if (rel.size() != 2 || rel[0].gen == rel[1].gen) continue;
    // Try y^b -> x^-a, then x^a -> y^-b.
    for (int dir = 0; dir < 2; ++dir) {
      Syllable from = dir == 0 ? rel[1] : rel[0];
      Syllable to = dir == 0 ? rel[0] : rel[1];
      for (std::size_t j = 0; j < s.rels.size(); ++j) {
        if (j == i) continue;
        bool touched = false;
        std::vector<Syllable> q = cyclic_syllables(s.rels[j]);
        for (Syllable& syl : q) {
          if (syl.gen == from.gen && syl.exp % from.exp == 0) {
            int k = syl.exp / from.exp;
            syl = {to.gen, -k * to.exp};
            touched = true;
          }
        }
        if (!touched) continue;
        Word w = cyclic_reduce(from_syllables(q));
        if (w.size() < s.rels[j].size()) {
          TietzeState out = s;
          out.rels[j] = std::move(w);
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TietzeResult tietze_simplify(const Presentation& p, std::size_t budget) {
  TietzeState state{p.generators(), p.relators()};
  TietzeResult result;
  for (;;) {
    std::optional<TietzeState> next = drop_redundant(state);
    if (!next) next = eliminate_generator(state);
    if (!next) next = rewrite_powers(state);
    if (!next) break;
    if (result.steps == budget) {
      result.final = false;
      break;
    }
    state = std::move(*next);
    ++result.steps;
  }
  result.presentation = Presentation(std::move(state.gens), std::move(state.rels));
  if (!(abelianization(result.presentation) == abelianization(p))) {
    throw std::logic_error("tietze_simplify: abelianization changed");
  }
  return result;
}

namespace {

int column_of(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, std::size_t limit) : columns_(2 * p.generator_count()), limit_(limit) {
    for (const Word& r : p.relators()) {
      if (r.empty()) continue;
      Word cols;
      for (int l : r) cols.push_back(column_of(l));
      relators_.push_back(std::move(cols));
    }
  }

  CosetResult run() {
    CosetResult out;
    new_coset();
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      for (const Word& r : relators_) {
        if (!scan_and_fill(static_cast<int>(c), r)) return inconclusive();
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < columns_; ++x) {
        if (table_[c][x] < 0 && !define(static_cast<int>(c), static_cast<int>(x))) return inconclusive();
      }
    }
    std::vector<int> index(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (live(c)) index[c] = next++;
    }
    out.table.generators = columns_ / 2;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      std::vector<int> row(columns_);
      for (std::size_t x = 0; x < columns_; ++x) row[x] = index[table_[c][x]];
      out.table.rows.push_back(std::move(row));
    }
    out.order = out.table.rows.size();
    out.cosets_defined = table_.size();
    return out;
  }

 private:
  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  void new_coset() {
    table_.emplace_back(columns_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
  }

  bool define(int c, int x) {
    if (table_.size() >= limit_) return false;
    new_coset();
    int d = static_cast<int>(table_.size()) - 1;
    table_[c][x] = d;
    table_[d][x ^ 1] = c;
    return true;
  }

  int rep(int c) {
    int root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      int next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int e = queue[i];
      for (std::size_t x = 0; x < columns_; ++x) {
        int f = table_[e][x];
        if (f < 0) continue;
        table_[f][x ^ 1] = -1;
        int e1 = rep(e);
        int f1 = rep(f);
        if (table_[e1][x] >= 0) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][x ^ 1] >= 0) {
          merge(e1, table_[f1][x ^ 1], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][x ^ 1] = e1;
        }
      }
    }
  }

  bool scan_and_fill(int c, const Word& w) {
    int f = c;
    int b = c;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][w[j] ^ 1] >= 0) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  CosetResult inconclusive() const {
    CosetResult out;
    out.cosets_defined = table_.size();
    return out;
  }

  std::size_t columns_;
  std::size_t limit_;
  std::vector<Word> relators_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace

CosetResult coset_enumeration(const Presentation& p, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("coset_enumeration: limit must be positive");
  return CosetEnumerator(p, limit).run();
}

bool verify_coset_table(const Presentation& p, const CosetTable& t) {
  std::size_t n = t.rows.size();
  std::size_t cols = 2 * p.generator_count();
  if (n == 0 || t.generators != p.generator_count()) return false;
  for (std::size_t c = 0; c < n; ++c) {
    if (t.rows[c].size() != cols) return false;
    for (std::size_t x = 0; x < cols; ++x) {
      int d = t.rows[c][x];
      if (d < 0 || static_cast<std::size_t>(d) >= n) return false;
      if (t.rows[d][x ^ 1] != static_cast<int>(c)) return false;
    }
  }
  for (const Word& r : p.relators()) {
    for (std::size_t c = 0; c < n; ++c) {
      int d = static_cast<int>(c);
      for (int l : r) d = t.rows[d][column_of(l)];
      if (d != static_cast<int>(c)) return false;
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int d : t.rows[c]) {
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        stack.push_back(d);
      }
    }
  }
  return reached == n;
}

AbelianGroup abelianization(const Presentation& p) {
  std::size_t n = p.generator_count();
  AbelianGroup g;
  if (p.relators().empty() || n == 0) {
    g.rank = n;
    return g;
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (const Word& r : p.relators()) rows.push_back(exponent_sums(r, n));
  SmithResult s = smith_normal_form(SparseIntMatrix::from_dense(rows));
  g.rank = n - s.rank();
  g.torsion = s.nonunit;
  return g;
}

}  // namespace exptop
