#include <doctest.h>

#include <random>

#include "exptop/finite_group.hpp"
#include "exptop/groups.hpp"

using namespace exptop;

namespace {

Presentation torus() { return Presentation::parse("gens: a b; rels: [a,b]"); }

Word random_word(std::mt19937_64& rng, int gens, int len) {
  std::uniform_int_distribution<int> g(1, gens);
  std::bernoulli_distribution inv(0.5);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(inv(rng) ? -g(rng) : g(rng));
  return w;
}

}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("word operations") {
    CHECK(inverse(Word{1, -2, 3}) == Word{-3, 2, -1});
    CHECK(power(Word{1, 2}, -2) == Word{-2, -1, -2, -1});
    CHECK(power(Word{1}, 0).empty());
    CHECK(commutator(Word{1}, Word{2}) == Word{1, 2, -1, -2});
    CHECK(free_reduce(Word{1, 2, -2, -1, 3}) == Word{3});
    CHECK(cyclic_reduce(Word{-1, 2, 2, 1}) == Word{2, 2});
    CHECK(canonical_cyclic(Word{2, 1}) == canonical_cyclic(Word{1, 2}));
    CHECK(canonical_cyclic(Word{-1, -2}) == canonical_cyclic(Word{1, 2}));
    CHECK(canonical_cyclic(Word{1, 1, 2}) != canonical_cyclic(Word{1, 2, 2}));
  }

  TEST_CASE("free reduction is idempotent and respects inverses") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
      Word w = random_word(rng, 3, 12);
      Word r = free_reduce(w);
      CHECK(free_reduce(r) == r);
      CHECK(free_reduce(concat(w, inverse(w))).empty());
      for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] != -r[k - 1]);
    }
  }

  TEST_CASE("parsing and printing") {
    Presentation p = Presentation::parse("gens: s t; rels: s^3 = t^2");
    REQUIRE(p.generator_count() == 2);
    CHECK(p.relators().at(0) == Word{1, 1, 1, -2, -2});
    CHECK(p.pretty() == "⟨s,t|s^3=t^2⟩");
    CHECK(Presentation::parse(p.to_string()) == p);
    Presentation q = Presentation::parse("gens: b c; rels: [c^2,b]");
    CHECK(q.pretty() == "⟨b,c|[c^2,b]⟩");
    CHECK(Presentation::parse(q.to_string()) == q);
    Presentation one = Presentation::parse("gens: a; rels: a a^-1");
    CHECK(one.relators().at(0).empty());
    CHECK(Presentation::parse("gens: x y; rels: (x y)^2, x = 1").relators().size() == 2);
    CHECK_THROWS_AS(Presentation::parse("gens: a; rels: b"), std::invalid_argument);
    CHECK_THROWS_AS(Presentation::parse("gens: a a; rels:"), std::invalid_argument);
    CHECK_THROWS_AS(Presentation({"a"}, {Word{2}}), std::invalid_argument);
  }

  TEST_CASE("round trip of random presentations") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
      std::vector<Word> rels;
      for (int k = 0; k < 3; ++k) rels.push_back(random_word(rng, 3, 8));
      Presentation p({"x", "y", "z"}, rels);
      CHECK(Presentation::parse(p.to_string()) == p);
    }
  }

  TEST_CASE("equality up to renaming") {
    Presentation a = Presentation::parse("gens: b c; rels: [c^2,b]");
    Presentation b = Presentation::parse("gens: u v; rels: [u^2,v]");
    Presentation c = Presentation::parse("gens: u v; rels: [u^3,v]");
    CHECK(equal_up_to_renaming(a, b));
    CHECK_FALSE(equal_up_to_renaming(a, c));
    CHECK(equal_up_to_renaming(a, a.renamed({"p", "q"})));
  }

  TEST_CASE("coset enumeration of finite groups") {
    struct Case {
      const char* text;
      std::size_t order;
    };
    for (Case c : {Case{"gens: a; rels: a^5", 5}, Case{"gens: a b; rels: a^2, b^3, (a b)^5", 60},
                   Case{"gens: r s; rels: r^4, s^2, s r s r", 8}, Case{"gens: i j; rels: i^4, i^2 j^-2, j i j^-1 i", 8},
                   Case{"gens: a b; rels: a^2, b^2, (a b)^3", 6}, Case{"gens: s t; rels: s^3 t^-2, s t^-1", 1}}) {
      Presentation p = Presentation::parse(c.text);
      CosetResult r = coset_enumeration(p, 100000);
      REQUIRE(r.order.has_value());
      CHECK(*r.order == c.order);
      CHECK(r.table.rows.size() == c.order);
      CHECK(verify_coset_table(p, r.table));
    }
    CHECK_THROWS_AS(coset_enumeration(torus(), 0), std::invalid_argument);
  }

  TEST_CASE("coset enumeration gives up on infinite groups") {
    CosetResult r = coset_enumeration(torus(), 2000);
    CHECK_FALSE(r.order.has_value());
    CosetResult t = coset_enumeration(Presentation::parse("gens: s t; rels: s^3 = t^2"), 2000);
    CHECK_FALSE(t.order.has_value());
  }

  TEST_CASE("a corrupted coset table fails verification") {
    Presentation p = Presentation::parse("gens: a b; rels: a^2, b^2, (a b)^3");
    CosetResult r = coset_enumeration(p, 1000);
    REQUIRE(r.order.has_value());
    CosetTable bad = r.table;
    std::swap(bad.rows[0][0], bad.rows[1][0]);
    CHECK_FALSE(verify_coset_table(p, bad));
  }

  TEST_CASE("abelianization") {
    CHECK(abelianization(torus()) == AbelianGroup{2, {}});
    CHECK(abelianization(Presentation::parse("gens: s t; rels: s^3 = t^2")) == AbelianGroup{1, {}});
    CHECK(abelianization(Presentation::parse("gens: a b; rels: a^2, b^3")) == AbelianGroup{0, {Integer(6)}});
    CHECK(abelianization(Presentation::parse("gens: a b; rels: a^2 b^4")) == AbelianGroup{1, {Integer(2)}});
  }

  TEST_CASE("finite groups") {
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK(FiniteGroup::cyclic(7).is_abelian());
    CHECK(FiniteGroup::dihedral(4).order() == 8);
    CHECK(FiniteGroup::symmetric(4).order() == 24);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), std::invalid_argument);
    for (int a = 0; a < s3.order(); ++a) CHECK(s3.multiply(a, s3.inverse(a)) == s3.identity());
  }

  TEST_CASE("homomorphism counts") {
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    CHECK(count_homs(Presentation({"a"}, {}), s3) == 6);
    CHECK(count_homs(torus(), s3) == 18);
    // s^3 = t^2 in S_3: brute force over pairs of elements.
    std::uint64_t oracle = 0;
    Word rel{1, 1, 1, -2, -2};
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y)
        if (s3.evaluate(rel, {x, y}) == s3.identity()) ++oracle;
    CHECK(count_homs(Presentation::parse("gens: s t; rels: s^3 = t^2"), s3) == oracle);
    CHECK(oracle == 12);
    CHECK_THROWS_AS(count_homs(Presentation({"a", "b", "c"}, {}), FiniteGroup::symmetric(4), 1000),
                    std::invalid_argument);
  }

  TEST_CASE("pushout construction") {
    PushoutData d{Presentation({"s"}, {}), Presentation({"t"}, {}), torus(), {{1, 1, 1}, {1}}, {{1, 1}, {1}}};
    Presentation p = pushout(d);
    CHECK(p.generators() == std::vector<std::string>{"s", "t"});
    CHECK(p.relators().size() == 2);
    CHECK(abelianization(p).is_trivial());
    PushoutData clash{Presentation({"s"}, {}), Presentation({"s"}, {}), torus(), {{1}, {1}}, {{1}, {1}}};
    CHECK_THROWS_AS(pushout(clash), std::invalid_argument);
    PushoutData short_map{Presentation({"s"}, {}), Presentation({"t"}, {}), torus(), {{1}}, {{1}, {1}}};
    CHECK_THROWS_AS(pushout(short_map), std::invalid_argument);
  }

  TEST_CASE("homomorphism checks") {
    Presentation z({"c"}, {});
    CHECK(GroupHom{torus(), z, {{1}, {1, 1}}}.check() == HomCheck::Verified);
    CHECK(GroupHom{Presentation::parse("gens: a; rels: a^2"), z, {{1}}}.check() == HomCheck::Failed);
    Presentation z2 = Presentation::parse("gens: c; rels: c^2");
    CHECK(GroupHom{Presentation::parse("gens: a; rels: a^4"), z2, {{1}}}.check() == HomCheck::Verified);
    CHECK(GroupHom{Presentation::parse("gens: a; rels: a^3"), z2, {{1}}}.check() == HomCheck::Failed);
    CHECK(GroupHom{torus(), torus(), {{1}, {2}}}.check() == HomCheck::Verified);
    CHECK_THROWS_AS(GroupHom({torus(), z, {{1}}}).validate(), std::invalid_argument);
    CHECK(GroupHom{torus(), z, {{1}, {-1}}}.apply(Word{1, 2, 2}) == Word{-1});
  }

  TEST_CASE("Tietze simplification") {
    TietzeResult a = tietze_simplify(Presentation::parse("gens: s t; rels: s^3 = t^2, s = t"));
    CHECK(a.final);
    CHECK(a.presentation.generator_count() == 0);
    CHECK(a.presentation.relators().empty());
    CHECK(abelianization(a.presentation).is_trivial());
    TietzeResult b = tietze_simplify(Presentation::parse("gens: a b c; rels: [a,b], [a,b], c a^-1"));
    CHECK(b.presentation.generator_count() == 2);
    CHECK(b.presentation.relators().size() == 1);
    TietzeResult c = tietze_simplify(torus());
    CHECK(c.steps == 0);
    CHECK(c.presentation == torus());
  }

  TEST_CASE("Tietze moves keep the abelianization on random input") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 200; ++i) {
      std::vector<Word> rels;
      for (int k = 0; k < 3; ++k) rels.push_back(random_word(rng, 3, 1 + static_cast<int>(rng() % 7)));
      Presentation p({"x", "y", "z"}, rels);
      TietzeResult t = tietze_simplify(p);
      CHECK(abelianization(t.presentation) == abelianization(p));
    }
  }

  TEST_CASE("exp_3 pipeline") {
    PushoutData d{Presentation({"s"}, {}), Presentation({"t"}, {}), torus(), {{1, 1, 1}, {1}}, {{1, 1}, {1}}};
    CHECK(GroupHom{d.c, d.a, d.c_to_a}.check() == HomCheck::Verified);
    CHECK(GroupHom{d.c, d.b, d.c_to_b}.check() == HomCheck::Verified);
    Presentation p = pushout(d);
    CosetResult r = coset_enumeration(p, 1000);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == 1);
    CHECK(verify_coset_table(p, r.table));
  }

  TEST_CASE("Bprime pipeline") {
    PushoutData d{torus(), Presentation({"c"}, {}), Presentation({"t"}, {}), {{1}}, {{1, 1}}};
    TietzeResult t = tietze_simplify(pushout(d));
    CHECK(equal_up_to_renaming(t.presentation, Presentation::parse("gens: b c; rels: [c^2,b]")));
    CHECK(abelianization(t.presentation) == AbelianGroup{2, {}});
  }

  TEST_CASE("trefoil complement pipeline") {
    PushoutData bd{torus(), Presentation({"c"}, {}), Presentation({"t"}, {}), {{1}}, {{1, 1}}};
    Presentation bprime = tietze_simplify(pushout(bd)).presentation.renamed({"u", "t"});
    PushoutData d{Presentation({"s"}, {}), bprime, torus(), {{1, 1, 1}, {1}}, {{2, 2}, {1}}};
    TietzeResult t = tietze_simplify(pushout(d));
    Presentation trefoil = Presentation::parse("gens: s t; rels: s^3 t^-2");
    CHECK(equal_up_to_renaming(t.presentation, trefoil));
    CHECK(abelianization(t.presentation) == AbelianGroup{1, {}});
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    CHECK(count_homs(t.presentation, s3) == 12);
    CHECK(count_homs(Presentation({"a"}, {}), s3) == 6);
  }
}
