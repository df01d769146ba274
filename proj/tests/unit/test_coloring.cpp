#include <algorithm>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace chromoid;
using namespace chromoid::testing;

namespace {

std::uint64_t brute_n(const FinCategory &cat, const Coloring &col, MorId h, ColorId a,
                      ColorId b) {
  std::uint64_t n = 0;
  for (std::uint32_t f = 0; f < cat.morphism_count(); ++f)
    for (std::uint32_t g = 0; g < cat.morphism_count(); ++g)
      if (cat.composable(MorId{f}, MorId{g}) && col.color(MorId{f}) == a &&
          col.color(MorId{g}) == b && cat.compose(MorId{f}, MorId{g}) == h)
        ++n;
  return n;
}

// Direct reading of the transport statements: for f, g of one color and t at
// an endpoint of f, some q of the color of t sits at the same endpoint of g.
bool move_lemmas_brute(const FinGroupoid &gpd, const Coloring &col) {
  const auto &cat = gpd.category();
  const auto n = static_cast<std::uint32_t>(cat.morphism_count());
  for (int variant = 0; variant < 4; ++variant) {
    const bool at_source = variant == 0 || variant == 2;
    const bool leaving = variant == 0 || variant == 3;
    auto end = [&](MorId m) { return at_source ? cat.src(m) : cat.tgt(m); };
    auto touches = [&](MorId t, ObjId x) { return leaving ? cat.src(t) == x : cat.tgt(t) == x; };
    for (std::uint32_t f = 0; f < n; ++f)
      for (std::uint32_t g = 0; g < n; ++g) {
        if (col.color(MorId{f}) != col.color(MorId{g}))
          continue;
        for (std::uint32_t t = 0; t < n; ++t) {
          if (!touches(MorId{t}, end(MorId{f})))
            continue;
          bool found = false;
          for (std::uint32_t q = 0; q < n && !found; ++q)
            found = touches(MorId{q}, end(MorId{g})) && col.color(MorId{q}) == col.color(MorId{t});
          if (!found)
            return false;
        }
      }
  }
  return true;
}

} // namespace

TEST_CASE("colors are the image of the assignment") {
  const auto h = hamming(2, 2);
  CHECK(h.col.color_count() == 3);
  CHECK(h.col.identity_colors().size() == 1);
  CHECK(h.col.label(h.col.identity_colors()[0]) == "0");
  const auto &cat = h.gpd.category();
  const auto c = Coloring(cat, {"x", "unused", "y"}, std::vector<std::size_t>(16, 0));
  CHECK(c.color_count() == 1);
  CHECK(std::vector<std::string>(c.dropped_labels().begin(), c.dropped_labels().end()) ==
        std::vector<std::string>{"unused", "y"});
  CHECK_THROWS_AS(Coloring(cat, {"a", "a"}, std::vector<std::size_t>(16, 0)), StructuralError);
  CHECK_THROWS_AS(Coloring(cat, {"a"}, std::vector<std::size_t>(15, 0)), StructuralError);
  CHECK_THROWS_AS(Coloring(cat, {"a"}, std::vector<std::size_t>(16, 1)), StructuralError);
}

TEST_CASE("n_count on the point category") {
  const auto g = cyclic_group(1);
  const auto col = trivial_coloring(g.category());
  CHECK(n_count(g.category(), col, MorId{0}, ColorId{0}, ColorId{0}) == 1);
}

TEST_CASE("n_count on H(2,2)") {
  const auto h = hamming(2, 2);
  const auto &cat = h.gpd.category();
  const auto c0 = *h.col.find_color("0"), c1 = *h.col.find_color("1"),
             c2 = *h.col.find_color("2");
  const auto h2 = *cat.find_morphism("((1,1),(0,0))");
  CHECK(n_count(cat, h.col, h2, c1, c1) == 2);
  CHECK(brute_n(cat, h.col, h2, c1, c1) == 2);
  const auto h0 = *cat.find_morphism("((0,0),(1,0))");
  CHECK(n_count(cat, h.col, h0, c0, c1) == 0);
  CHECK(brute_n(cat, h.col, h0, c0, c1) == 0);
}

TEST_CASE("NCountTable agrees with n_count everywhere") {
  for (const auto &f : {hamming(2, 2), pi_colored(3, 1), z4_orbits(), flipped_h22()}) {
    const auto &cat = f.gpd.category();
    const auto table = NCountTable::compute(cat, f.col);
    for (std::uint32_t h = 0; h < cat.morphism_count(); ++h)
      for (std::uint32_t a = 0; a < f.col.color_count(); ++a)
        for (std::uint32_t b = 0; b < f.col.color_count(); ++b)
          CHECK(table.count(MorId{h}, ColorId{a}, ColorId{b}) ==
                brute_n(cat, f.col, MorId{h}, ColorId{a}, ColorId{b}));
  }
}

TEST_CASE("discrete and trivial colorings are colored categories") {
  for (const auto &g : {hamming(1, 3).gpd, cyclic_group(4), klein_group(), hamming_union().gpd}) {
    CHECK(check_colored_category(g.category(), discrete_coloring(g.category())).passed());
    CHECK(check_colored_category(g.category(), trivial_coloring(g.category())).passed());
  }
}

TEST_CASE("H(3,2) with the weight coloring is a colored category") {
  const auto h = hamming(3, 2);
  CHECK(check_colored_category(h.gpd.category(), h.col).passed());
}

TEST_CASE("flipped H(2,2) violates the decomposition axiom") {
  const auto f = flipped_h22();
  const auto &cat = f.gpd.category();
  const auto r = check_colored_category(cat, f.col);
  REQUIRE_FALSE(r.passed());
  // Some color-0 morphism lacks a (1,1) factorization that another has.
  const auto ws = r.witnesses();
  const auto w = std::find_if(ws.begin(), ws.end(), [](const Witness &w) {
    return w.items[1] == "1" && w.items[2] == "1";
  });
  REQUIRE(w != ws.end());
  const auto c1 = *f.col.find_color("1");
  const auto g = *cat.find_morphism(w->items[0]);
  const auto other = *cat.find_morphism(w->items[3]);
  CHECK(f.col.color(g) == f.col.color(other));
  CHECK(brute_n(cat, f.col, g, c1, c1) == 0);
  CHECK(brute_n(cat, f.col, other, c1, c1) > 0);
}

TEST_CASE("inverse compatibility holds for small Hamming schemoids and discrete colorings") {
  for (std::uint32_t d = 1; d <= 3; ++d)
    for (std::uint32_t n = 2; n <= 3; ++n) {
      const auto h = hamming(d, n);
      CHECK(check_inverse_compat(h.gpd, h.col).passed());
      CHECK(check_inverse_compat(h.gpd, discrete_coloring(h.gpd.category())).passed());
    }
}

TEST_CASE("same-colored morphisms with differently colored inverses are reported") {
  // In Z/4, 1 and 2 share a color while their inverses 3 and 2 do not.
  const auto z4 = cyclic_group(4);
  const auto col = coloring_from_labels(z4.category(), {"0", "1", "1", "2"});
  const auto r = check_inverse_compat(z4, col);
  REQUIRE_FALSE(r.passed());
  CHECK(r.witnesses()[0].items == std::vector<std::string>{"1", "2"});
}

TEST_CASE("schemoids") {
  const auto pi = pi_colored(2, 2);
  CHECK(check_schemoid(pi.gpd.category(), pi.col).report.passed());
  const auto h23 = hamming(2, 3);
  const auto s = check_schemoid(h23.gpd.category(), h23.col);
  CHECK(s.report.passed());
  // Every color of H(2,3) has constant intersection numbers.
  const auto c1 = *h23.col.find_color("1"), c2 = *h23.col.find_color("2");
  CHECK(s.table.constant(c2, c1, c1) == 2);
}

TEST_CASE("flipped H(2,2) is not a schemoid") {
  const auto f = flipped_h22();
  const auto &cat = f.gpd.category();
  const auto s = check_schemoid(cat, f.col);
  REQUIRE_FALSE(s.report.passed());
  const auto &w = s.report.witnesses()[0];
  REQUIRE(w.items.size() == 4);
  const auto h = *cat.find_morphism(w.items[0]), k = *cat.find_morphism(w.items[1]);
  const auto a = *f.col.find_color(w.items[2]), b = *f.col.find_color(w.items[3]);
  CHECK(f.col.color(h) == f.col.color(k));
  CHECK(brute_n(cat, f.col, h, a, b) != brute_n(cat, f.col, k, a, b));
}

TEST_CASE("move lemmas") {
  const auto h = hamming(2, 2);
  CHECK(check_move_lemmas(h.gpd, h.col).passed());
  CHECK(check_move_lemmas(h.gpd, discrete_coloring(h.gpd.category())).passed());
  const auto f = flipped_h22();
  const auto r = check_move_lemmas(f.gpd, f.col);
  CHECK(r.check() == "move-lemmas");
  CHECK(r.passed() == move_lemmas_brute(f.gpd, f.col));
}

TEST_CASE("move lemma check agrees with brute force on random colorings") {
  std::mt19937 rng(11);
  const auto u = hamming_union().gpd;
  for (int i = 0; i < 40; ++i) {
    const auto col = random_coloring(u.category(), 2 + i % 4, rng);
    CHECK(check_move_lemmas(u, col).passed() == move_lemmas_brute(u, col));
  }
}

TEST_CASE("random merges of schemoid colorings: check verdicts match brute force") {
  std::mt19937 rng(5);
  const auto pi = pi_colored(2, 2);
  const auto &cat = pi.gpd.category();
  for (int i = 0; i < 30; ++i) {
    const auto col = random_merge(cat, pi.col, 2 + i % 3, rng);
    bool decomposition = true, schemoid = true;
    for (std::uint32_t c = 0; c < col.color_count(); ++c) {
      const auto members = col.morphisms_of(ColorId{c});
      for (std::uint32_t a = 0; a < col.color_count(); ++a)
        for (std::uint32_t b = 0; b < col.color_count(); ++b) {
          std::set<std::uint64_t> counts;
          for (MorId h : members)
            counts.insert(brute_n(cat, col, h, ColorId{a}, ColorId{b}));
          schemoid &= counts.size() == 1;
          decomposition &= counts.size() == 1 || !counts.contains(0);
        }
    }
    CHECK(check_colored_category(cat, col).passed() == decomposition);
    CHECK(check_schemoid(cat, col).report.passed() == schemoid);
  }
}
