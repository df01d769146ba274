#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace chromoid;
using namespace chromoid::testing;

namespace {

void check_projection(const Fixture &f, const QuotientResult &qr) {
  const auto &cat = f.gpd.category();
  const auto &u = qr.u.category();
  std::vector<bool> hit_obj(u.object_count()), hit_mor(u.morphism_count());
  for (std::uint32_t x = 0; x < cat.object_count(); ++x)
    hit_obj[qr.pi_objects[x].index()] = true;
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    const MorId fm{m};
    const MorId p = qr.pi_morphisms[m];
    hit_mor[p.index()] = true;
    CHECK(u.src(p) == qr.pi_objects[cat.src(fm).index()]);
    CHECK(u.tgt(p) == qr.pi_objects[cat.tgt(fm).index()]);
    CHECK(p == qr.s1[f.col.color(fm).index()]);
  }
  CHECK(std::all_of(hit_obj.begin(), hit_obj.end(), [](bool b) { return b; }));
  CHECK(std::all_of(hit_mor.begin(), hit_mor.end(), [](bool b) { return b; }));
  cat.for_each_composable([&](MorId a, MorId b, std::optional<MorId> h) {
    CHECK(qr.pi_morphisms[h->index()] ==
          u.compose(qr.pi_morphisms[a.index()], qr.pi_morphisms[b.index()]));
  });
  CHECK(validate_category(u).passed());
  CHECK(validate_groupoid(qr.u).passed());
}

} // namespace

TEST_CASE("projection onto the quotient is a surjective functor") {
  for (const auto &f : oracle_fixtures()) {
    INFO(f.name);
    check_projection(f, build_quotient(f.gpd, f.col));
  }
}

TEST_CASE("U(H(2,3)) is the point") {
  const auto h = hamming(2, 3);
  const auto qr = build_quotient(h.gpd, h.col);
  CHECK(qr.u.category().object_count() == 1);
  CHECK(qr.u.category().morphism_count() == 1);
  const auto g = quotient_group(qr);
  CHECK(g.classification() == "cyclic(1)");
}

TEST_CASE("U(H(3,2)) is Z/2") {
  const auto h = hamming(3, 2);
  const auto qr = build_quotient(h.gpd, h.col);
  const auto &u = qr.u.category();
  REQUIRE(u.object_count() == 1);
  REQUIRE(u.morphism_count() == 2);
  const auto one = *u.find_morphism("[1]");
  CHECK_FALSE(u.is_identity(one));
  CHECK(qr.u.inverse(one) == one);
  CHECK(u.compose(one, one) == u.identity(ObjId{0}));
  for (std::uint32_t a = 0; a <= 3; ++a)
    CHECK(u.morphism_name(qr.s1[h.col.find_color(std::to_string(a))->index()]) ==
          "[" + std::to_string(a % 2) + "]");
  for (std::uint32_t d = 1; d <= 4; ++d)
    CHECK(quotient_group(build_quotient(hamming(d, 2).gpd, hamming(d, 2).col))
              .classification() == "cyclic(2)");
}

TEST_CASE("discrete coloring of H(2,2) gives back the groupoid") {
  const auto g = hamming(2, 2).gpd;
  const auto qr = build_quotient(g, discrete_coloring(g.category()));
  CHECK(qr.u.category().object_count() == g.category().object_count());
  CHECK(qr.u.category().morphism_count() == g.category().morphism_count());
  CHECK(groupoid_isomorphic(qr.u, g).has_value());
}

TEST_CASE("U of the pi coloring for n=3, d=1 is Z/3") {
  const auto pi = pi_colored(3, 1);
  const auto g = quotient_group(build_quotient(pi.gpd, pi.col));
  CHECK(g.classification() == "cyclic(3)");
  // Brute-force comparison with the Z/3 table through the labels "[k]".
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const auto ia = std::stoul(g.elements[a].substr(1));
      const auto ib = std::stoul(g.elements[b].substr(1));
      CHECK(std::stoul(g.elements[g.mul[a][b]].substr(1)) == (ia + ib) % 3);
    }
}

TEST_CASE("group tables classify groups") {
  CHECK(group_table(cyclic_group(4)).classification() == "cyclic(4)");
  const auto klein = group_table(klein_group());
  CHECK_FALSE(klein.cyclic_order.has_value());
  CHECK(klein.classification().rfind("non-cyclic", 0) == 0);
  CHECK(klein.order_profile() == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}});
  CHECK_THROWS_AS(group_table(hamming(1, 2).gpd), StructuralError);
}

TEST_CASE("quotient coloring is discrete") {
  const auto h = hamming(2, 2);
  const auto qr = build_quotient(h.gpd, h.col);
  const auto col = quotient_coloring(qr);
  CHECK(col.color_count() == qr.u.category().morphism_count());
  for (std::uint32_t m = 0; m < col.morphism_count(); ++m)
    CHECK(col.color(MorId{m}) == ColorId{m});
}

TEST_CASE("quotient refuses inputs failing the preconditions") {
  const auto f = flipped_h22();
  CHECK_THROWS_AS(build_quotient(f.gpd, f.col), PreconditionError);
}

TEST_CASE("quotients of relabelled inputs are isomorphic") {
  std::mt19937 rng(17);
  for (const auto &f : oracle_fixtures()) {
    if (f.gpd.category().morphism_count() > 300)
      continue;
    const auto copy = shuffled_copy(f.gpd, rng);
    const auto col = carry_coloring(f.gpd, f.col, copy);
    const auto a = build_quotient(f.gpd, f.col);
    const auto b = build_quotient(copy, col);
    CHECK(a.u.category().morphism_count() == b.u.category().morphism_count());
    CHECK(groupoid_isomorphic(a.u, b.u).has_value());
  }
}
