#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "chromoid/cli.hpp"
#include "chromoid/serialization.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace chromoid;
using namespace chromoid::testing;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void save_pair(const TempDir &dir, const std::string &stem, const FinGroupoid &g,
               const Coloring &col) {
  save_category(g, dir / (stem + ".category.json"));
  save_coloring(g.category(), col, dir / (stem + ".coloring.json"));
}

FunctorRefs refs(const std::string &source, const std::string &target) {
  return {ColoredCategoryRef{source + ".category.json", source + ".coloring.json"},
          ColoredCategoryRef{target + ".category.json", target + ".coloring.json"}};
}

} // namespace

TEST_CASE("check passes on H(2,2) with --schemoid") {
  TempDir dir;
  const auto h = hamming(2, 2);
  save_pair(dir, "h", h.gpd, h.col);
  const auto r = run({"check", dir / "h.category.json", dir / "h.coloring.json", "--schemoid",
                      "--groupoid", "--move-lemmas"});
  CHECK(r.code == 0);
  CHECK(r.out.find("schemoid: pass") != std::string::npos);
}

TEST_CASE("check fails on the flipped fixture and writes the witness") {
  TempDir dir;
  const auto f = flipped_h22();
  save_pair(dir, "f", f.gpd, f.col);
  const auto r = run({"check", dir / "f.category.json", dir / "f.coloring.json", "--schemoid",
                      "--report", dir / "report.json"});
  CHECK(r.code == 1);
  const auto doc = json::parse(read_text_file(dir / "report.json"));
  bool witnessed = false;
  for (const auto &c : doc["checks"])
    if (c["name"] == "colored-category") {
      CHECK(c["status"] == "fail");
      witnessed = !c["witnesses"].empty();
    }
  CHECK(witnessed);
}

TEST_CASE("missing files and bad usage exit with 2") {
  CHECK(run({"check", "/nonexistent/a.json", "/nonexistent/b.json"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"hamming", "--n", "2"}).code == 2);
  CHECK(run({"hamming", "--n", "2", "--d", "1", "--coloring", "odd", "-o", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("quotient of H(2,3) is the point") {
  TempDir dir;
  const auto h = hamming(2, 3);
  save_pair(dir, "h", h.gpd, h.col);
  const auto r = run({"quotient", dir / "h.category.json", dir / "h.coloring.json", "-o",
                      dir / "q.json"});
  REQUIRE(r.code == 0);
  const auto q = require_groupoid(load_category(dir / "q.json"));
  CHECK(q.category().object_count() == 1);
  CHECK(q.category().morphism_count() == 1);
  const auto col = load_coloring(dir / "q.coloring.json", q.category()).coloring;
  CHECK(col.color_count() == 1);
}

TEST_CASE("quotient of H(3,2) and its map file") {
  TempDir dir;
  const auto h = hamming(3, 2);
  save_pair(dir, "h", h.gpd, h.col);
  const auto r = run({"quotient", dir / "h.category.json", dir / "h.coloring.json", "-o",
                      dir / "q.json", "--map", dir / "map.json"});
  REQUIRE(r.code == 0);
  const auto q = require_groupoid(load_category(dir / "q.json"));
  CHECK(q.category().object_count() == 1);
  CHECK(q.category().morphism_count() == 2);
  const auto map = json::parse(read_text_file(dir / "map.json"));
  CHECK(map["s1"] == json{{"0", "[0]"}, {"1", "[1]"}, {"2", "[0]"}, {"3", "[1]"}});
  CHECK(map["s0"] == json{{"0", "[0]"}});

  const auto g = run({"group", dir / "q.json"});
  CHECK(g.code == 0);
  CHECK(g.out.find("cyclic(2)") != std::string::npos);
}

TEST_CASE("quotient refuses failed preconditions") {
  TempDir dir;
  const auto f = flipped_h22();
  save_pair(dir, "f", f.gpd, f.col);
  const auto r = run({"quotient", dir / "f.category.json", dir / "f.coloring.json", "-o",
                      dir / "q.json"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "q.json"));
}

TEST_CASE("discrete quotient of a two-object groupoid is isomorphic to it") {
  TempDir dir;
  const auto g = hamming(1, 2).gpd;
  save_pair(dir, "g", g, discrete_coloring(g.category()));
  REQUIRE(run({"quotient", dir / "g.category.json", dir / "g.coloring.json", "-o",
               dir / "q.json"})
              .code == 0);
  const auto r = run({"iso", dir / "q.json", dir / "g.category.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("isomorphic") == 0);

  save_category(cyclic_group(4), dir / "z4.json");
  save_category(klein_group(), dir / "klein.json");
  CHECK(run({"iso", dir / "z4.json", dir / "klein.json"}).code == 1);
}

TEST_CASE("hamming writes category and coloring files") {
  TempDir dir;
  CHECK(run({"hamming", "--n", "2", "--d", "3", "-o", dir / "h"}).code == 0);
  const auto g = require_groupoid(load_category(dir / "h.category.json"));
  CHECK(g.category().object_count() == 8);
  CHECK(g.category().morphism_count() == 64);
  const auto col = load_coloring(dir / "h.coloring.json", g.category()).coloring;
  CHECK(std::vector<std::string>(col.labels().begin(), col.labels().end()) ==
        std::vector<std::string>{"0", "1", "2", "3"});

  CHECK(run({"hamming", "--n", "3", "--d", "2", "--coloring", "pi", "-o", dir / "p"}).code == 0);
  const auto p = require_groupoid(load_category(dir / "p.category.json"));
  CHECK(load_coloring(dir / "p.coloring.json", p.category()).coloring.color_count() == 9);

  CHECK(run({"hamming", "--n", "100", "--d", "4", "-o", dir / "big"}).code == 2);
}

TEST_CASE("factor of the projection is the identity") {
  TempDir dir;
  const auto h = hamming(2, 2);
  const auto qr = build_quotient(h.gpd, h.col);
  save_pair(dir, "h", h.gpd, h.col);
  save_pair(dir, "u", qr.u, quotient_coloring(qr));
  save_functor(universal_functor(h.colored(), qr), dir / "varpi.json", refs("h", "u"));
  const auto r = run({"factor", dir / "h.category.json", dir / "h.coloring.json",
                      dir / "varpi.json", "-o", dir / "out.json"});
  REQUIRE(r.code == 0);
  const auto F = load_functor(dir / "out.json");
  CHECK(F.source == F.target);
  CHECK(F == identity_functor(F.source));
}

TEST_CASE("factor recovers H from H after the projection") {
  TempDir dir;
  const auto h = hamming(2, 2);
  const auto qr = build_quotient(h.gpd, h.col);
  const auto varpi = universal_functor(h.colored(), qr);
  const auto z2 = cyclic_group(2);
  const ColoredCategory target(z2, discrete_coloring(z2.category()));
  std::vector<ColoredFunctor> hs;
  for_each_colored_functor_to_discrete(varpi.target, target,
                                       [&](const ColoredFunctor &H) { hs.push_back(H); });
  REQUIRE(hs.size() == 2);
  save_pair(dir, "h", h.gpd, h.col);
  save_pair(dir, "z2", z2, discrete_coloring(z2.category()));
  for (const auto &H : hs) {
    save_functor(compose_colored_functors(H, varpi), dir / "F.json", refs("h", "z2"));
    REQUIRE(run({"factor", dir / "h.category.json", dir / "h.coloring.json", dir / "F.json",
                 "-o", dir / "out.json"})
                .code == 0);
    const auto back = load_functor(dir / "out.json");
    CHECK(back.object_map == H.object_map);
    CHECK(back.morphism_map == H.morphism_map);
    CHECK(back.color_map == H.color_map);
    CHECK(back.source == H.source);
  }
}

TEST_CASE("factor rejects a functor violating the color law") {
  TempDir dir;
  const auto h = hamming(2, 2);
  const auto qr = build_quotient(h.gpd, h.col);
  auto varpi = universal_functor(h.colored(), qr);
  varpi.color_map[1] = varpi.color_map[0];
  save_pair(dir, "h", h.gpd, h.col);
  save_pair(dir, "u", qr.u, quotient_coloring(qr));
  save_functor(varpi, dir / "bad.json", refs("h", "u"));
  const auto r = run({"factor", dir / "h.category.json", dir / "h.coloring.json",
                      dir / "bad.json", "-o", dir / "out.json"});
  CHECK(r.code == 1);
  CHECK(r.out.find("color-law") != std::string::npos);
}

TEST_CASE("induced functor of the inclusion H(1,2) -> H(2,2)") {
  TempDir dir;
  ActionGroupoid small(2, 1), big(2, 2);
  const ColoredCategory s(small.groupoid(), hamming_coloring(small));
  const ColoredCategory t(big.groupoid(), hamming_coloring(big));
  ColoredFunctor F{s, t, {}, {}, {}};
  for (std::size_t x = 0; x < 2; ++x)
    F.object_map.push_back(ObjId{big.rank({std::uint32_t(x), 0})});
  for (std::uint32_t m = 0; m < 4; ++m)
    F.morphism_map.push_back(big.morphism(big.rank({m / 2, 0}), big.rank({m % 2, 0})));
  for (std::uint32_t c = 0; c < 2; ++c)
    F.color_map.push_back(*t.coloring().find_color(s.coloring().label(ColorId{c})));
  REQUIRE(check_colored_functor(F).passed());
  save_pair(dir, "s", small.groupoid(), s.coloring());
  save_pair(dir, "t", big.groupoid(), t.coloring());
  save_functor(F, dir / "incl.json", refs("s", "t"));
  const auto r = run({"induced", dir / "s.category.json", dir / "s.coloring.json",
                      dir / "t.category.json", dir / "t.coloring.json", dir / "incl.json", "-o",
                      dir / "ind.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("(identity)") != std::string::npos);
  const auto ind = load_functor(dir / "ind.json");
  CHECK(ind.source.category().morphism_count() == 2);
  CHECK(ind == identity_functor(ind.source));
}

TEST_CASE("commands are deterministic") {
  TempDir dir;
  const auto h = hamming(2, 2);
  save_pair(dir, "h", h.gpd, h.col);
  for (const char *name : {"a", "b"})
    REQUIRE(run({"quotient", dir / "h.category.json", dir / "h.coloring.json", "-o",
                 dir / (std::string(name) + ".json"), "--map",
                 dir / (std::string(name) + ".map.json")})
                .code == 0);
  CHECK(read_text_file(dir / "a.json") == read_text_file(dir / "b.json"));
  CHECK(read_text_file(dir / "a.coloring.json") == read_text_file(dir / "b.coloring.json"));
  CHECK(read_text_file(dir / "a.map.json") == read_text_file(dir / "b.map.json"));
}
