#include "fixtures.hpp"

namespace chromoid::testing {

Fixture hamming(std::uint32_t d, std::uint32_t n) {
  ActionGroupoid ag(n, d);
  return {"H(" + std::to_string(d) + "," + std::to_string(n) + ")", ag.groupoid(),
          hamming_coloring(ag)};
}

Fixture pi_colored(std::uint32_t n, std::uint32_t d) {
  ActionGroupoid ag(n, d);
  return {"pi(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")", ag.groupoid(),
          pi_coloring(ag)};
}

FinGroupoid cyclic_group(std::size_t k) { return one_object_group(cyclic_group_table(k)); }

FinGroupoid klein_group() { return one_object_group(elementary_abelian_table(2, 2)); }

Fixture with_coloring(std::string name, const FinGroupoid &gpd, const Coloring &col) {
  return {std::move(name), gpd, col};
}

Fixture discrete(std::string name, const FinGroupoid &gpd) {
  return {std::move(name) + " discrete", gpd, discrete_coloring(gpd.category())};
}

Fixture trivial(std::string name, const FinGroupoid &gpd) {
  return {std::move(name) + " trivial", gpd, trivial_coloring(gpd.category())};
}

Coloring union_coloring(const FinGroupoid &u, const Coloring &left, const Coloring &right,
                        bool share_labels) {
  std::vector<std::string> labels;
  for (ColorId c : left.assignment())
    labels.push_back((share_labels ? "" : "a.") + left.label(c));
  for (ColorId c : right.assignment())
    labels.push_back((share_labels ? "" : "b.") + right.label(c));
  return coloring_from_labels(u.category(), labels);
}

Fixture hamming_union() {
  auto l = hamming(1, 2);
  auto r = hamming(1, 3);
  auto u = disjoint_union(l.gpd, r.gpd);
  return {"H(1,2)+H(1,3)", u, union_coloring(u, l.col, r.col)};
}

Fixture hamming_twins() {
  auto h = hamming(2, 2);
  auto u = disjoint_union(h.gpd, h.gpd);
  return {"H(2,2)+H(2,2) shared", u, union_coloring(u, h.col, h.col, true)};
}

Fixture z4_orbits() {
  auto g = cyclic_group(4);
  return {"Z/4 orbits", g, coloring_from_labels(g.category(), {"e", "g", "g2", "g"})};
}

Fixture flipped_h22() {
  ActionGroupoid ag(2, 2);
  const auto &cat = ag.category();
  std::vector<std::string> labels;
  const auto weight = hamming_coloring(ag);
  for (ColorId c : weight.assignment())
    labels.push_back(std::to_string(c.index()));
  const MorId flipped = ag.morphism(ag.rank({0, 1}), ag.rank({0, 0}));
  labels[flipped.index()] = "0";
  // Keep the palette in weight order.
  std::vector<std::size_t> assignment;
  for (const auto &l : labels)
    assignment.push_back(std::stoul(l));
  return {"H(2,2) flipped", ag.groupoid(), Coloring(cat, {"0", "1", "2"}, assignment)};
}

std::vector<Fixture> oracle_fixtures() {
  std::vector<Fixture> out;
  for (auto [d, n] : std::vector<std::pair<int, int>>{
           {1, 3}, {2, 3}, {3, 3}, {1, 4}, {2, 4}, {1, 2}, {2, 2}, {3, 2}, {4, 2}})
    out.push_back(hamming(d, n));
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}})
    out.push_back(pi_colored(n, d));
  const auto h12 = hamming(1, 2).gpd;
  const auto h13 = hamming(1, 3).gpd;
  const auto z4 = cyclic_group(4);
  const auto u = hamming_union().gpd;
  for (const auto &[name, g] : std::vector<std::pair<std::string, FinGroupoid>>{
           {"H(1,2)", h12}, {"H(1,3)", h13}, {"Z/4", z4}, {"H(1,2)+H(1,3)", u}}) {
    out.push_back(discrete(name, g));
    out.push_back(trivial(name, g));
  }
  out.push_back(discrete("Klein", klein_group()));
  out.push_back(hamming_union());
  out.push_back(hamming_twins());
  out.push_back(z4_orbits());
  return out;
}

std::vector<Fixture> sanity_groupoids() {
  return {hamming(1, 2), hamming(1, 3),
          with_coloring("Z/4", cyclic_group(4), trivial_coloring(cyclic_group(4).category())),
          hamming_union()};
}

} // namespace chromoid::testing
