#pragma once

#include <string>
#include <vector>

#include "chromoid/builders.hpp"
#include "chromoid/functors.hpp"

namespace chromoid::testing {

struct Fixture {
  std::string name;
  FinGroupoid gpd;
  Coloring col;

  ColoredCategory colored() const { return ColoredCategory(gpd, col); }
};

/// H(d, n): the action groupoid of (Z/n)^d with the weight coloring.
Fixture hamming(std::uint32_t d, std::uint32_t n);
/// The action groupoid of (Z/n)^d colored by the acting element.
Fixture pi_colored(std::uint32_t n, std::uint32_t d);

FinGroupoid cyclic_group(std::size_t k);
FinGroupoid klein_group();

Fixture with_coloring(std::string name, const FinGroupoid &gpd, const Coloring &col);
Fixture discrete(std::string name, const FinGroupoid &gpd);
Fixture trivial(std::string name, const FinGroupoid &gpd);

/// Coloring of a disjoint union that keeps the colors of the two parts apart
/// by prefixing their labels.
Coloring union_coloring(const FinGroupoid &u, const Coloring &left, const Coloring &right,
                        bool share_labels = false);

/// H(1,2) and H(1,3) side by side, each with its weight coloring.
Fixture hamming_union();
/// Two copies of H(2,2) sharing their color labels.
Fixture hamming_twins();
/// Z/4 colored by {e}, {g, g^3}, {g^2}.
Fixture z4_orbits();

/// H(2,2) with the color of ((0,1),(0,0)) changed from 1 to 0.
Fixture flipped_h22();

/// Fixtures satisfying the quotient preconditions with at most 20 colors.
std::vector<Fixture> oracle_fixtures();

/// The four groupoids used for the discrete / trivial sanity checks.
std::vector<Fixture> sanity_groupoids();

} // namespace chromoid::testing
