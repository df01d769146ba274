#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chromoid/coloring.hpp"

namespace chromoid {

/// Resource guards for generated instances. Defaults come from the
/// environment (CHROMOID_MAX_MORPHISMS, CHROMOID_MAX_COMPOSABLE).
struct Guard {
  std::size_t max_morphisms = 1'000'000;
  std::size_t max_composable_pairs = 50'000'000;

  static Guard from_environment();
};

/// Element of (Z/n)^d; entries in [0, n).
using TupleElement = std::vector<std::uint32_t>;

/// Action groupoid G//G for G = (Z/n)^d, remembering (n, d) so colorings that
/// read the acting element can only be applied to it.
///
/// Elements are ordered lexicographically; the morphism (g, x) from x to g + x
/// has index rank(g) * |G| + rank(x).
class ActionGroupoid {
public:
  ActionGroupoid(std::uint32_t n, std::uint32_t d, const Guard &guard = Guard::from_environment());

  std::uint32_t n() const { return n_; }
  std::uint32_t d() const { return d_; }
  std::size_t group_order() const { return order_; }
  const FinGroupoid &groupoid() const { return gpd_; }
  const FinCategory &category() const { return gpd_.category(); }

  TupleElement element(std::size_t rank) const;
  std::size_t rank(const TupleElement &x) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t weight(std::size_t a) const;

  /// The morphism (g, x) by element ranks.
  MorId morphism(std::size_t g, std::size_t x) const { return MorId{g * order_ + x}; }
  std::size_t acting_element(MorId f) const { return f.index() / order_; }

  /// "1" for d = 1, "(1,0,2)" otherwise.
  std::string element_name(std::size_t rank) const;

private:
  std::uint32_t n_;
  std::uint32_t d_;
  std::size_t order_;
  FinGroupoid gpd_;
};

/// G//G as a groupoid; throws GuardExceeded with the computed size when the
/// instance is too large.
ActionGroupoid action_groupoid(std::uint32_t n, std::uint32_t d,
                               const Guard &guard = Guard::from_environment());

/// l((g, x)) = g, labelled by element name.
Coloring pi_coloring(const ActionGroupoid &ag);
/// l((g, x)) = Hamming weight of g, labelled "0".."d".
Coloring hamming_coloring(const ActionGroupoid &ag);

/// One color per morphism; color index equals morphism index and the label is
/// the morphism name.
Coloring discrete_coloring(const FinCategory &cat);
/// A single color "0".
Coloring trivial_coloring(const FinCategory &cat);

/// A finite group as a multiplication table: mul[a][b] = a * b.
struct MultiplicationTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul;
};

MultiplicationTable cyclic_group_table(std::size_t k);
/// (Z/n)^d with lexicographic element order.
MultiplicationTable elementary_abelian_table(std::uint32_t n, std::uint32_t d);
/// Checks closure, unit, inverses and associativity.
ValidationReport check_group_table(const MultiplicationTable &table);

/// One-object groupoid over a group. Throws PreconditionError carrying the
/// group-axiom report when the table is not a group.
FinGroupoid one_object_group(const MultiplicationTable &table);

/// Disjoint union. Names are prefixed with `left_prefix` / `right_prefix`.
FinGroupoid disjoint_union(const FinGroupoid &left, const FinGroupoid &right,
                           const std::string &left_prefix = "a.",
                           const std::string &right_prefix = "b.");

} // namespace chromoid
