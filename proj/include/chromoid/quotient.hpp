#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chromoid/congruence.hpp"

namespace chromoid {

/// The universal quotient groupoid of a colored groupoid together with the
/// projection onto it.
struct QuotientResult {
  /// Objects are the classes of I0, morphisms the classes of I1, both in the
  /// order of `object_classes` / `morphism_classes`.
  FinGroupoid u;
  ColorPartition morphism_classes;
  ColorPartition object_classes;
  /// Color -> quotient object; only meaningful for identity colors.
  std::vector<std::optional<ObjId>> s0;
  /// Color -> quotient morphism.
  std::vector<MorId> s1;
  /// Object of the source groupoid -> quotient object.
  std::vector<ObjId> pi_objects;
  /// Morphism of the source groupoid -> quotient morphism.
  std::vector<MorId> pi_morphisms;
};

struct QuotientOptions {
  bool check_preconditions = true;
};

/// Builds the quotient groupoid. Composition is computed on representatives:
/// the minimal-index morphism f of the left class and the minimal-index g of
/// the right class with tgt(g) == src(f). Every well-definedness claim the
/// construction relies on (endpoints, identities, inverses) is asserted and
/// raises InvariantViolation if it fails.
QuotientResult build_quotient(const FinGroupoid &gpd, const Coloring &col,
                              QuotientOptions options = {});

/// Discrete coloring of a quotient: color index == morphism index, labels are
/// the quotient morphism names.
Coloring quotient_coloring(const QuotientResult &qr);

/// Multiplication table of a one-object groupoid.
struct GroupTable {
  std::vector<std::string> elements;
  /// mul[a][b] = a after b.
  std::vector<std::vector<std::size_t>> mul;
  std::size_t unit = 0;
  std::vector<std::size_t> inv;
  std::vector<std::size_t> orders;
  /// Order k of a generating element if the group is cyclic.
  std::optional<std::size_t> cyclic_order;

  /// "cyclic(k)" or "non-cyclic(order profile ...)".
  std::string classification() const;
  /// Element orders with multiplicity: order -> count.
  std::map<std::size_t, std::size_t> order_profile() const;
};

/// Group table of a one-object groupoid. Throws StructuralError naming the
/// object count otherwise, and InvariantViolation if the group axioms fail.
GroupTable group_table(const FinGroupoid &gpd);
GroupTable quotient_group(const QuotientResult &qr);

} // namespace chromoid
