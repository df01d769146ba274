#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "chromoid/coloring.hpp"

namespace chromoid {

/// step(x, c) = { l(f after g) : l(f) = x, l(g) = c, (f, g) composable }.
///
/// Stored as the sorted set of triples (x, c, result) with a row index per x,
/// so memory is proportional to the number of distinct triples.
class StepTable {
public:
  struct Triple {
    ColorId x;
    ColorId c;
    ColorId result;
    auto operator<=>(const Triple &) const = default;
  };

  static StepTable compute(const FinCategory &cat, const Coloring &col);

  std::size_t color_count() const { return row_offset_.empty() ? 0 : row_offset_.size() - 1; }
  /// Sorted step set; empty when no (x, c) pair composes.
  std::vector<ColorId> step(ColorId x, ColorId c) const;
  /// All triples with first component x, sorted by (c, result).
  std::span<const Triple> row(ColorId x) const;

private:
  std::vector<std::size_t> row_offset_;
  std::vector<Triple> triples_;
};

/// Symmetric relation on a color set, stored as a bit matrix.
class ColorRelation {
public:
  ColorRelation() = default;
  explicit ColorRelation(std::size_t color_count);

  std::size_t color_count() const { return n_; }
  bool test(ColorId a, ColorId b) const;
  /// Inserts {a, b}; returns false if it was already present.
  bool insert(ColorId a, ColorId b);
  std::size_t pair_count() const; // unordered pairs, diagonal included

  /// A triple (a, b, c) with a~b, b~c but not a~c, if one exists.
  std::optional<std::tuple<ColorId, ColorId, ColorId>> transitivity_witness() const;
  bool is_transitive() const { return !transitivity_witness(); }

  bool operator==(const ColorRelation &) const = default;

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Partition of a subset of a color space into classes. Classes are sorted by
/// their minimum member, which is the class representative.
class ColorPartition {
public:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  ColorPartition() = default;

  /// Normalizes and validates: classes must be nonempty, disjoint and inside
  /// [0, color_space). Throws StructuralError otherwise.
  static ColorPartition from_classes(std::size_t color_space,
                                     std::vector<std::vector<ColorId>> classes);

  std::size_t color_space() const { return class_of_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  std::span<const ColorId> members(std::size_t k) const { return classes_.at(k); }
  ColorId representative(std::size_t k) const { return classes_.at(k).front(); }
  bool contains(ColorId c) const;
  /// Class index of c; throws StructuralError when c is outside the set.
  std::size_t class_of(ColorId c) const;
  const std::vector<std::vector<ColorId>> &classes() const { return classes_; }

  bool operator==(const ColorPartition &) const = default;

private:
  std::vector<std::vector<ColorId>> classes_;
  std::vector<std::uint32_t> class_of_;
};

StepTable color_step_table(const FinGroupoid &gpd, const Coloring &col);

/// Least relation on I1 containing the diagonal and closed under
/// (a, b) related, a' in step(a, c), b' in step(b, c) => (a', b') related.
/// No transitive closure is applied.
ColorRelation morphism_color_relation(const StepTable &steps);

struct CongruenceOptions {
  /// Verify the decomposition axiom and inverse compatibility first and refuse
  /// with PreconditionError when they fail.
  bool check_preconditions = true;
};

/// The congruence on morphism colors. With preconditions checked, a
/// non-transitive fixpoint raises InvariantViolation; unchecked, it is closed
/// transitively.
ColorPartition morphism_color_partition(const FinGroupoid &gpd, const Coloring &col,
                                        CongruenceOptions options = {});

enum class Endpoint { source, target };

/// Union over congruence classes K of the cliques S(K) x S(K), where S(K) holds
/// the identity colors at the chosen endpoint of the morphisms in K.
ColorRelation object_color_relation(const FinGroupoid &gpd, const Coloring &col,
                                    const ColorPartition &morph_part,
                                    Endpoint endpoint = Endpoint::source);

/// Partition of I0 induced by the morphism congruence. Raises
/// InvariantViolation if the clique union is not already transitive.
ColorPartition object_color_partition(const FinGroupoid &gpd, const Coloring &col,
                                      const ColorPartition &morph_part,
                                      Endpoint endpoint = Endpoint::source);

/// Precondition report shared by the congruence and quotient constructions:
/// decomposition axiom plus inverse compatibility.
ValidationReport quotient_preconditions(const FinGroupoid &gpd, const Coloring &col);

} // namespace chromoid
