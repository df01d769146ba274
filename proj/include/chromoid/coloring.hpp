#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "chromoid/core.hpp"

namespace chromoid {

using ColorId = Index<struct ColorTag>;

/// A total map from morphisms to interned colors.
///
/// Colors are exactly the image of the map (I1); palette labels that no
/// morphism uses are dropped at construction and listed in dropped_labels().
/// The identity colors (I0) are kept sorted by index.
class Coloring {
public:
  Coloring() = default;

  /// `assignment[m]` indexes into `palette`. Throws StructuralError on a size
  /// mismatch, an out-of-range entry or a duplicate label.
  Coloring(const FinCategory &cat, const std::vector<std::string> &palette,
           const std::vector<std::size_t> &assignment);

  std::size_t morphism_count() const { return assignment_.size(); }
  std::size_t color_count() const { return labels_.size(); }

  ColorId color(MorId f) const { return assignment_[f.index()]; }
  std::span<const ColorId> assignment() const { return assignment_; }
  const std::string &label(ColorId c) const { return labels_.at(c.index()); }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<ColorId> find_color(std::string_view label) const;

  /// I0: colors of identities, sorted.
  std::span<const ColorId> identity_colors() const { return identity_colors_; }
  bool is_identity_color(ColorId c) const { return is_identity_color_[c.index()]; }

  /// Morphisms of one color, in index order.
  std::span<const MorId> morphisms_of(ColorId c) const;

  std::span<const std::string> dropped_labels() const { return dropped_; }

  /// Throws StructuralError unless this coloring was built for a category of
  /// the same size.
  void check_fits(const FinCategory &cat) const;

  bool operator==(const Coloring &other) const {
    return labels_ == other.labels_ && assignment_ == other.assignment_;
  }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
  std::vector<ColorId> assignment_;
  std::vector<ColorId> identity_colors_;
  std::vector<bool> is_identity_color_;
  std::vector<std::size_t> class_offset_;
  std::vector<MorId> class_list_;
  std::vector<std::string> dropped_;
};

/// Coloring from one label per morphism; colors are interned in order of first
/// appearance.
Coloring coloring_from_labels(const FinCategory &cat,
                              const std::vector<std::string> &labels);

/// Cardinality of {(f, g) composable : l(f) = a, l(g) = b, f after g = h},
/// counted directly from the factorizations of h.
std::uint64_t n_count(const FinCategory &cat, const Coloring &col, MorId h,
                      ColorId a, ColorId b);

/// Factorization counts n(h, a, b) for every morphism h, plus the per-color
/// constants p^c_{a,b} wherever all morphisms of color c agree.
class NCountTable {
public:
  struct Entry {
    ColorId a;
    ColorId b;
    std::uint64_t count;
  };

  static NCountTable compute(const FinCategory &cat, const Coloring &col);

  /// Nonzero entries of n(h, ., .), sorted by (a, b).
  std::span<const Entry> row(MorId h) const;
  std::uint64_t count(MorId h, ColorId a, ColorId b) const;

  /// p^c_{a,b}: set when every morphism of color c has the same count
  /// (0 when no morphism of color c factors as (a, b)); empty otherwise.
  std::optional<std::uint64_t> constant(ColorId c, ColorId a, ColorId b) const;

  /// All (c, a, b) with a nonzero agreed constant, sorted.
  const std::map<std::tuple<ColorId, ColorId, ColorId>, std::uint64_t> &
  constants() const {
    return constants_;
  }

private:
  std::vector<std::size_t> offset_;
  std::vector<Entry> entries_;
  std::map<std::tuple<ColorId, ColorId, ColorId>, std::uint64_t> constants_;
  std::set<std::tuple<ColorId, ColorId, ColorId>> disagreements_;
};

/// Decomposition axiom: whenever one morphism of color c factors with colors
/// (a, b), every morphism of color c does. Witness: (g, a, b) with g lacking
/// the factorization, plus the morphism that has it.
ValidationReport check_colored_category(const FinCategory &cat, const Coloring &col);
ValidationReport check_colored_category(const FinCategory &cat, const Coloring &col,
                                        const NCountTable &table);

/// l(f) == l(g) implies l(f^-1) == l(g^-1). Witness: (f, g).
ValidationReport check_inverse_compat(const FinGroupoid &gpd, const Coloring &col);

struct SchemoidCheck {
  ValidationReport report;
  NCountTable table;
};

/// n(h, a, b) == n(k, a, b) whenever l(h) == l(k). Witness: (h, k, a, b).
SchemoidCheck check_schemoid(const FinCategory &cat, const Coloring &col);

/// The four transport statements: for f, g of one color and t sharing an
/// endpoint with f, some q of color l(t) shares the corresponding endpoint
/// with g. Witness: (f, g, t).
ValidationReport check_move_lemmas(const FinGroupoid &gpd, const Coloring &col);

} // namespace chromoid
