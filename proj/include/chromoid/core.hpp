#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chromoid/report.hpp"

namespace chromoid {

/// Dense 0-based index, tagged so object, morphism and color indices cannot be
/// mixed up.
template <class Tag> struct Index {
  std::uint32_t value = 0;

  constexpr Index() = default;
  constexpr explicit Index(std::uint32_t v) : value(v) {}
  constexpr explicit Index(std::size_t v)
      : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Index(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  constexpr auto operator<=>(const Index &) const = default;
};

using ObjId = Index<struct ObjectTag>;
using MorId = Index<struct MorphismTag>;

/// A composable pair (f, g): f after g, so src(f) == tgt(g).
struct ComposablePair {
  MorId f;
  MorId g;
  auto operator<=>(const ComposablePair &) const = default;
};

/// Finite category with a fully tabulated composition.
///
/// Objects and morphisms are interned densely in insertion order. The
/// composition table has one slot per composable pair; a slot may be a hole
/// when the category was built from an incomplete table, which
/// validate_category() reports. Immutable once built.
class FinCategory {
public:
  FinCategory() = default;

  std::size_t object_count() const { return object_names_.size(); }
  std::size_t morphism_count() const { return morphism_names_.size(); }

  const std::string &object_name(ObjId x) const;
  const std::string &morphism_name(MorId f) const;
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  ObjId src(MorId f) const { return src_[f.index()]; }
  ObjId tgt(MorId f) const { return tgt_[f.index()]; }
  MorId identity(ObjId x) const { return identity_[x.index()]; }
  bool is_identity(MorId f) const { return identity(src(f)) == f; }

  bool composable(MorId f, MorId g) const { return src(f) == tgt(g); }

  /// f after g. Empty when the pair is not composable or the table has a
  /// hole at (f, g).
  std::optional<MorId> compose(MorId f, MorId g) const;

  /// Morphisms with the given source, in index order.
  std::span<const MorId> outgoing(ObjId x) const;
  /// Morphisms with the given target, in index order.
  std::span<const MorId> incoming(ObjId x) const;

  std::size_t composable_pair_count() const { return table_.size(); }

  /// Calls fn(f, g, composite) for every composable pair, ordered by (f, g).
  template <class Fn> void for_each_composable(Fn &&fn) const {
    for (std::uint32_t f = 0; f < morphism_count(); ++f) {
      const auto ins = incoming(src(MorId{f}));
      const std::size_t base = row_offset_[f];
      for (std::size_t k = 0; k < ins.size(); ++k) {
        const std::uint32_t h = table_[base + k];
        fn(MorId{f}, ins[k],
           h == kHole ? std::optional<MorId>{} : std::optional<MorId>{MorId{h}});
      }
    }
  }

  bool operator==(const FinCategory &other) const;

  void check_object(ObjId x) const;
  void check_morphism(MorId f) const;

private:
  friend class CategoryBuilder;
  static constexpr std::uint32_t kHole = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::unordered_map<std::string, std::uint32_t> object_lookup_;
  std::unordered_map<std::string, std::uint32_t> morphism_lookup_;
  std::vector<ObjId> src_;
  std::vector<ObjId> tgt_;
  std::vector<MorId> identity_;
  std::vector<std::size_t> out_offset_;
  std::vector<MorId> out_list_;
  std::vector<std::size_t> in_offset_;
  std::vector<MorId> in_list_;
  // Position of g within incoming(tgt(g)).
  std::vector<std::uint32_t> in_pos_;
  // compose(f, g) lives at table_[row_offset_[f] + in_pos_[g]].
  std::vector<std::size_t> row_offset_;
  std::vector<std::uint32_t> table_;
};

/// Incremental construction of a FinCategory. Names must be unique within
/// their kind and every object needs an identity before build().
class CategoryBuilder {
public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId src, ObjId tgt);
  void set_identity(ObjId x, MorId id);
  /// Records f after g = h. Rejects non-composable pairs and conflicting
  /// entries; does not check that h has the right endpoints.
  void set_composite(MorId f, MorId g, MorId h);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  ObjId src(MorId f) const;
  ObjId tgt(MorId f) const;

  FinCategory build() &&;

private:
  struct MorphismEntry {
    std::string name;
    ObjId src;
    ObjId tgt;
  };
  struct CompositeEntry {
    MorId f, g, h;
  };

  std::vector<std::string> objects_;
  std::vector<MorphismEntry> morphisms_;
  std::unordered_map<std::string, std::uint32_t> object_lookup_;
  std::unordered_map<std::string, std::uint32_t> morphism_lookup_;
  std::vector<std::optional<MorId>> identities_;
  std::vector<CompositeEntry> composites_;
};

/// A finite category together with an inverse for every morphism.
class FinGroupoid {
public:
  FinGroupoid() = default;
  /// Throws StructuralError when `inverse` has the wrong size or dangling ids.
  FinGroupoid(FinCategory base, std::vector<MorId> inverse);

  const FinCategory &category() const { return base_; }
  MorId inverse(MorId f) const { return inverse_[f.index()]; }
  std::span<const MorId> inverses() const { return inverse_; }

  bool operator==(const FinGroupoid &) const = default;

private:
  FinCategory base_;
  std::vector<MorId> inverse_;
};

/// Finds two-sided inverses by search. Empty if some morphism has none.
std::optional<FinGroupoid> derive_groupoid(const FinCategory &cat);

/// Checks the category laws: identity endpoints, closure of the table on
/// composable pairs, composite endpoints, unit laws and associativity.
ValidationReport validate_category(const FinCategory &cat);

/// Checks the inverse laws and that inverse is an involution.
ValidationReport validate_groupoid(const FinGroupoid &gpd);

/// All composable (f, g) with f after g == h, sorted by (f, g).
std::vector<ComposablePair> factorizations(const FinCategory &cat, MorId h);

} // namespace chromoid

template <class Tag> struct std::hash<chromoid::Index<Tag>> {
  std::size_t operator()(const chromoid::Index<Tag> &i) const noexcept {
    return std::hash<std::uint32_t>{}(i.value);
  }
};
