#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "chromoid/quotient.hpp"

namespace chromoid {

/// A category (optionally a groupoid) with a coloring. Cheap to copy; the
/// underlying values are shared and immutable.
class ColoredCategory {
public:
  ColoredCategory() = default;
  ColoredCategory(FinCategory cat, Coloring col);
  ColoredCategory(FinGroupoid gpd, Coloring col);

  const FinCategory &category() const { return *cat_; }
  const Coloring &coloring() const { return *col_; }
  /// Null when the category was not given as a groupoid.
  const FinGroupoid *groupoid() const { return gpd_.get(); }

  /// Every morphism has its own color.
  bool is_discrete() const;

  /// Structural equality of category and coloring.
  bool operator==(const ColoredCategory &other) const;

private:
  std::shared_ptr<const FinGroupoid> gpd_;
  std::shared_ptr<const FinCategory> cat_;
  std::shared_ptr<const Coloring> col_;
};

/// (F, gamma): a functor plus a map of colors with gamma(l(f)) = l'(F(f)).
struct ColoredFunctor {
  ColoredCategory source;
  ColoredCategory target;
  std::vector<ObjId> object_map;
  std::vector<MorId> morphism_map;
  std::vector<ColorId> color_map;

  ObjId operator()(ObjId x) const { return object_map[x.index()]; }
  MorId operator()(MorId f) const { return morphism_map[f.index()]; }
  ColorId operator()(ColorId c) const { return color_map[c.index()]; }

  /// Componentwise equality, including the endpoints.
  bool operator==(const ColoredFunctor &) const = default;
};

/// Functor laws (endpoints, identities, composition) and the color law.
/// Throws StructuralError when a map has the wrong size or dangling ids.
ValidationReport check_colored_functor(const ColoredFunctor &F);

ColoredFunctor identity_functor(const ColoredCategory &c);

/// second after first. Throws StructuralError unless first.target equals
/// second.source.
ColoredFunctor compose_colored_functors(const ColoredFunctor &second,
                                        const ColoredFunctor &first);

/// The quotient as a discrete colored groupoid.
ColoredCategory quotient_category(const QuotientResult &qr);

/// The projection onto the quotient: objects by s0 o l0, morphisms by
/// s1 o l1, colors by s1.
ColoredFunctor universal_functor(const ColoredCategory &source, const QuotientResult &qr);

struct Factorization {
  QuotientResult quotient;
  ColoredFunctor projection;
  ColoredFunctor factor;
};

/// The unique (F', gamma') from the quotient with (F', gamma') o projection == F.
/// `projection` must be universal_functor(F.source, qr). Throws
/// PreconditionError if F is not a valid colored functor, StructuralError if
/// the target is not discrete, InvariantViolation if representatives of one
/// class disagree.
ColoredFunctor factor_through_quotient(const ColoredFunctor &F,
                                       const ColoredFunctor &projection,
                                       const QuotientResult &qr);
/// Builds the quotient of F.source (which must be a groupoid) first.
Factorization factor_through_quotient(const ColoredFunctor &F,
                                      QuotientOptions options = {});

/// Raised when gamma does not map a congruence class into a single class.
class ClassConstancyError : public InvariantViolation {
public:
  ClassConstancyError(const std::string &what, std::string first, std::string second)
      : InvariantViolation(what), first_(std::move(first)), second_(std::move(second)) {}
  const std::string &first() const { return first_; }
  const std::string &second() const { return second_; }

private:
  std::string first_;
  std::string second_;
};

struct InducedFunctor {
  QuotientResult source_quotient;
  QuotientResult target_quotient;
  ColoredFunctor functor;
};

/// The functor between quotients induced by a colored functor between colored
/// groupoids: class of a maps to class of gamma(a).
InducedFunctor induced_functor(const ColoredFunctor &F, QuotientOptions options = {});

/// Calls visit(F) for every colored functor from `source` to the discrete
/// `target`. Such functors are determined by gamma, which is enumerated by
/// backtracking over source colors. Throws GuardExceeded when the naive
/// search space |Mor(target)|^|I1| exceeds `max_candidates`.
void for_each_colored_functor_to_discrete(
    const ColoredCategory &source, const ColoredCategory &target,
    const std::function<void(const ColoredFunctor &)> &visit,
    double max_candidates = 1e12);

std::size_t count_colored_functors_to_discrete(const ColoredCategory &source,
                                               const ColoredCategory &target);

struct GroupoidIsomorphism {
  std::vector<ObjId> object_map;
  std::vector<MorId> morphism_map;
};

struct IsomorphismGuard {
  std::size_t max_objects = 64;
  std::size_t max_morphisms = 5000;
};

/// An explicit isomorphism A -> B if one exists. Backtracking over morphism
/// images with composition propagation, pruned by per-morphism invariants.
std::optional<GroupoidIsomorphism> groupoid_isomorphic(const FinGroupoid &a,
                                                       const FinGroupoid &b,
                                                       IsomorphismGuard guard = {});

} // namespace chromoid
