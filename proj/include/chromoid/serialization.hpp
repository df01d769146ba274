#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chromoid/functors.hpp"

namespace chromoid {

/// Value of the "format" key in every document.
inline constexpr const char *kFormatVersion = "chromoid/1";

/// A category document, which is a groupoid when it carries "inverse".
using CategoryValue = std::variant<FinCategory, FinGroupoid>;

const FinCategory &category_of(const CategoryValue &value);
/// The groupoid stored in the document, or one derived by searching for
/// inverses. Throws FormatError when some morphism has no inverse.
FinGroupoid require_groupoid(const CategoryValue &value);

// Canonical text form: sorted keys, arrays in index order, two-space indent
// and a trailing newline. Parsing throws FormatError with the offending key,
// or the line and column of a syntax error.

std::string category_to_string(const FinCategory &cat);
std::string category_to_string(const FinGroupoid &gpd);
CategoryValue category_from_string(const std::string &text);
CategoryValue load_category(const std::filesystem::path &path);
void save_category(const FinCategory &cat, const std::filesystem::path &path);
void save_category(const FinGroupoid &gpd, const std::filesystem::path &path);

struct LoadedColoring {
  Coloring coloring;
  /// One message per palette label that no morphism uses (dropped).
  std::vector<std::string> warnings;
};

std::string coloring_to_string(const FinCategory &cat, const Coloring &col);
LoadedColoring coloring_from_string(const std::string &text, const FinCategory &cat);
LoadedColoring load_coloring(const std::filesystem::path &path, const FinCategory &cat);
void save_coloring(const FinCategory &cat, const Coloring &col,
                   const std::filesystem::path &path);

/// File references stored in a functor document. Relative paths are
/// resolved against the functor file's directory.
struct ColoredCategoryRef {
  std::string category;
  std::string coloring;
};

struct FunctorRefs {
  std::optional<ColoredCategoryRef> source;
  std::optional<ColoredCategoryRef> target;
};

std::string functor_to_string(const ColoredFunctor &F, const FunctorRefs &refs = {});
/// Resolves names against the given endpoints; the document's references are
/// ignored.
ColoredFunctor functor_from_string(const std::string &text, const ColoredCategory &source,
                                   const ColoredCategory &target);
FunctorRefs functor_refs_from_string(const std::string &text);
/// Loads the endpoints from the document's references.
ColoredFunctor load_functor(const std::filesystem::path &path);
ColoredFunctor load_functor(const std::filesystem::path &path, const ColoredCategory &source,
                            const ColoredCategory &target);
void save_functor(const ColoredFunctor &F, const std::filesystem::path &path,
                  const FunctorRefs &refs = {});

/// Loads a category + coloring pair.
ColoredCategory load_colored_category(const std::filesystem::path &category,
                                      const std::filesystem::path &coloring);

/// pi_objects, pi_morphisms, s0 and s1 keyed by source names and labels.
std::string quotient_map_to_string(const QuotientResult &qr, const FinCategory &source,
                                   const Coloring &col);
void save_quotient_map(const QuotientResult &qr, const FinCategory &source,
                       const Coloring &col, const std::filesystem::path &path);

std::string report_to_string(std::span<const ValidationReport> reports);
void save_report(std::span<const ValidationReport> reports,
                 const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace chromoid
