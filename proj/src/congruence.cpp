#include "chromoid/congruence.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "chromoid/union_find.hpp"

namespace chromoid {

// StepTable

StepTable StepTable::compute(const FinCategory &cat, const Coloring &col) {
  col.check_fits(cat);
  StepTable t;
  cat.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
    if (h)
      t.triples_.push_back({col.color(f), col.color(g), col.color(*h)});
  });
  std::sort(t.triples_.begin(), t.triples_.end());
  t.triples_.erase(std::unique(t.triples_.begin(), t.triples_.end()), t.triples_.end());
  t.triples_.shrink_to_fit();

  t.row_offset_.assign(col.color_count() + 1, 0);
  for (const auto &tr : t.triples_)
    ++t.row_offset_[tr.x.index() + 1];
  for (std::size_t x = 0; x < col.color_count(); ++x)
    t.row_offset_[x + 1] += t.row_offset_[x];
  return t;
}

std::span<const StepTable::Triple> StepTable::row(ColorId x) const {
  const auto b = row_offset_.at(x.index()), e = row_offset_.at(x.index() + 1);
  return std::span<const Triple>(triples_).subspan(b, e - b);
}

std::vector<ColorId> StepTable::step(ColorId x, ColorId c) const {
  std::vector<ColorId> out;
  for (const auto &tr : row(x))
    if (tr.c == c)
      out.push_back(tr.result);
  return out;
}

// ColorRelation

ColorRelation::ColorRelation(std::size_t color_count)
    : n_(color_count), words_((color_count + 63) / 64), bits_(n_ * words_, 0) {}

bool ColorRelation::test(ColorId a, ColorId b) const {
  return (bits_[a.index() * words_ + b.index() / 64] >> (b.index() % 64)) & 1u;
}

bool ColorRelation::insert(ColorId a, ColorId b) {
  if (test(a, b))
    return false;
  bits_[a.index() * words_ + b.index() / 64] |= std::uint64_t{1} << (b.index() % 64);
  bits_[b.index() * words_ + a.index() / 64] |= std::uint64_t{1} << (a.index() % 64);
  return true;
}

std::size_t ColorRelation::pair_count() const {
  std::size_t ordered = 0, diagonal = 0;
  for (auto w : bits_)
    ordered += static_cast<std::size_t>(std::popcount(w));
  for (std::uint32_t a = 0; a < n_; ++a)
    diagonal += test(ColorId{a}, ColorId{a});
  return (ordered + diagonal) / 2;
}

std::optional<std::tuple<ColorId, ColorId, ColorId>>
ColorRelation::transitivity_witness() const {
  // Symmetric, so a~b and b~c => a~c amounts to row(b) being a subset of row(a).
  for (std::uint32_t a = 0; a < n_; ++a) {
    const auto *ra = &bits_[a * words_];
    for (std::uint32_t b = 0; b < n_; ++b) {
      if (a == b || !test(ColorId{a}, ColorId{b}))
        continue;
      const auto *rb = &bits_[b * words_];
      for (std::size_t w = 0; w < words_; ++w) {
        const std::uint64_t missing = rb[w] & ~ra[w];
        if (missing)
          return std::tuple{ColorId{a}, ColorId{b},
                            ColorId{static_cast<std::uint32_t>(
                                w * 64 + static_cast<std::size_t>(std::countr_zero(missing)))}};
      }
    }
  }
  return std::nullopt;
}

// ColorPartition

ColorPartition ColorPartition::from_classes(std::size_t color_space,
                                            std::vector<std::vector<ColorId>> classes) {
  ColorPartition p;
  for (auto &k : classes) {
    if (k.empty())
      throw StructuralError("empty class in color partition");
    std::sort(k.begin(), k.end());
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto &l, const auto &r) { return l.front() < r.front(); });
  p.class_of_.assign(color_space, kNone);
  for (std::uint32_t k = 0; k < classes.size(); ++k)
    for (ColorId c : classes[k]) {
      if (c.index() >= color_space)
        throw StructuralError("color id " + std::to_string(c.index()) +
                              " outside the color space");
      if (p.class_of_[c.index()] != kNone)
        throw StructuralError("color id " + std::to_string(c.index()) +
                              " appears in two classes");
      p.class_of_[c.index()] = k;
    }
  p.classes_ = std::move(classes);
  return p;
}

bool ColorPartition::contains(ColorId c) const {
  return c.index() < class_of_.size() && class_of_[c.index()] != kNone;
}

std::size_t ColorPartition::class_of(ColorId c) const {
  if (!contains(c))
    throw StructuralError("color id " + std::to_string(c.index()) +
                          " is not in the partitioned set");
  return class_of_[c.index()];
}

namespace {

ColorPartition partition_from_relation(const ColorRelation &rel,
                                       std::span<const ColorId> universe) {
  DisjointSet ds(rel.color_count());
  for (ColorId a : universe)
    for (ColorId b : universe)
      if (a < b && rel.test(a, b))
        ds.unite(a.value, b.value);
  std::vector<std::vector<ColorId>> classes;
  std::vector<std::uint32_t> slot(rel.color_count(), ColorPartition::kNone);
  for (ColorId c : universe) {
    const auto root = ds.find(c.value);
    if (slot[root] == ColorPartition::kNone) {
      slot[root] = static_cast<std::uint32_t>(classes.size());
      classes.emplace_back();
    }
    classes[slot[root]].push_back(c);
  }
  return ColorPartition::from_classes(rel.color_count(), std::move(classes));
}

std::vector<ColorId> all_colors(const Coloring &col) {
  std::vector<ColorId> out(col.color_count());
  for (std::uint32_t c = 0; c < out.size(); ++c)
    out[c] = ColorId{c};
  return out;
}

} // namespace

StepTable color_step_table(const FinGroupoid &gpd, const Coloring &col) {
  return StepTable::compute(gpd.category(), col);
}

ColorRelation morphism_color_relation(const StepTable &steps) {
  const std::size_t n = steps.color_count();
  ColorRelation rel(n);
  std::deque<std::pair<ColorId, ColorId>> work;
  for (std::uint32_t c = 0; c < n; ++c) {
    rel.insert(ColorId{c}, ColorId{c});
    work.emplace_back(ColorId{c}, ColorId{c});
  }
  while (!work.empty()) {
    const auto [a, b] = work.front();
    work.pop_front();
    const auto ra = steps.row(a);
    const auto rb = steps.row(b);
    // Merge-join the two rows on the extension color c.
    std::size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
      if (ra[i].c < rb[j].c) {
        ++i;
        continue;
      }
      if (rb[j].c < ra[i].c) {
        ++j;
        continue;
      }
      const ColorId c = ra[i].c;
      std::size_t i_end = i, j_end = j;
      while (i_end < ra.size() && ra[i_end].c == c)
        ++i_end;
      while (j_end < rb.size() && rb[j_end].c == c)
        ++j_end;
      for (std::size_t p = i; p < i_end; ++p)
        for (std::size_t q = j; q < j_end; ++q) {
          auto x = ra[p].result, y = rb[q].result;
          if (y < x)
            std::swap(x, y);
          if (rel.insert(x, y))
            work.emplace_back(x, y);
        }
      i = i_end;
      j = j_end;
    }
  }
  return rel;
}

ValidationReport quotient_preconditions(const FinGroupoid &gpd, const Coloring &col) {
  ValidationReport report("quotient-preconditions");
  report.merge(check_colored_category(gpd.category(), col));
  report.merge(check_inverse_compat(gpd, col));
  return report;
}

ColorPartition morphism_color_partition(const FinGroupoid &gpd, const Coloring &col,
                                        CongruenceOptions options) {
  col.check_fits(gpd.category());
  if (options.check_preconditions) {
    auto pre = quotient_preconditions(gpd, col);
    if (!pre.passed())
      throw PreconditionError(
          "refusing to compute the color congruence: the coloring violates the "
          "decomposition axiom or inverse compatibility",
          std::move(pre));
  }
  const auto rel = morphism_color_relation(color_step_table(gpd, col));
  if (options.check_preconditions) {
    if (auto w = rel.transitivity_witness()) {
      const auto &[a, b, c] = *w;
      throw InvariantViolation("color congruence fixpoint is not transitive: " +
                               col.label(a) + "~" + col.label(b) + ", " + col.label(b) +
                               "~" + col.label(c) + " but not " + col.label(a) + "~" +
                               col.label(c));
    }
  }
  return partition_from_relation(rel, all_colors(col));
}

ColorRelation object_color_relation(const FinGroupoid &gpd, const Coloring &col,
                                    const ColorPartition &morph_part, Endpoint endpoint) {
  const auto &cat = gpd.category();
  col.check_fits(cat);
  std::vector<std::vector<ColorId>> cliques(morph_part.class_count());
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    const MorId f{m};
    const ObjId x = endpoint == Endpoint::source ? cat.src(f) : cat.tgt(f);
    cliques[morph_part.class_of(col.color(f))].push_back(col.color(cat.identity(x)));
  }
  ColorRelation rel(col.color_count());
  for (auto &s : cliques) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (ColorId a : s)
      for (ColorId b : s)
        if (a <= b)
          rel.insert(a, b);
  }
  return rel;
}

ColorPartition object_color_partition(const FinGroupoid &gpd, const Coloring &col,
                                      const ColorPartition &morph_part, Endpoint endpoint) {
  const auto rel = object_color_relation(gpd, col, morph_part, endpoint);
  if (auto w = rel.transitivity_witness()) {
    const auto &[a, b, c] = *w;
    throw InvariantViolation("identity-color relation is not transitive: " +
                             col.label(a) + "~" + col.label(b) + ", " + col.label(b) +
                             "~" + col.label(c) + " but not " + col.label(a) + "~" +
                             col.label(c));
  }
  return partition_from_relation(rel, col.identity_colors());
}

} // namespace chromoid
