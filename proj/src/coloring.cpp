#include "chromoid/coloring.hpp"

#include <algorithm>
#include <functional>

namespace chromoid {

Coloring::Coloring(const FinCategory &cat, const std::vector<std::string> &palette,
                   const std::vector<std::size_t> &assignment) {
  if (assignment.size() != cat.morphism_count())
    throw StructuralError("coloring assigns " + std::to_string(assignment.size()) +
                          " morphisms, category has " +
                          std::to_string(cat.morphism_count()));
  {
    std::set<std::string_view> seen;
    for (const auto &label : palette)
      if (!seen.insert(label).second)
        throw StructuralError("duplicate color label '" + label + "'");
  }
  std::vector<bool> used(palette.size(), false);
  for (std::size_t m = 0; m < assignment.size(); ++m) {
    if (assignment[m] >= palette.size())
      throw StructuralError("morphism '" + cat.morphism_name(MorId{m}) +
                            "' has color index " + std::to_string(assignment[m]) +
                            " outside the palette");
    used[assignment[m]] = true;
  }

  // Compact the palette to the image, keeping palette order.
  std::vector<std::uint32_t> remap(palette.size(), 0);
  for (std::size_t p = 0; p < palette.size(); ++p) {
    if (!used[p]) {
      dropped_.push_back(palette[p]);
      continue;
    }
    remap[p] = static_cast<std::uint32_t>(labels_.size());
    lookup_.emplace(palette[p], remap[p]);
    labels_.push_back(palette[p]);
  }
  assignment_.reserve(assignment.size());
  for (std::size_t p : assignment)
    assignment_.push_back(ColorId{remap[p]});

  is_identity_color_.assign(labels_.size(), false);
  for (std::uint32_t x = 0; x < cat.object_count(); ++x)
    is_identity_color_[color(cat.identity(ObjId{x})).index()] = true;
  for (std::uint32_t c = 0; c < labels_.size(); ++c)
    if (is_identity_color_[c])
      identity_colors_.push_back(ColorId{c});

  class_offset_.assign(labels_.size() + 1, 0);
  for (ColorId c : assignment_)
    ++class_offset_[c.index() + 1];
  for (std::size_t c = 0; c < labels_.size(); ++c)
    class_offset_[c + 1] += class_offset_[c];
  class_list_.resize(assignment_.size());
  std::vector<std::size_t> cursor(class_offset_.begin(), class_offset_.end() - 1);
  for (std::uint32_t m = 0; m < assignment_.size(); ++m)
    class_list_[cursor[assignment_[m].index()]++] = MorId{m};
}

std::optional<ColorId> Coloring::find_color(std::string_view label) const {
  auto it = lookup_.find(std::string(label));
  if (it == lookup_.end())
    return std::nullopt;
  return ColorId{it->second};
}

std::span<const MorId> Coloring::morphisms_of(ColorId c) const {
  const auto b = class_offset_.at(c.index()), e = class_offset_.at(c.index() + 1);
  return std::span<const MorId>(class_list_).subspan(b, e - b);
}

void Coloring::check_fits(const FinCategory &cat) const {
  if (morphism_count() != cat.morphism_count())
    throw StructuralError("coloring covers " + std::to_string(morphism_count()) +
                          " morphisms but the category has " +
                          std::to_string(cat.morphism_count()));
}

Coloring coloring_from_labels(const FinCategory &cat,
                              const std::vector<std::string> &labels) {
  std::vector<std::string> palette;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::size_t> assignment;
  assignment.reserve(labels.size());
  for (const auto &label : labels) {
    auto [it, fresh] = seen.try_emplace(label, palette.size());
    if (fresh)
      palette.push_back(label);
    assignment.push_back(it->second);
  }
  return Coloring(cat, palette, assignment);
}

std::uint64_t n_count(const FinCategory &cat, const Coloring &col, MorId h,
                      ColorId a, ColorId b) {
  col.check_fits(cat);
  cat.check_morphism(h);
  if (a.index() >= col.color_count() || b.index() >= col.color_count())
    throw StructuralError("unknown color id");
  std::uint64_t n = 0;
  for (const auto &[f, g] : factorizations(cat, h))
    if (col.color(f) == a && col.color(g) == b)
      ++n;
  return n;
}

// NCountTable

NCountTable NCountTable::compute(const FinCategory &cat, const Coloring &col) {
  col.check_fits(cat);
  NCountTable t;
  const std::size_t n_mor = cat.morphism_count();

  struct Raw {
    std::uint32_t h, a, b;
    auto operator<=>(const Raw &) const = default;
  };
  std::vector<Raw> raw;
  raw.reserve(cat.composable_pair_count());
  cat.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
    if (h)
      raw.push_back({h->value, col.color(f).value, col.color(g).value});
  });
  std::sort(raw.begin(), raw.end());

  t.offset_.assign(n_mor + 1, 0);
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j] == raw[i])
      ++j;
    t.entries_.push_back({ColorId{raw[i].a}, ColorId{raw[i].b}, j - i});
    ++t.offset_[raw[i].h + 1];
    i = j;
  }
  for (std::size_t h = 0; h < n_mor; ++h)
    t.offset_[h + 1] += t.offset_[h];

  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    const auto members = col.morphisms_of(ColorId{c});
    std::map<std::pair<ColorId, ColorId>, std::pair<std::uint64_t, std::size_t>> seen;
    std::set<std::pair<ColorId, ColorId>> bad;
    for (MorId h : members)
      for (const Entry &e : t.row(h)) {
        auto [it, fresh] = seen.try_emplace({e.a, e.b}, e.count, 0);
        ++it->second.second;
        if (!fresh && it->second.first != e.count)
          bad.insert({e.a, e.b});
      }
    for (const auto &[key, value] : seen) {
      const auto k = std::tuple{ColorId{c}, key.first, key.second};
      if (bad.contains(key) || value.second != members.size())
        t.disagreements_.insert(k);
      else
        t.constants_.emplace(k, value.first);
    }
  }
  return t;
}

std::span<const NCountTable::Entry> NCountTable::row(MorId h) const {
  const auto b = offset_.at(h.index()), e = offset_.at(h.index() + 1);
  return std::span<const Entry>(entries_).subspan(b, e - b);
}

std::uint64_t NCountTable::count(MorId h, ColorId a, ColorId b) const {
  const auto r = row(h);
  auto it = std::lower_bound(r.begin(), r.end(), std::pair{a, b},
                             [](const Entry &e, const std::pair<ColorId, ColorId> &k) {
                               return std::pair{e.a, e.b} < k;
                             });
  if (it != r.end() && it->a == a && it->b == b)
    return it->count;
  return 0;
}

std::optional<std::uint64_t> NCountTable::constant(ColorId c, ColorId a,
                                                   ColorId b) const {
  const auto k = std::tuple{c, a, b};
  if (disagreements_.contains(k))
    return std::nullopt;
  auto it = constants_.find(k);
  return it == constants_.end() ? 0 : it->second;
}

// Checks

ValidationReport check_colored_category(const FinCategory &cat, const Coloring &col) {
  return check_colored_category(cat, col, NCountTable::compute(cat, col));
}

ValidationReport check_colored_category(const FinCategory &cat, const Coloring &col,
                                        const NCountTable &table) {
  col.check_fits(cat);
  ValidationReport report("colored-category");
  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    const auto members = col.morphisms_of(ColorId{c});
    // (a, b) -> (number of members factoring that way, first such member)
    std::map<std::pair<ColorId, ColorId>, std::pair<std::size_t, MorId>> have;
    for (MorId h : members)
      for (const auto &e : table.row(h)) {
        auto [it, fresh] = have.try_emplace({e.a, e.b}, 0, h);
        ++it->second.first;
      }
    for (const auto &[key, value] : have) {
      if (value.first == members.size())
        continue;
      for (MorId g : members) {
        if (table.count(g, key.first, key.second) != 0)
          continue;
        report.add("decomposition",
                   {cat.morphism_name(g), col.label(key.first), col.label(key.second),
                    cat.morphism_name(value.second)},
                   "morphism has no factorization with these colors although a "
                   "morphism of the same color does");
      }
    }
  }
  return report;
}

ValidationReport check_inverse_compat(const FinGroupoid &gpd, const Coloring &col) {
  const auto &cat = gpd.category();
  col.check_fits(cat);
  ValidationReport report("inverse-compat");
  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    const auto members = col.morphisms_of(ColorId{c});
    if (members.empty())
      continue;
    const MorId first = members.front();
    const ColorId expected = col.color(gpd.inverse(first));
    for (MorId g : members.subspan(1))
      if (col.color(gpd.inverse(g)) != expected)
        report.add("inverse-color", {cat.morphism_name(first), cat.morphism_name(g)},
                   "same-colored morphisms have differently colored inverses");
  }
  return report;
}

SchemoidCheck check_schemoid(const FinCategory &cat, const Coloring &col) {
  SchemoidCheck out{ValidationReport("schemoid"), NCountTable::compute(cat, col)};
  const auto &table = out.table;
  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    const auto members = col.morphisms_of(ColorId{c});
    std::set<std::pair<ColorId, ColorId>> keys;
    for (MorId h : members)
      for (const auto &e : table.row(h))
        keys.insert({e.a, e.b});
    for (const auto &[a, b] : keys) {
      if (table.constant(ColorId{c}, a, b))
        continue;
      const MorId h = members.front();
      const auto expected = table.count(h, a, b);
      for (MorId k : members.subspan(1)) {
        const auto got = table.count(k, a, b);
        if (got != expected)
          out.report.add("intersection-number",
                         {cat.morphism_name(h), cat.morphism_name(k), col.label(a),
                          col.label(b)},
                         "n(h,a,b)=" + std::to_string(expected) +
                             " but n(k,a,b)=" + std::to_string(got));
      }
    }
  }
  return out;
}

ValidationReport check_move_lemmas(const FinGroupoid &gpd, const Coloring &col) {
  const auto &cat = gpd.category();
  col.check_fits(cat);
  ValidationReport report("move-lemmas");

  // Sorted color sets of the morphisms leaving / entering each object.
  auto colors_at = [&](bool leaving) {
    std::vector<std::vector<ColorId>> sets(cat.object_count());
    for (std::uint32_t x = 0; x < cat.object_count(); ++x) {
      auto &s = sets[x];
      for (MorId t : leaving ? cat.outgoing(ObjId{x}) : cat.incoming(ObjId{x}))
        s.push_back(col.color(t));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return sets;
  };
  const auto out_colors = colors_at(true);
  const auto in_colors = colors_at(false);

  struct Variant {
    const char *law;
    bool at_source;  // which endpoint of f and g
    bool t_leaving;  // t (and q) leave that endpoint, else enter it
  };
  const Variant variants[] = {
      {"move-source-source", true, true},
      {"move-target-target", false, false},
      {"move-source-target", true, false},
      {"move-target-source", false, true},
  };

  for (const auto &v : variants) {
    const auto &sets = v.t_leaving ? out_colors : in_colors;
    auto endpoint = [&](MorId m) { return v.at_source ? cat.src(m) : cat.tgt(m); };
    // Reports the first t at f's endpoint whose color no q at g's endpoint has.
    auto compare = [&](MorId f, MorId g) {
      const auto &have = sets[endpoint(f).index()];
      const auto &other = sets[endpoint(g).index()];
      for (ColorId c : have) {
        if (std::binary_search(other.begin(), other.end(), c))
          continue;
        const auto candidates =
            v.t_leaving ? cat.outgoing(endpoint(f)) : cat.incoming(endpoint(f));
        auto t = std::find_if(candidates.begin(), candidates.end(),
                              [&](MorId m) { return col.color(m) == c; });
        report.add(v.law,
                   {cat.morphism_name(f), cat.morphism_name(g), cat.morphism_name(*t)},
                   "no morphism of color " + col.label(c) +
                       " at the corresponding endpoint of g");
        return;
      }
    };
    for (std::uint32_t c = 0; c < col.color_count(); ++c) {
      const auto members = col.morphisms_of(ColorId{c});
      if (members.empty())
        continue;
      for (MorId g : members.subspan(1)) {
        compare(members.front(), g);
        compare(g, members.front());
      }
    }
  }
  return report;
}

} // namespace chromoid
