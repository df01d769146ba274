#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace chromoid::testing {

std::vector<std::vector<std::set<std::size_t>>> raw_step_sets(const FinCategory &cat,
                                                              const Coloring &col) {
  const std::size_t k = col.color_count();
  std::vector<std::vector<std::set<std::size_t>>> step(k, std::vector<std::set<std::size_t>>(k));
  for (std::uint32_t f = 0; f < cat.morphism_count(); ++f)
    for (std::uint32_t g = 0; g < cat.morphism_count(); ++g) {
      if (cat.src(MorId{f}) != cat.tgt(MorId{g}))
        continue;
      const auto h = cat.compose(MorId{f}, MorId{g});
      step[col.color(MorId{f}).index()][col.color(MorId{g}).index()].insert(
          col.color(h.value()).index());
    }
  return step;
}

ColorPartition partition_from_pairs(std::size_t n,
                                    const std::set<std::pair<std::size_t, std::size_t>> &pairs) {
  // Repeated relabelling until stable; quadratic but obviously correct.
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : pairs) {
      const auto lo = std::min(label[a], label[b]);
      const auto hi = std::max(label[a], label[b]);
      if (lo == hi)
        continue;
      for (auto &l : label)
        if (l == hi)
          l = lo;
      changed = true;
    }
  }
  std::map<std::size_t, std::vector<ColorId>> classes;
  for (std::size_t c = 0; c < n; ++c)
    classes[label[c]].push_back(ColorId{c});
  std::vector<std::vector<ColorId>> out;
  for (auto &[_, members] : classes)
    out.push_back(std::move(members));
  return ColorPartition::from_classes(n, std::move(out));
}

ColorPartition morphism_color_partition_oracle(const FinGroupoid &gpd, const Coloring &col) {
  const std::size_t k = col.color_count();
  if (k > 20)
    throw GuardExceeded("value-set oracle refuses " + std::to_string(k) + " colors (limit 20)");
  const auto step = raw_step_sets(gpd.category(), col);

  std::set<std::uint32_t> seen;
  std::deque<std::uint32_t> queue;
  for (std::size_t c = 0; c < k; ++c) {
    seen.insert(1u << c);
    queue.push_back(1u << c);
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b)
        if ((v >> a & 1) && (v >> b & 1))
          pairs.emplace(a, b);
    for (std::size_t c = 0; c < k; ++c) {
      std::uint32_t next = 0;
      for (std::size_t x = 0; x < k; ++x)
        if (v >> x & 1)
          for (auto r : step[x][c])
            next |= 1u << r;
      if (next && seen.insert(next).second)
        queue.push_back(next);
    }
  }
  return partition_from_pairs(k, pairs);
}

std::set<std::pair<std::size_t, std::size_t>>
chain_relation(const FinCategory &cat, const Coloring &col, std::size_t max_length) {
  const std::size_t k = col.color_count();
  std::vector<std::vector<std::uint32_t>> by_color(k);
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    by_color[col.color(MorId{m}).index()].push_back(m);

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  auto record = [&](const std::vector<std::uint32_t> &set) {
    std::set<std::size_t> colors;
    for (auto m : set)
      colors.insert(col.color(MorId{m}).index());
    for (auto a : colors)
      for (auto b : colors)
        if (a <= b)
          pairs.emplace(a, b);
  };

  // Layer L holds the distinct composite sets of all chains of length L.
  std::set<std::vector<std::uint32_t>> layer;
  for (auto &members : by_color)
    layer.insert(members);
  for (std::size_t length = 1; length <= max_length && !layer.empty(); ++length) {
    for (const auto &set : layer)
      record(set);
    if (length == max_length)
      break;
    std::set<std::vector<std::uint32_t>> next;
    for (const auto &set : layer)
      for (std::size_t c = 0; c < k; ++c) {
        std::set<std::uint32_t> composites;
        for (auto f : set)
          for (auto g : by_color[c])
            if (cat.src(MorId{f}) == cat.tgt(MorId{g}))
              composites.insert(cat.compose(MorId{f}, MorId{g}).value().value);
        if (!composites.empty())
          next.emplace(composites.begin(), composites.end());
      }
    layer = std::move(next);
  }
  return pairs;
}

ColorPartition object_color_partition_oracle(const FinGroupoid &gpd, const Coloring &col,
                                             const ColorPartition &morphisms) {
  const auto &cat = gpd.category();
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::uint32_t f = 0; f < cat.morphism_count(); ++f)
    for (std::uint32_t g = 0; g < cat.morphism_count(); ++g)
      if (morphisms.class_of(col.color(MorId{f})) == morphisms.class_of(col.color(MorId{g})))
        pairs.emplace(col.color(cat.identity(cat.src(MorId{f}))).index(),
                      col.color(cat.identity(cat.src(MorId{g}))).index());
  const auto full = partition_from_pairs(col.color_count(), pairs);
  // Restrict to identity colors.
  std::vector<std::vector<ColorId>> classes;
  for (const auto &members : full.classes()) {
    std::vector<ColorId> kept;
    for (ColorId c : members)
      if (col.is_identity_color(c))
        kept.push_back(c);
    if (!kept.empty())
      classes.push_back(std::move(kept));
  }
  return ColorPartition::from_classes(col.color_count(), std::move(classes));
}

std::size_t count_functors_to_discrete_brute(const ColoredCategory &source,
                                             const ColoredCategory &target) {
  const auto &s = source.category();
  const auto &t = target.category();
  const auto &sl = source.coloring();
  const std::size_t k = sl.color_count();
  const std::size_t m = t.morphism_count();
  std::vector<std::size_t> gamma(k, 0);
  std::size_t count = 0;
  while (true) {
    auto F = [&](MorId f) { return MorId{gamma[sl.color(f).index()]}; };
    bool ok = true;
    // Endpoints are well defined: every morphism at an object agrees on it.
    std::vector<std::optional<ObjId>> obj(s.object_count());
    auto assign = [&](ObjId x, ObjId y) {
      if (!obj[x.index()])
        obj[x.index()] = y;
      else if (*obj[x.index()] != y)
        ok = false;
    };
    for (std::uint32_t f = 0; f < s.morphism_count() && ok; ++f) {
      assign(s.src(MorId{f}), t.src(F(MorId{f})));
      assign(s.tgt(MorId{f}), t.tgt(F(MorId{f})));
    }
    for (std::uint32_t x = 0; x < s.object_count() && ok; ++x)
      ok = F(s.identity(ObjId{x})) == t.identity(*obj[x]);
    for (std::uint32_t f = 0; f < s.morphism_count() && ok; ++f)
      for (std::uint32_t g = 0; g < s.morphism_count() && ok; ++g)
        if (s.src(MorId{f}) == s.tgt(MorId{g}))
          ok = t.compose(F(MorId{f}), F(MorId{g})) == F(*s.compose(MorId{f}, MorId{g}));
    if (ok)
      ++count;
    std::size_t i = 0;
    while (i < k && ++gamma[i] == m)
      gamma[i++] = 0;
    if (i == k)
      break;
  }
  return count;
}

} // namespace chromoid::testing
