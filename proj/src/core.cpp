#include "chromoid/core.hpp"

#include <algorithm>
#include <string>

namespace chromoid {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

} // namespace

// FinCategory

const std::string &FinCategory::object_name(ObjId x) const {
  check_object(x);
  return object_names_[x.index()];
}

const std::string &FinCategory::morphism_name(MorId f) const {
  check_morphism(f);
  return morphism_names_[f.index()];
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = object_lookup_.find(std::string(name));
  if (it == object_lookup_.end())
    return std::nullopt;
  return ObjId{it->second};
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_lookup_.find(std::string(name));
  if (it == morphism_lookup_.end())
    return std::nullopt;
  return MorId{it->second};
}

void FinCategory::check_object(ObjId x) const {
  if (x.index() >= object_count())
    throw StructuralError("unknown object id " + idx(x.index()));
}

void FinCategory::check_morphism(MorId f) const {
  if (f.index() >= morphism_count())
    throw StructuralError("unknown morphism id " + idx(f.index()));
}

std::optional<MorId> FinCategory::compose(MorId f, MorId g) const {
  if (!composable(f, g))
    return std::nullopt;
  const std::uint32_t h = table_[row_offset_[f.index()] + in_pos_[g.index()]];
  if (h == kHole)
    return std::nullopt;
  return MorId{h};
}

std::span<const MorId> FinCategory::outgoing(ObjId x) const {
  const auto b = out_offset_[x.index()], e = out_offset_[x.index() + 1];
  return std::span<const MorId>(out_list_).subspan(b, e - b);
}

std::span<const MorId> FinCategory::incoming(ObjId x) const {
  const auto b = in_offset_[x.index()], e = in_offset_[x.index() + 1];
  return std::span<const MorId>(in_list_).subspan(b, e - b);
}

bool FinCategory::operator==(const FinCategory &other) const {
  return object_names_ == other.object_names_ &&
         morphism_names_ == other.morphism_names_ && src_ == other.src_ &&
         tgt_ == other.tgt_ && identity_ == other.identity_ &&
         table_ == other.table_;
}

// CategoryBuilder

ObjId CategoryBuilder::add_object(std::string name) {
  const auto id = static_cast<std::uint32_t>(objects_.size());
  if (!object_lookup_.emplace(name, id).second)
    throw StructuralError("duplicate object name '" + name + "'");
  objects_.push_back(std::move(name));
  identities_.emplace_back();
  return ObjId{id};
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId src, ObjId tgt) {
  if (src.index() >= objects_.size() || tgt.index() >= objects_.size())
    throw StructuralError("morphism '" + name + "' references unknown object id " +
                          idx(std::max(src.index(), tgt.index())));
  const auto id = static_cast<std::uint32_t>(morphisms_.size());
  if (!morphism_lookup_.emplace(name, id).second)
    throw StructuralError("duplicate morphism name '" + name + "'");
  morphisms_.push_back({std::move(name), src, tgt});
  return MorId{id};
}

void CategoryBuilder::set_identity(ObjId x, MorId id) {
  if (x.index() >= objects_.size())
    throw StructuralError("identity for unknown object id " + idx(x.index()));
  if (id.index() >= morphisms_.size())
    throw StructuralError("identity references unknown morphism id " +
                          idx(id.index()));
  const auto &m = morphisms_[id.index()];
  if (m.src != x || m.tgt != x)
    throw StructuralError("identity '" + m.name + "' is not an endomorphism of '" +
                          objects_[x.index()] + "'");
  identities_[x.index()] = id;
}

void CategoryBuilder::set_composite(MorId f, MorId g, MorId h) {
  for (MorId m : {f, g, h})
    if (m.index() >= morphisms_.size())
      throw StructuralError("composite references unknown morphism id " +
                            idx(m.index()));
  if (morphisms_[f.index()].src != morphisms_[g.index()].tgt)
    throw StructuralError("composite entry on non-composable pair ('" +
                          morphisms_[f.index()].name + "', '" +
                          morphisms_[g.index()].name + "')");
  composites_.push_back({f, g, h});
}

std::optional<ObjId> CategoryBuilder::find_object(std::string_view name) const {
  auto it = object_lookup_.find(std::string(name));
  if (it == object_lookup_.end())
    return std::nullopt;
  return ObjId{it->second};
}

std::optional<MorId> CategoryBuilder::find_morphism(std::string_view name) const {
  auto it = morphism_lookup_.find(std::string(name));
  if (it == morphism_lookup_.end())
    return std::nullopt;
  return MorId{it->second};
}

ObjId CategoryBuilder::src(MorId f) const { return morphisms_.at(f.index()).src; }
ObjId CategoryBuilder::tgt(MorId f) const { return morphisms_.at(f.index()).tgt; }

FinCategory CategoryBuilder::build() && {
  FinCategory cat;
  const std::size_t n_obj = objects_.size();
  const std::size_t n_mor = morphisms_.size();

  for (std::size_t x = 0; x < n_obj; ++x)
    if (!identities_[x])
      throw StructuralError("object '" + objects_[x] + "' has no identity");

  cat.object_names_ = std::move(objects_);
  cat.object_lookup_ = std::move(object_lookup_);
  cat.morphism_lookup_ = std::move(morphism_lookup_);
  cat.morphism_names_.reserve(n_mor);
  cat.src_.reserve(n_mor);
  cat.tgt_.reserve(n_mor);
  for (auto &m : morphisms_) {
    cat.morphism_names_.push_back(std::move(m.name));
    cat.src_.push_back(m.src);
    cat.tgt_.push_back(m.tgt);
  }
  cat.identity_.reserve(n_obj);
  for (const auto &id : identities_)
    cat.identity_.push_back(*id);

  // CSR adjacency; filling in index order keeps every list sorted.
  auto fill = [&](const std::vector<ObjId> &key, std::vector<std::size_t> &offset,
                  std::vector<MorId> &list) {
    offset.assign(n_obj + 1, 0);
    for (ObjId x : key)
      ++offset[x.index() + 1];
    for (std::size_t x = 0; x < n_obj; ++x)
      offset[x + 1] += offset[x];
    list.resize(n_mor);
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::uint32_t m = 0; m < n_mor; ++m)
      list[cursor[key[m].index()]++] = MorId{m};
  };
  fill(cat.src_, cat.out_offset_, cat.out_list_);
  fill(cat.tgt_, cat.in_offset_, cat.in_list_);

  cat.in_pos_.resize(n_mor);
  for (std::size_t x = 0; x < n_obj; ++x)
    for (std::size_t k = cat.in_offset_[x]; k < cat.in_offset_[x + 1]; ++k)
      cat.in_pos_[cat.in_list_[k].index()] =
          static_cast<std::uint32_t>(k - cat.in_offset_[x]);

  cat.row_offset_.resize(n_mor + 1);
  std::size_t total = 0;
  for (std::size_t f = 0; f < n_mor; ++f) {
    cat.row_offset_[f] = total;
    const auto s = cat.src_[f].index();
    total += cat.in_offset_[s + 1] - cat.in_offset_[s];
  }
  cat.row_offset_[n_mor] = total;
  cat.table_.assign(total, FinCategory::kHole);

  for (const auto &[f, g, h] : composites_) {
    auto &slot = cat.table_[cat.row_offset_[f.index()] + cat.in_pos_[g.index()]];
    if (slot != FinCategory::kHole && slot != h.value)
      throw StructuralError("conflicting composites for ('" +
                            cat.morphism_names_[f.index()] + "', '" +
                            cat.morphism_names_[g.index()] + "')");
    slot = h.value;
  }
  return cat;
}

// FinGroupoid

FinGroupoid::FinGroupoid(FinCategory base, std::vector<MorId> inverse)
    : base_(std::move(base)), inverse_(std::move(inverse)) {
  if (inverse_.size() != base_.morphism_count())
    throw StructuralError("inverse table has " + idx(inverse_.size()) +
                          " entries for " + idx(base_.morphism_count()) +
                          " morphisms");
  for (MorId m : inverse_)
    base_.check_morphism(m);
}

std::optional<FinGroupoid> derive_groupoid(const FinCategory &cat) {
  std::vector<MorId> inverse(cat.morphism_count());
  for (std::uint32_t i = 0; i < cat.morphism_count(); ++i) {
    const MorId f{i};
    bool found = false;
    // Candidates g: src(g) == tgt(f) and tgt(g) == src(f).
    for (MorId g : cat.outgoing(cat.tgt(f))) {
      if (cat.tgt(g) != cat.src(f))
        continue;
      if (cat.compose(g, f) == cat.identity(cat.src(f)) &&
          cat.compose(f, g) == cat.identity(cat.tgt(f))) {
        inverse[i] = g;
        found = true;
        break;
      }
    }
    if (!found)
      return std::nullopt;
  }
  return FinGroupoid(cat, std::move(inverse));
}

ValidationReport validate_category(const FinCategory &cat) {
  ValidationReport report("category");
  auto name = [&](MorId m) { return cat.morphism_name(m); };

  for (std::uint32_t x = 0; x < cat.object_count(); ++x) {
    const ObjId obj{x};
    const MorId id = cat.identity(obj);
    if (cat.src(id) != obj || cat.tgt(id) != obj)
      report.add("identity-endpoints", {cat.object_name(obj), name(id)},
                 "identity does not start and end at its object");
  }

  cat.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
    if (!h) {
      report.add("closure", {name(f), name(g)}, "composable pair has no composite");
      return;
    }
    if (cat.src(*h) != cat.src(g) || cat.tgt(*h) != cat.tgt(f))
      report.add("composite-endpoints", {name(f), name(g), name(*h)},
                 "composite does not run from src(g) to tgt(f)");
  });

  for (std::uint32_t i = 0; i < cat.morphism_count(); ++i) {
    const MorId f{i};
    const MorId left = cat.identity(cat.tgt(f));
    const MorId right = cat.identity(cat.src(f));
    if (cat.compose(f, right) != f)
      report.add("right-unit", {name(f), name(right)}, "f after id_src(f) != f");
    if (cat.compose(left, f) != f)
      report.add("left-unit", {name(left), name(f)}, "id_tgt(f) after f != f");
  }

  // (f g) h == f (g h) for every composable chain f, g, h.
  for (std::uint32_t i = 0; i < cat.morphism_count(); ++i) {
    const MorId f{i};
    for (MorId g : cat.incoming(cat.src(f))) {
      const auto fg = cat.compose(f, g);
      for (MorId h : cat.incoming(cat.src(g))) {
        const auto gh = cat.compose(g, h);
        if (!fg || !gh)
          continue; // already reported as a closure violation
        if (cat.compose(*fg, h) != cat.compose(f, *gh))
          report.add("associativity", {name(f), name(g), name(h)},
                     "(f g) h != f (g h)");
      }
    }
  }
  return report;
}

ValidationReport validate_groupoid(const FinGroupoid &gpd) {
  ValidationReport report("groupoid");
  const auto &cat = gpd.category();
  auto name = [&](MorId m) { return cat.morphism_name(m); };
  for (std::uint32_t i = 0; i < cat.morphism_count(); ++i) {
    const MorId f{i};
    const MorId inv = gpd.inverse(f);
    if (cat.compose(inv, f) != cat.identity(cat.src(f)))
      report.add("left-inverse", {name(f), name(inv)},
                 "inverse(f) after f != id_src(f)");
    if (cat.compose(f, inv) != cat.identity(cat.tgt(f)))
      report.add("right-inverse", {name(f), name(inv)},
                 "f after inverse(f) != id_tgt(f)");
    if (gpd.inverse(inv) != f)
      report.add("involution", {name(f), name(inv)},
                 "inverse(inverse(f)) != f");
  }
  return report;
}

std::vector<ComposablePair> factorizations(const FinCategory &cat, MorId h) {
  cat.check_morphism(h);
  std::vector<ComposablePair> out;
  // g runs from src(h); f must run from tgt(g) to tgt(h).
  for (MorId g : cat.outgoing(cat.src(h)))
    for (MorId f : cat.outgoing(cat.tgt(g)))
      if (cat.tgt(f) == cat.tgt(h) && cat.compose(f, g) == h)
        out.push_back({f, g});
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace chromoid
