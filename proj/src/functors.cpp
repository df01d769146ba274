#include "chromoid/functors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace chromoid {

// ColoredCategory

ColoredCategory::ColoredCategory(FinCategory cat, Coloring col)
    : cat_(std::make_shared<const FinCategory>(std::move(cat))),
      col_(std::make_shared<const Coloring>(std::move(col))) {
  col_->check_fits(*cat_);
}

ColoredCategory::ColoredCategory(FinGroupoid gpd, Coloring col)
    : gpd_(std::make_shared<const FinGroupoid>(std::move(gpd))),
      cat_(gpd_, &gpd_->category()),
      col_(std::make_shared<const Coloring>(std::move(col))) {
  col_->check_fits(*cat_);
}

bool ColoredCategory::is_discrete() const {
  const auto &col = coloring();
  if (col.color_count() != col.morphism_count())
    return false;
  for (std::uint32_t m = 0; m < col.morphism_count(); ++m)
    if (col.color(MorId{m}).value != m)
      return false;
  return true;
}

bool ColoredCategory::operator==(const ColoredCategory &other) const {
  if (!cat_ || !other.cat_)
    return !cat_ && !other.cat_;
  if (cat_ == other.cat_ && col_ == other.col_)
    return true;
  return *cat_ == *other.cat_ && *col_ == *other.col_;
}

// Functor laws

namespace {

void check_shapes(const ColoredFunctor &F) {
  const auto &s = F.source.category();
  const auto &t = F.target.category();
  if (F.object_map.size() != s.object_count())
    throw StructuralError("object map has " + std::to_string(F.object_map.size()) +
                          " entries for " + std::to_string(s.object_count()) + " objects");
  if (F.morphism_map.size() != s.morphism_count())
    throw StructuralError("morphism map has " + std::to_string(F.morphism_map.size()) +
                          " entries for " + std::to_string(s.morphism_count()) +
                          " morphisms");
  if (F.color_map.size() != F.source.coloring().color_count())
    throw StructuralError("color map has " + std::to_string(F.color_map.size()) +
                          " entries for " +
                          std::to_string(F.source.coloring().color_count()) + " colors");
  for (ObjId y : F.object_map)
    t.check_object(y);
  for (MorId m : F.morphism_map)
    t.check_morphism(m);
  for (ColorId c : F.color_map)
    if (c.index() >= F.target.coloring().color_count())
      throw StructuralError("color map references unknown target color id " +
                            std::to_string(c.index()));
}

} // namespace

ValidationReport check_colored_functor(const ColoredFunctor &F) {
  check_shapes(F);
  ValidationReport report("colored-functor");
  const auto &s = F.source.category();
  const auto &t = F.target.category();
  const auto &sl = F.source.coloring();
  const auto &tl = F.target.coloring();
  for (std::uint32_t m = 0; m < s.morphism_count(); ++m) {
    const MorId f{m};
    const MorId Ff = F(f);
    if (t.src(Ff) != F(s.src(f)))
      report.add("preserves-source", {s.morphism_name(f), t.morphism_name(Ff)},
                 "src(F f) != F(src f)");
    if (t.tgt(Ff) != F(s.tgt(f)))
      report.add("preserves-target", {s.morphism_name(f), t.morphism_name(Ff)},
                 "tgt(F f) != F(tgt f)");
    if (F(sl.color(f)) != tl.color(Ff))
      report.add("color-law", {s.morphism_name(f), t.morphism_name(Ff)},
                 "gamma(l(f)) != l'(F f)");
  }
  for (std::uint32_t x = 0; x < s.object_count(); ++x) {
    const ObjId obj{x};
    if (F(s.identity(obj)) != t.identity(F(obj)))
      report.add("preserves-identity", {s.object_name(obj)}, "F(id_x) != id_F(x)");
  }
  s.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
    if (!h)
      return;
    if (t.compose(F(f), F(g)) != F(*h))
      report.add("preserves-composition", {s.morphism_name(f), s.morphism_name(g)},
                 "F(f g) != F(f) F(g)");
  });
  return report;
}

ColoredFunctor identity_functor(const ColoredCategory &c) {
  ColoredFunctor F{c, c, {}, {}, {}};
  for (std::uint32_t x = 0; x < c.category().object_count(); ++x)
    F.object_map.push_back(ObjId{x});
  for (std::uint32_t m = 0; m < c.category().morphism_count(); ++m)
    F.morphism_map.push_back(MorId{m});
  for (std::uint32_t k = 0; k < c.coloring().color_count(); ++k)
    F.color_map.push_back(ColorId{k});
  return F;
}

ColoredFunctor compose_colored_functors(const ColoredFunctor &second,
                                        const ColoredFunctor &first) {
  if (!(first.target == second.source))
    throw StructuralError("cannot compose functors: the target of the first is not "
                          "the source of the second");
  check_shapes(first);
  check_shapes(second);
  ColoredFunctor out{first.source, second.target, {}, {}, {}};
  for (ObjId y : first.object_map)
    out.object_map.push_back(second(y));
  for (MorId m : first.morphism_map)
    out.morphism_map.push_back(second(m));
  for (ColorId c : first.color_map)
    out.color_map.push_back(second(c));
  return out;
}

ColoredCategory quotient_category(const QuotientResult &qr) {
  return ColoredCategory(qr.u, quotient_coloring(qr));
}

ColoredFunctor universal_functor(const ColoredCategory &source, const QuotientResult &qr) {
  if (source.category().object_count() != qr.pi_objects.size() ||
      source.category().morphism_count() != qr.pi_morphisms.size() ||
      source.coloring().color_count() != qr.s1.size())
    throw StructuralError("quotient was not computed from this colored category");
  ColoredFunctor varpi{source, quotient_category(qr), qr.pi_objects, qr.pi_morphisms, {}};
  // Quotient colors coincide with quotient morphisms.
  for (MorId k : qr.s1)
    varpi.color_map.push_back(ColorId{k.value});
  return varpi;
}

ColoredFunctor factor_through_quotient(const ColoredFunctor &F,
                                       const ColoredFunctor &projection,
                                       const QuotientResult &qr) {
  if (!(F.source == projection.source))
    throw StructuralError("functor and projection have different sources");
  auto report = check_colored_functor(F);
  if (!report.passed())
    throw PreconditionError("not a morphism-colored functor", std::move(report));
  if (!F.target.is_discrete())
    throw StructuralError("factorization needs a discrete target coloring");

  const auto &s = F.source.category();
  const auto &sl = F.source.coloring();
  const auto &u = projection.target.category();
  constexpr std::uint32_t kUnset = 0xffffffffu;

  std::vector<std::uint32_t> obj(u.object_count(), kUnset);
  std::vector<std::uint32_t> mor(u.morphism_count(), kUnset);
  std::vector<std::uint32_t> color(u.morphism_count(), kUnset);
  auto agree = [](std::uint32_t &slot, std::uint32_t value, const std::string &what) {
    if (slot == kUnset)
      slot = value;
    else if (slot != value)
      throw InvariantViolation("representatives disagree: " + what);
  };
  for (std::uint32_t x = 0; x < s.object_count(); ++x)
    agree(obj[qr.pi_objects[x].index()], F.object_map[x].value,
          "object '" + s.object_name(ObjId{x}) + "'");
  for (std::uint32_t m = 0; m < s.morphism_count(); ++m)
    agree(mor[qr.pi_morphisms[m].index()], F.morphism_map[m].value,
          "morphism '" + s.morphism_name(MorId{m}) + "'");
  for (std::uint32_t c = 0; c < sl.color_count(); ++c)
    agree(color[qr.s1[c].index()], F.color_map[c].value,
          "color '" + sl.label(ColorId{c}) + "'");

  ColoredFunctor factor{projection.target, F.target, {}, {}, {}};
  for (auto v : obj)
    factor.object_map.push_back(ObjId{v});
  for (auto v : mor)
    factor.morphism_map.push_back(MorId{v});
  for (auto v : color)
    factor.color_map.push_back(ColorId{v});

  if (!(compose_colored_functors(factor, projection) == F))
    throw InvariantViolation("factor composed with the projection differs from F");
  return factor;
}

Factorization factor_through_quotient(const ColoredFunctor &F, QuotientOptions options) {
  const FinGroupoid *gpd = F.source.groupoid();
  if (!gpd)
    throw StructuralError("factorization needs a groupoid source");
  auto qr = build_quotient(*gpd, F.source.coloring(), options);
  auto projection = universal_functor(F.source, qr);
  auto factor = factor_through_quotient(F, projection, qr);
  return Factorization{std::move(qr), std::move(projection), std::move(factor)};
}

InducedFunctor induced_functor(const ColoredFunctor &F, QuotientOptions options) {
  const FinGroupoid *sg = F.source.groupoid();
  const FinGroupoid *tg = F.target.groupoid();
  if (!sg || !tg)
    throw StructuralError("induced functor needs groupoid source and target");
  auto report = check_colored_functor(F);
  if (!report.passed())
    throw PreconditionError("not a morphism-colored functor", std::move(report));

  const auto &sl = F.source.coloring();
  const auto &tl = F.target.coloring();
  InducedFunctor out{build_quotient(*sg, sl, options), build_quotient(*tg, tl, options), {}};
  const auto &qs = out.source_quotient;
  const auto &qt = out.target_quotient;

  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> obj(qs.object_classes.class_count(), kUnset);
  std::vector<ColorId> obj_witness(obj.size());
  for (ColorId a : sl.identity_colors()) {
    const auto o = qs.s0[a.index()]->index();
    const ColorId image = F(a);
    if (!qt.s0[image.index()])
      throw ClassConstancyError("gamma sends identity color '" + sl.label(a) +
                                    "' to non-identity color '" + tl.label(image) + "'",
                                sl.label(a), tl.label(image));
    const auto target = qt.s0[image.index()]->value;
    if (obj[o] == kUnset) {
      obj[o] = target;
      obj_witness[o] = a;
    } else if (obj[o] != target) {
      throw ClassConstancyError("identity colors '" + sl.label(obj_witness[o]) + "' and '" +
                                    sl.label(a) +
                                    "' share a class but map to different classes",
                                sl.label(obj_witness[o]), sl.label(a));
    }
  }
  std::vector<std::uint32_t> mor(qs.morphism_classes.class_count(), kUnset);
  std::vector<ColorId> mor_witness(mor.size());
  for (std::uint32_t b = 0; b < sl.color_count(); ++b) {
    const auto k = qs.s1[b].index();
    const auto target = qt.s1[F(ColorId{b}).index()].value;
    if (mor[k] == kUnset) {
      mor[k] = target;
      mor_witness[k] = ColorId{b};
    } else if (mor[k] != target) {
      throw ClassConstancyError("colors '" + sl.label(mor_witness[k]) + "' and '" +
                                    sl.label(ColorId{b}) +
                                    "' share a class but map to different classes",
                                sl.label(mor_witness[k]), sl.label(ColorId{b}));
    }
  }

  out.functor = ColoredFunctor{quotient_category(qs), quotient_category(qt), {}, {}, {}};
  for (auto v : obj)
    out.functor.object_map.push_back(ObjId{v});
  for (auto v : mor) {
    out.functor.morphism_map.push_back(MorId{v});
    out.functor.color_map.push_back(ColorId{v});
  }
  auto laws = check_colored_functor(out.functor);
  if (!laws.passed())
    throw InvariantViolation("induced map between quotients is not a functor (law '" +
                             laws.violated_laws().front() + "')");
  return out;
}

// Enumeration of colored functors to discrete targets

void for_each_colored_functor_to_discrete(
    const ColoredCategory &source, const ColoredCategory &target,
    const std::function<void(const ColoredFunctor &)> &visit, double max_candidates) {
  if (!target.is_discrete())
    throw StructuralError("enumeration needs a discrete target coloring");
  const auto &s = source.category();
  const auto &t = target.category();
  const auto &sl = source.coloring();
  const std::size_t k = sl.color_count();
  const double space = std::pow(static_cast<double>(t.morphism_count()), static_cast<double>(k));
  if (space > max_candidates)
    throw GuardExceeded("colored functor enumeration space " + std::to_string(space) +
                        " exceeds " + std::to_string(max_candidates));

  // With a discrete target F = gamma o l, so every law is a constraint on
  // gamma. Each constraint is checked once its largest color is assigned.
  enum class Kind { compose, source, target, identity };
  struct Constraint {
    Kind kind;
    ColorId a, b, r; // compose: gamma(r) = gamma(a) gamma(b); source/target: a, b
  };
  std::vector<std::vector<Constraint>> by_max(k);
  {
    std::vector<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>> raw;
    s.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
      if (h)
        raw.emplace_back(0, sl.color(f).value, sl.color(g).value, sl.color(*h).value);
    });
    for (std::uint32_t m = 0; m < s.morphism_count(); ++m) {
      const MorId f{m};
      raw.emplace_back(1, sl.color(f).value, sl.color(s.identity(s.src(f))).value, 0);
      raw.emplace_back(2, sl.color(f).value, sl.color(s.identity(s.tgt(f))).value, 0);
    }
    for (std::uint32_t x = 0; x < s.object_count(); ++x)
      raw.emplace_back(3, sl.color(s.identity(ObjId{x})).value, 0, 0);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (const auto &[kind, a, b, r] : raw) {
      const auto top = kind == 0 ? std::max({a, b, r}) : kind == 3 ? a : std::max(a, b);
      by_max[top].push_back({static_cast<Kind>(kind), ColorId{a}, ColorId{b}, ColorId{r}});
    }
  }

  std::vector<MorId> gamma(k);
  auto holds = [&](const Constraint &c) {
    const MorId ga = gamma[c.a.index()];
    switch (c.kind) {
    case Kind::compose:
      return t.compose(ga, gamma[c.b.index()]) == gamma[c.r.index()];
    case Kind::source: // src(F f) = src(F id_src f)
      return t.src(ga) == t.src(gamma[c.b.index()]);
    case Kind::target:
      return t.tgt(ga) == t.src(gamma[c.b.index()]);
    case Kind::identity:
      return t.is_identity(ga);
    }
    return false;
  };

  const auto &tl = target.coloring();
  std::function<void(std::size_t)> search = [&](std::size_t c) {
    if (c == k) {
      ColoredFunctor F{source, target, {}, {}, {}};
      for (std::uint32_t x = 0; x < s.object_count(); ++x)
        F.object_map.push_back(t.src(gamma[sl.color(s.identity(ObjId{x})).index()]));
      for (std::uint32_t m = 0; m < s.morphism_count(); ++m)
        F.morphism_map.push_back(gamma[sl.color(MorId{m}).index()]);
      for (MorId g : gamma)
        F.color_map.push_back(tl.color(g));
      visit(F);
      return;
    }
    for (std::uint32_t m = 0; m < t.morphism_count(); ++m) {
      gamma[c] = MorId{m};
      if (std::all_of(by_max[c].begin(), by_max[c].end(), holds))
        search(c + 1);
    }
  };
  search(0);
}

std::size_t count_colored_functors_to_discrete(const ColoredCategory &source,
                                               const ColoredCategory &target) {
  std::size_t n = 0;
  for_each_colored_functor_to_discrete(source, target, [&](const ColoredFunctor &) { ++n; });
  return n;
}

// Groupoid isomorphism

namespace {

struct Invariants {
  std::vector<std::tuple<bool, bool, std::size_t, std::size_t, std::size_t>> morphism;
};

Invariants invariants_of(const FinGroupoid &gpd) {
  const auto &cat = gpd.category();
  const std::size_t n_obj = cat.object_count();
  // Component sizes via union-find over morphism endpoints.
  std::vector<std::size_t> parent(n_obj);
  for (std::size_t x = 0; x < n_obj; ++x)
    parent[x] = x;
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    const auto a = find(cat.src(MorId{m}).index()), b = find(cat.tgt(MorId{m}).index());
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> comp_size(n_obj, 0);
  for (std::size_t x = 0; x < n_obj; ++x)
    ++comp_size[find(x)];
  std::vector<std::size_t> loops(n_obj, 0);
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    if (cat.src(MorId{m}) == cat.tgt(MorId{m}))
      ++loops[cat.src(MorId{m}).index()];

  Invariants inv;
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    const MorId f{m};
    const bool loop = cat.src(f) == cat.tgt(f);
    std::size_t order = 0;
    if (loop) {
      const MorId id = cat.identity(cat.src(f));
      MorId p = f;
      order = 1;
      while (p != id && order <= cat.morphism_count()) {
        const auto next = cat.compose(f, p);
        if (!next)
          break;
        p = *next;
        ++order;
      }
    }
    inv.morphism.emplace_back(cat.is_identity(f), loop, order,
                              loops[cat.src(f).index()],
                              comp_size[find(cat.src(f).index())]);
  }
  return inv;
}

class IsoSearch {
public:
  IsoSearch(const FinGroupoid &a, const FinGroupoid &b)
      : a_(a), b_(b), ca_(a.category()), cb_(b.category()), ia_(invariants_of(a)),
        ib_(invariants_of(b)), phi_(ca_.morphism_count(), kUnset),
        used_(cb_.morphism_count(), false), obj_(ca_.object_count(), kUnset),
        obj_used_(cb_.object_count(), false) {}

  std::optional<GroupoidIsomorphism> run() {
    if (ca_.object_count() != cb_.object_count() ||
        ca_.morphism_count() != cb_.morphism_count())
      return std::nullopt;
    auto sa = ia_.morphism, sb = ib_.morphism;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return std::nullopt;
    if (!search())
      return std::nullopt;
    GroupoidIsomorphism iso;
    for (auto y : obj_)
      iso.object_map.push_back(ObjId{y});
    for (auto m : phi_)
      iso.morphism_map.push_back(MorId{m});
    return iso;
  }

private:
  static constexpr std::uint32_t kUnset = 0xffffffffu;

  struct TrailEntry {
    bool is_object;
    std::uint32_t index;
  };

  bool map_object(ObjId x, ObjId y) {
    auto &slot = obj_[x.index()];
    if (slot != kUnset)
      return slot == y.value;
    if (obj_used_[y.index()])
      return false;
    slot = y.value;
    obj_used_[y.index()] = true;
    trail_.push_back({true, x.value});
    return true;
  }

  bool assign(MorId f0, MorId g0) {
    std::vector<std::pair<MorId, MorId>> queue{{f0, g0}};
    while (!queue.empty()) {
      const auto [f, g] = queue.back();
      queue.pop_back();
      if (phi_[f.index()] != kUnset) {
        if (phi_[f.index()] != g.value)
          return false;
        continue;
      }
      if (used_[g.index()] || ia_.morphism[f.index()] != ib_.morphism[g.index()])
        return false;
      if (!map_object(ca_.src(f), cb_.src(g)) || !map_object(ca_.tgt(f), cb_.tgt(g)))
        return false;
      phi_[f.index()] = g.value;
      used_[g.index()] = true;
      trail_.push_back({false, f.value});

      queue.emplace_back(a_.inverse(f), b_.inverse(g));
      for (MorId h : ca_.incoming(ca_.src(f))) { // f after h
        if (phi_[h.index()] == kUnset)
          continue;
        const auto fa = ca_.compose(f, h);
        const auto fb = cb_.compose(g, MorId{phi_[h.index()]});
        if (!fa || !fb)
          return false;
        queue.emplace_back(*fa, *fb);
      }
      for (MorId h : ca_.outgoing(ca_.tgt(f))) { // h after f
        if (phi_[h.index()] == kUnset)
          continue;
        const auto fa = ca_.compose(h, f);
        const auto fb = cb_.compose(MorId{phi_[h.index()]}, g);
        if (!fa || !fb)
          return false;
        queue.emplace_back(*fa, *fb);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto e = trail_.back();
      trail_.pop_back();
      if (e.is_object) {
        obj_used_[obj_[e.index]] = false;
        obj_[e.index] = kUnset;
      } else {
        used_[phi_[e.index]] = false;
        phi_[e.index] = kUnset;
      }
    }
  }

  bool search() {
    auto next = std::find(phi_.begin(), phi_.end(), kUnset);
    if (next == phi_.end())
      return true;
    const MorId f{static_cast<std::uint32_t>(next - phi_.begin())};
    for (std::uint32_t m = 0; m < cb_.morphism_count(); ++m) {
      const MorId g{m};
      if (used_[m] || ia_.morphism[f.index()] != ib_.morphism[m])
        continue;
      const auto mark = trail_.size();
      if (assign(f, g) && search())
        return true;
      undo(mark);
    }
    return false;
  }

  const FinGroupoid &a_;
  const FinGroupoid &b_;
  const FinCategory &ca_;
  const FinCategory &cb_;
  Invariants ia_, ib_;
  std::vector<std::uint32_t> phi_;
  std::vector<bool> used_;
  std::vector<std::uint32_t> obj_;
  std::vector<bool> obj_used_;
  std::vector<TrailEntry> trail_;
};

} // namespace

std::optional<GroupoidIsomorphism> groupoid_isomorphic(const FinGroupoid &a,
                                                       const FinGroupoid &b,
                                                       IsomorphismGuard guard) {
  for (const FinGroupoid *g : {&a, &b}) {
    const auto &cat = g->category();
    if (cat.object_count() > guard.max_objects || cat.morphism_count() > guard.max_morphisms)
      throw GuardExceeded("isomorphism search limited to " +
                          std::to_string(guard.max_objects) + " objects and " +
                          std::to_string(guard.max_morphisms) + " morphisms, got " +
                          std::to_string(cat.object_count()) + " and " +
                          std::to_string(cat.morphism_count()));
  }
  return IsoSearch(a, b).run();
}

} // namespace chromoid
