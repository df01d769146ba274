#include "chromoid/quotient.hpp"

#include <algorithm>
#include <sstream>

namespace chromoid {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

std::string bracket(const std::string &label) { return "[" + label + "]"; }

} // namespace

QuotientResult build_quotient(const FinGroupoid &gpd, const Coloring &col,
                              QuotientOptions options) {
  const auto &cat = gpd.category();
  QuotientResult qr;
  qr.morphism_classes = morphism_color_partition(
      gpd, col, CongruenceOptions{options.check_preconditions});
  qr.object_classes = object_color_partition(gpd, col, qr.morphism_classes);
  const auto &mp = qr.morphism_classes;
  const auto &op = qr.object_classes;

  qr.s1.resize(col.color_count());
  qr.s0.resize(col.color_count());
  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    qr.s1[c] = MorId{mp.class_of(ColorId{c})};
    if (op.contains(ColorId{c}))
      qr.s0[c] = ObjId{op.class_of(ColorId{c})};
  }
  qr.pi_objects.resize(cat.object_count());
  for (std::uint32_t x = 0; x < cat.object_count(); ++x)
    qr.pi_objects[x] = *qr.s0[col.color(cat.identity(ObjId{x})).index()];
  qr.pi_morphisms.resize(cat.morphism_count());
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    qr.pi_morphisms[m] = qr.s1[col.color(MorId{m}).index()];

  const std::size_t n_obj = op.class_count();
  const std::size_t n_mor = mp.class_count();

  // Endpoints, representatives and inverses of each class, asserted constant.
  std::vector<std::uint32_t> q_src(n_mor, kUnset), q_tgt(n_mor, kUnset),
      q_inv(n_mor, kUnset), rep(n_mor, kUnset), q_id(n_obj, kUnset);
  auto assert_same = [&](std::uint32_t &slot, std::uint32_t value, const char *what,
                         MorId witness) {
    if (slot == kUnset)
      slot = value;
    else if (slot != value)
      throw InvariantViolation(std::string("quotient ") + what +
                               " is not well defined at morphism '" +
                               cat.morphism_name(witness) + "'");
  };
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    const MorId f{m};
    const auto k = qr.pi_morphisms[m].index();
    if (rep[k] == kUnset)
      rep[k] = m;
    assert_same(q_src[k], qr.pi_objects[cat.src(f).index()].value, "source", f);
    assert_same(q_tgt[k], qr.pi_objects[cat.tgt(f).index()].value, "target", f);
    assert_same(q_inv[k], qr.pi_morphisms[gpd.inverse(f).index()].value, "inverse", f);
  }
  for (std::uint32_t x = 0; x < cat.object_count(); ++x) {
    const MorId id = cat.identity(ObjId{x});
    assert_same(q_id[qr.pi_objects[x].index()], qr.pi_morphisms[id.index()].value,
                "identity", id);
  }

  CategoryBuilder b;
  for (std::size_t o = 0; o < n_obj; ++o)
    b.add_object(bracket(col.label(op.representative(o))));
  for (std::size_t k = 0; k < n_mor; ++k)
    b.add_morphism(bracket(col.label(mp.representative(k))), ObjId{q_src[k]},
                   ObjId{q_tgt[k]});
  for (std::size_t o = 0; o < n_obj; ++o)
    b.set_identity(ObjId{o}, MorId{q_id[o]});

  // Classes grouped by target, to enumerate composable class pairs.
  std::vector<std::vector<std::uint32_t>> classes_into(n_obj);
  for (std::uint32_t k = 0; k < n_mor; ++k)
    classes_into[q_tgt[k]].push_back(k);

  std::vector<std::uint32_t> first_g(n_mor, kUnset);
  for (std::uint32_t k1 = 0; k1 < n_mor; ++k1) {
    const MorId f{rep[k1]};
    std::fill(first_g.begin(), first_g.end(), kUnset);
    for (MorId g : cat.incoming(cat.src(f))) {
      auto &slot = first_g[qr.pi_morphisms[g.index()].index()];
      if (slot == kUnset)
        slot = g.value;
    }
    for (std::uint32_t k2 : classes_into[q_src[k1]]) {
      if (first_g[k2] == kUnset)
        throw InvariantViolation("no composable representative pair for classes " +
                                 bracket(col.label(mp.representative(k1))) + " and " +
                                 bracket(col.label(mp.representative(k2))));
      const auto h = cat.compose(f, MorId{first_g[k2]});
      if (!h)
        throw InvariantViolation("composition table has a hole at ('" +
                                 cat.morphism_name(f) + "', '" +
                                 cat.morphism_name(MorId{first_g[k2]}) + "')");
      b.set_composite(MorId{k1}, MorId{k2}, qr.pi_morphisms[h->index()]);
    }
  }

  std::vector<MorId> inverse(n_mor);
  for (std::size_t k = 0; k < n_mor; ++k)
    inverse[k] = MorId{q_inv[k]};
  qr.u = FinGroupoid(std::move(b).build(), std::move(inverse));
  return qr;
}

Coloring quotient_coloring(const QuotientResult &qr) {
  const auto &cat = qr.u.category();
  std::vector<std::string> palette;
  std::vector<std::size_t> assignment;
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    palette.push_back(cat.morphism_name(MorId{m}));
    assignment.push_back(m);
  }
  return Coloring(cat, palette, assignment);
}

std::string GroupTable::classification() const {
  if (cyclic_order)
    return "cyclic(" + std::to_string(*cyclic_order) + ")";
  std::ostringstream os;
  os << "non-cyclic(order " << elements.size() << "; element orders";
  for (const auto &[order, count] : order_profile())
    os << ' ' << order << 'x' << count;
  os << ')';
  return os.str();
}

std::map<std::size_t, std::size_t> GroupTable::order_profile() const {
  std::map<std::size_t, std::size_t> profile;
  for (auto o : orders)
    ++profile[o];
  return profile;
}

GroupTable group_table(const FinGroupoid &gpd) {
  const auto &cat = gpd.category();
  if (cat.object_count() != 1)
    throw StructuralError("group table needs a one-object groupoid, got " +
                          std::to_string(cat.object_count()) + " objects");
  const std::size_t k = cat.morphism_count();
  GroupTable t;
  t.unit = cat.identity(ObjId{0u}).index();
  t.mul.assign(k, std::vector<std::size_t>(k));
  t.inv.resize(k);
  for (std::uint32_t a = 0; a < k; ++a) {
    t.elements.push_back(cat.morphism_name(MorId{a}));
    t.inv[a] = gpd.inverse(MorId{a}).index();
    for (std::uint32_t b = 0; b < k; ++b) {
      const auto h = cat.compose(MorId{a}, MorId{b});
      if (!h)
        throw InvariantViolation("group table has no product for ('" +
                                 cat.morphism_name(MorId{a}) + "', '" +
                                 cat.morphism_name(MorId{b}) + "')");
      t.mul[a][b] = h->index();
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (t.mul[a][t.unit] != a || t.mul[t.unit][a] != a)
      throw InvariantViolation("unit law fails at '" + t.elements[a] + "'");
    if (t.mul[a][t.inv[a]] != t.unit || t.mul[t.inv[a]][a] != t.unit)
      throw InvariantViolation("inverse law fails at '" + t.elements[a] + "'");
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]])
          throw InvariantViolation("associativity fails at ('" + t.elements[a] + "', '" +
                                   t.elements[b] + "', '" + t.elements[c] + "')");
  }
  t.orders.resize(k);
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t order = 1, power = a;
    while (power != t.unit) {
      power = t.mul[a][power];
      ++order;
    }
    t.orders[a] = order;
    if (order == k)
      t.cyclic_order = k;
  }
  return t;
}

GroupTable quotient_group(const QuotientResult &qr) { return group_table(qr.u); }

} // namespace chromoid
