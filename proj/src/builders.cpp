#include "chromoid/builders.hpp"

#include <cstdlib>
#include <limits>

namespace chromoid {

namespace {

std::size_t env_or(const char *name, std::size_t fallback) {
  const char *value = std::getenv(name);
  if (!value || !*value)
    return fallback;
  char *end = nullptr;
  const auto parsed = std::strtoull(value, &end, 10);
  if (*end != '\0')
    throw StructuralError(std::string("environment variable ") + name +
                          " is not a number: '" + value + "'");
  return static_cast<std::size_t>(parsed);
}

// Saturating power, so the guard message can report huge sizes.
long double checked_power(long double base, std::uint32_t exp) {
  long double r = 1;
  for (std::uint32_t i = 0; i < exp; ++i)
    r *= base;
  return r;
}

std::string format_size(long double v) {
  if (v < 1e18L)
    return std::to_string(static_cast<unsigned long long>(v));
  return std::to_string(static_cast<double>(v));
}

} // namespace

Guard Guard::from_environment() {
  Guard g;
  g.max_morphisms = env_or("CHROMOID_MAX_MORPHISMS", g.max_morphisms);
  g.max_composable_pairs = env_or("CHROMOID_MAX_COMPOSABLE", g.max_composable_pairs);
  return g;
}

ActionGroupoid::ActionGroupoid(std::uint32_t n, std::uint32_t d, const Guard &guard)
    : n_(n), d_(d) {
  if (n < 2)
    throw StructuralError("action groupoid needs n >= 2, got " + std::to_string(n));
  if (d < 1)
    throw StructuralError("action groupoid needs d >= 1, got " + std::to_string(d));
  const long double morphisms = checked_power(n, 2 * d);
  if (morphisms > static_cast<long double>(guard.max_morphisms))
    throw GuardExceeded("action groupoid for n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + " has " + format_size(morphisms) +
                        " morphisms, above the limit of " +
                        std::to_string(guard.max_morphisms));
  const long double pairs = checked_power(n, 3 * d);
  if (pairs > static_cast<long double>(guard.max_composable_pairs))
    throw GuardExceeded("action groupoid for n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + " has " + format_size(pairs) +
                        " composable pairs, above the limit of " +
                        std::to_string(guard.max_composable_pairs));
  order_ = static_cast<std::size_t>(checked_power(n, d));

  CategoryBuilder b;
  for (std::size_t x = 0; x < order_; ++x)
    b.add_object(element_name(x));
  for (std::size_t g = 0; g < order_; ++g)
    for (std::size_t x = 0; x < order_; ++x)
      b.add_morphism("(" + element_name(g) + "," + element_name(x) + ")", ObjId{x},
                     ObjId{add(g, x)});
  for (std::size_t x = 0; x < order_; ++x)
    b.set_identity(ObjId{x}, morphism(0, x));
  // (g, h + x) after (h, x) = (g + h, x)
  for (std::size_t h = 0; h < order_; ++h)
    for (std::size_t x = 0; x < order_; ++x) {
      const std::size_t y = add(h, x);
      for (std::size_t g = 0; g < order_; ++g)
        b.set_composite(morphism(g, y), morphism(h, x), morphism(add(g, h), x));
    }
  std::vector<MorId> inverse(order_ * order_);
  for (std::size_t g = 0; g < order_; ++g)
    for (std::size_t x = 0; x < order_; ++x)
      inverse[morphism(g, x).index()] = morphism(negate(g), add(g, x));
  gpd_ = FinGroupoid(std::move(b).build(), std::move(inverse));
}

TupleElement ActionGroupoid::element(std::size_t rank) const {
  TupleElement x(d_);
  for (std::size_t i = d_; i-- > 0;) {
    x[i] = static_cast<std::uint32_t>(rank % n_);
    rank /= n_;
  }
  return x;
}

std::size_t ActionGroupoid::rank(const TupleElement &x) const {
  std::size_t r = 0;
  for (auto xi : x)
    r = r * n_ + xi;
  return r;
}

std::size_t ActionGroupoid::add(std::size_t a, std::size_t b) const {
  std::size_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    r += ((a % n_ + b % n_) % n_) * scale;
    a /= n_;
    b /= n_;
    scale *= n_;
  }
  return r;
}

std::size_t ActionGroupoid::negate(std::size_t a) const {
  std::size_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    r += ((n_ - a % n_) % n_) * scale;
    a /= n_;
    scale *= n_;
  }
  return r;
}

std::size_t ActionGroupoid::weight(std::size_t a) const {
  std::size_t w = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    w += (a % n_) != 0;
    a /= n_;
  }
  return w;
}

std::string ActionGroupoid::element_name(std::size_t rank) const {
  const auto x = element(rank);
  if (d_ == 1)
    return std::to_string(x[0]);
  std::string s = "(";
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (i)
      s += ',';
    s += std::to_string(x[i]);
  }
  return s + ")";
}

ActionGroupoid action_groupoid(std::uint32_t n, std::uint32_t d, const Guard &guard) {
  return ActionGroupoid(n, d, guard);
}

Coloring pi_coloring(const ActionGroupoid &ag) {
  std::vector<std::string> palette;
  for (std::size_t g = 0; g < ag.group_order(); ++g)
    palette.push_back(ag.element_name(g));
  std::vector<std::size_t> assignment(ag.category().morphism_count());
  for (std::size_t m = 0; m < assignment.size(); ++m)
    assignment[m] = ag.acting_element(MorId{m});
  return Coloring(ag.category(), palette, assignment);
}

Coloring hamming_coloring(const ActionGroupoid &ag) {
  std::vector<std::string> palette;
  for (std::uint32_t w = 0; w <= ag.d(); ++w)
    palette.push_back(std::to_string(w));
  std::vector<std::size_t> assignment(ag.category().morphism_count());
  for (std::size_t m = 0; m < assignment.size(); ++m)
    assignment[m] = ag.weight(ag.acting_element(MorId{m}));
  return Coloring(ag.category(), palette, assignment);
}

Coloring discrete_coloring(const FinCategory &cat) {
  std::vector<std::string> palette;
  std::vector<std::size_t> assignment;
  palette.reserve(cat.morphism_count());
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
    palette.push_back(cat.morphism_name(MorId{m}));
    assignment.push_back(m);
  }
  return Coloring(cat, palette, assignment);
}

Coloring trivial_coloring(const FinCategory &cat) {
  return Coloring(cat, {"0"}, std::vector<std::size_t>(cat.morphism_count(), 0));
}

MultiplicationTable cyclic_group_table(std::size_t k) {
  if (k == 0)
    throw StructuralError("cyclic group of order 0");
  MultiplicationTable t;
  t.mul.assign(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a) {
    t.names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < k; ++b)
      t.mul[a][b] = (a + b) % k;
  }
  return t;
}

MultiplicationTable elementary_abelian_table(std::uint32_t n, std::uint32_t d) {
  // Reuse the tuple arithmetic without building the groupoid.
  const ActionGroupoid shape(n, d, Guard{std::numeric_limits<std::size_t>::max(),
                                         std::numeric_limits<std::size_t>::max()});
  MultiplicationTable t;
  const auto k = shape.group_order();
  t.mul.assign(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a) {
    t.names.push_back(shape.element_name(a));
    for (std::size_t b = 0; b < k; ++b)
      t.mul[a][b] = shape.add(a, b);
  }
  return t;
}

ValidationReport check_group_table(const MultiplicationTable &table) {
  ValidationReport report("group-table");
  const std::size_t k = table.names.size();
  if (k == 0) {
    report.add("nonempty", {}, "a group has at least one element");
    return report;
  }
  if (table.mul.size() != k) {
    report.add("shape", {}, "table has " + std::to_string(table.mul.size()) +
                                " rows for " + std::to_string(k) + " elements");
    return report;
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (table.mul[a].size() != k) {
      report.add("shape", {table.names[a]}, "row has the wrong length");
      return report;
    }
    for (std::size_t b = 0; b < k; ++b)
      if (table.mul[a][b] >= k) {
        report.add("closure", {table.names[a], table.names[b]},
                   "product outside the element set");
        return report;
      }
  }
  std::optional<std::size_t> unit;
  for (std::size_t e = 0; e < k && !unit; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a)
      ok = table.mul[e][a] == a && table.mul[a][e] == a;
    if (ok)
      unit = e;
  }
  if (!unit) {
    report.add("unit", {}, "no two-sided unit");
    return report;
  }
  for (std::size_t a = 0; a < k; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < k && !has_inverse; ++b)
      has_inverse = table.mul[a][b] == *unit && table.mul[b][a] == *unit;
    if (!has_inverse)
      report.add("inverse", {table.names[a]}, "element has no two-sided inverse");
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (table.mul[table.mul[a][b]][c] != table.mul[a][table.mul[b][c]])
          report.add("associativity", {table.names[a], table.names[b], table.names[c]},
                     "(ab)c != a(bc)");
  return report;
}

FinGroupoid one_object_group(const MultiplicationTable &table) {
  auto report = check_group_table(table);
  if (!report.passed())
    throw PreconditionError("multiplication table is not a group", std::move(report));
  const std::size_t k = table.names.size();
  // The unit is the only idempotent of a group.
  std::size_t unit = 0;
  for (std::size_t e = 0; e < k; ++e)
    if (table.mul[e][e] == e) {
      unit = e;
      break;
    }
  CategoryBuilder b;
  const ObjId star = b.add_object("*");
  for (const auto &name : table.names)
    b.add_morphism(name, star, star);
  b.set_identity(star, MorId{unit});
  std::vector<MorId> inverse(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      b.set_composite(MorId{a}, MorId{c}, MorId{table.mul[a][c]});
      if (table.mul[a][c] == unit)
        inverse[a] = MorId{c};
    }
  return FinGroupoid(std::move(b).build(), std::move(inverse));
}

FinGroupoid disjoint_union(const FinGroupoid &left, const FinGroupoid &right,
                           const std::string &left_prefix,
                           const std::string &right_prefix) {
  CategoryBuilder b;
  std::vector<MorId> inverse;
  auto append = [&](const FinGroupoid &part, const std::string &prefix) {
    const auto &cat = part.category();
    const auto obj_base = b.object_count();
    const auto mor_base = b.morphism_count();
    for (std::uint32_t x = 0; x < cat.object_count(); ++x)
      b.add_object(prefix + cat.object_name(ObjId{x}));
    for (std::uint32_t m = 0; m < cat.morphism_count(); ++m) {
      const MorId f{m};
      b.add_morphism(prefix + cat.morphism_name(f), ObjId{obj_base + cat.src(f).index()},
                     ObjId{obj_base + cat.tgt(f).index()});
      inverse.push_back(MorId{mor_base + part.inverse(f).index()});
    }
    for (std::uint32_t x = 0; x < cat.object_count(); ++x)
      b.set_identity(ObjId{obj_base + x},
                     MorId{mor_base + cat.identity(ObjId{x}).index()});
    cat.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
      if (h)
        b.set_composite(MorId{mor_base + f.index()}, MorId{mor_base + g.index()},
                        MorId{mor_base + h->index()});
    });
  };
  append(left, left_prefix);
  append(right, right_prefix);
  return FinGroupoid(std::move(b).build(), std::move(inverse));
}

} // namespace chromoid
