#include "chromoid/serialization.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace chromoid {

using nlohmann::json;

namespace {

std::string canonical(const json &doc) { return doc.dump(2) + "\n"; }

json parse(const std::string &text, const char *what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

const json &require(const json &doc, const char *key, const char *what) {
  if (!doc.is_object())
    throw FormatError(std::string(what) + ": document is not a JSON object");
  auto it = doc.find(key);
  if (it == doc.end())
    throw FormatError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

void require_format(const json &doc, const char *what) {
  const auto &f = require(doc, "format", what);
  if (!f.is_string() || f.get<std::string>() != kFormatVersion)
    throw FormatError(std::string(what) + ": unsupported format " + f.dump() +
                      ", expected \"" + kFormatVersion + "\"");
}

std::string as_string(const json &v, const std::string &context) {
  if (!v.is_string())
    throw FormatError(context + ": expected a string, got " + v.dump());
  return v.get<std::string>();
}

const json &as_array(const json &v, const std::string &context) {
  if (!v.is_array())
    throw FormatError(context + ": expected an array");
  return v;
}

const json &as_object(const json &v, const std::string &context) {
  if (!v.is_object())
    throw FormatError(context + ": expected an object");
  return v;
}

json category_json(const FinCategory &cat, const FinGroupoid *gpd) {
  json doc;
  doc["format"] = kFormatVersion;
  json objects = json::array();
  json identities = json::object();
  for (std::uint32_t x = 0; x < cat.object_count(); ++x) {
    objects.push_back(cat.object_name(ObjId{x}));
    identities[cat.object_name(ObjId{x})] = cat.morphism_name(cat.identity(ObjId{x}));
  }
  json morphisms = json::array();
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    morphisms.push_back({{"name", cat.morphism_name(MorId{m})},
                         {"src", cat.object_name(cat.src(MorId{m}))},
                         {"tgt", cat.object_name(cat.tgt(MorId{m}))}});
  json compose = json::array();
  cat.for_each_composable([&](MorId f, MorId g, std::optional<MorId> h) {
    if (h)
      compose.push_back(
          {cat.morphism_name(f), cat.morphism_name(g), cat.morphism_name(*h)});
  });
  doc["objects"] = std::move(objects);
  doc["morphisms"] = std::move(morphisms);
  doc["identities"] = std::move(identities);
  doc["compose"] = std::move(compose);
  if (gpd) {
    json inverse = json::object();
    for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
      inverse[cat.morphism_name(MorId{m})] = cat.morphism_name(gpd->inverse(MorId{m}));
    doc["inverse"] = std::move(inverse);
  }
  return doc;
}

template <class Lookup>
auto resolve(const Lookup &lookup, const std::string &name, const std::string &context) {
  auto id = lookup(name);
  if (!id)
    throw FormatError(context + ": unknown name '" + name + "'");
  return *id;
}

std::filesystem::path resolve_ref(const std::filesystem::path &base,
                                  const std::string &ref) {
  std::filesystem::path p(ref);
  return p.is_absolute() ? p : base.parent_path() / p;
}

} // namespace

const FinCategory &category_of(const CategoryValue &value) {
  if (const auto *g = std::get_if<FinGroupoid>(&value))
    return g->category();
  return std::get<FinCategory>(value);
}

FinGroupoid require_groupoid(const CategoryValue &value) {
  if (const auto *g = std::get_if<FinGroupoid>(&value))
    return *g;
  auto derived = derive_groupoid(std::get<FinCategory>(value));
  if (!derived)
    throw FormatError("category is not a groupoid: some morphism has no inverse");
  return std::move(*derived);
}

// Category

std::string category_to_string(const FinCategory &cat) {
  return canonical(category_json(cat, nullptr));
}

std::string category_to_string(const FinGroupoid &gpd) {
  return canonical(category_json(gpd.category(), &gpd));
}

CategoryValue category_from_string(const std::string &text) {
  static constexpr const char *what = "category file";
  const json doc = parse(text, what);
  require_format(doc, what);
  const auto &objects = as_array(require(doc, "objects", what), "objects");
  const auto &morphisms = as_array(require(doc, "morphisms", what), "morphisms");
  const auto &identities = as_object(require(doc, "identities", what), "identities");
  const auto &compose = as_array(require(doc, "compose", what), "compose");

  CategoryBuilder b;
  try {
    for (const auto &o : objects)
      b.add_object(as_string(o, "objects"));
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
      const auto ctx = "morphisms[" + std::to_string(i) + "]";
      const auto &m = as_object(morphisms[i], ctx);
      const auto name = as_string(require(m, "name", ctx.c_str()), ctx + ".name");
      const auto src = as_string(require(m, "src", ctx.c_str()), ctx + ".src");
      const auto tgt = as_string(require(m, "tgt", ctx.c_str()), ctx + ".tgt");
      auto find_obj = [&](const std::string &n) { return b.find_object(n); };
      b.add_morphism(name, resolve(find_obj, src, ctx + ".src"),
                     resolve(find_obj, tgt, ctx + ".tgt"));
    }
    auto find_mor = [&](const std::string &n) { return b.find_morphism(n); };
    auto find_obj = [&](const std::string &n) { return b.find_object(n); };
    for (const auto &[obj, id] : identities.items())
      b.set_identity(resolve(find_obj, obj, "identities"),
                     resolve(find_mor, as_string(id, "identities." + obj),
                             "identities." + obj));
    for (std::size_t i = 0; i < compose.size(); ++i) {
      const auto ctx = "compose[" + std::to_string(i) + "]";
      const auto &entry = as_array(compose[i], ctx);
      if (entry.size() != 3)
        throw FormatError(ctx + ": expected [f, g, h]");
      const MorId f = resolve(find_mor, as_string(entry[0], ctx), ctx);
      const MorId g = resolve(find_mor, as_string(entry[1], ctx), ctx);
      const MorId h = resolve(find_mor, as_string(entry[2], ctx), ctx);
      if (b.src(f) != b.tgt(g))
        throw FormatError(ctx + ": ('" + entry[0].get<std::string>() + "', '" +
                          entry[1].get<std::string>() +
                          "') is not composable: src(f) != tgt(g)");
      b.set_composite(f, g, h);
    }
    std::vector<MorId> inverse;
    if (auto it = doc.find("inverse"); it != doc.end()) {
      const auto &inv = as_object(*it, "inverse");
      inverse.resize(b.morphism_count());
      std::vector<bool> seen(b.morphism_count(), false);
      for (const auto &[f, g] : inv.items()) {
        const MorId fi = resolve(find_mor, f, "inverse");
        inverse[fi.index()] = resolve(find_mor, as_string(g, "inverse." + f), "inverse." + f);
        seen[fi.index()] = true;
      }
      auto cat = std::move(b).build();
      for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
        if (!seen[m])
          throw FormatError("inverse: missing entry for morphism '" +
                            cat.morphism_name(MorId{m}) + "'");
      return FinGroupoid(std::move(cat), std::move(inverse));
    }
    return std::move(b).build();
  } catch (const StructuralError &e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

CategoryValue load_category(const std::filesystem::path &path) {
  try {
    return category_from_string(read_text_file(path));
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_category(const FinCategory &cat, const std::filesystem::path &path) {
  write_text_file(path, category_to_string(cat));
}

void save_category(const FinGroupoid &gpd, const std::filesystem::path &path) {
  write_text_file(path, category_to_string(gpd));
}

// Coloring

std::string coloring_to_string(const FinCategory &cat, const Coloring &col) {
  col.check_fits(cat);
  json doc;
  doc["format"] = kFormatVersion;
  doc["colors"] = json(std::vector<std::string>(col.labels().begin(), col.labels().end()));
  json assignment = json::object();
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    assignment[cat.morphism_name(MorId{m})] = col.label(col.color(MorId{m}));
  doc["assignment"] = std::move(assignment);
  return canonical(doc);
}

LoadedColoring coloring_from_string(const std::string &text, const FinCategory &cat) {
  static constexpr const char *what = "coloring file";
  const json doc = parse(text, what);
  require_format(doc, what);
  const auto &colors = as_array(require(doc, "colors", what), "colors");
  const auto &assignment = as_object(require(doc, "assignment", what), "assignment");

  std::vector<std::string> palette;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto &c : colors) {
    auto label = as_string(c, "colors");
    if (!index.emplace(label, palette.size()).second)
      throw FormatError(std::string(what) + ": duplicate color label '" + label + "'");
    palette.push_back(std::move(label));
  }
  std::vector<std::size_t> assign(cat.morphism_count());
  std::vector<bool> seen(cat.morphism_count(), false);
  for (const auto &[name, label] : assignment.items()) {
    const auto m = cat.find_morphism(name);
    if (!m)
      throw FormatError(std::string(what) + ": assignment names unknown morphism '" +
                        name + "'");
    const auto l = as_string(label, "assignment." + name);
    auto it = index.find(l);
    if (it == index.end())
      throw FormatError(std::string(what) + ": morphism '" + name +
                        "' has undeclared color '" + l + "'");
    assign[m->index()] = it->second;
    seen[m->index()] = true;
  }
  for (std::uint32_t m = 0; m < cat.morphism_count(); ++m)
    if (!seen[m])
      throw FormatError(std::string(what) + ": assignment is missing morphism '" +
                        cat.morphism_name(MorId{m}) + "'");
  LoadedColoring out{Coloring(cat, palette, assign), {}};
  for (const auto &label : out.coloring.dropped_labels())
    out.warnings.push_back("color '" + label + "' is not used by any morphism; dropped");
  return out;
}

LoadedColoring load_coloring(const std::filesystem::path &path, const FinCategory &cat) {
  try {
    return coloring_from_string(read_text_file(path), cat);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_coloring(const FinCategory &cat, const Coloring &col,
                   const std::filesystem::path &path) {
  write_text_file(path, coloring_to_string(cat, col));
}

ColoredCategory load_colored_category(const std::filesystem::path &category,
                                      const std::filesystem::path &coloring) {
  auto value = load_category(category);
  const auto &cat = category_of(value);
  auto col = load_coloring(coloring, cat).coloring;
  if (auto *g = std::get_if<FinGroupoid>(&value))
    return ColoredCategory(std::move(*g), std::move(col));
  if (auto g = derive_groupoid(cat))
    return ColoredCategory(std::move(*g), std::move(col));
  return ColoredCategory(std::get<FinCategory>(std::move(value)), std::move(col));
}

// Functor

std::string functor_to_string(const ColoredFunctor &F, const FunctorRefs &refs) {
  const auto &s = F.source.category();
  const auto &t = F.target.category();
  const auto &sl = F.source.coloring();
  const auto &tl = F.target.coloring();
  json doc;
  doc["format"] = kFormatVersion;
  json objects = json::object(), morphisms = json::object(), colors = json::object();
  for (std::uint32_t x = 0; x < s.object_count(); ++x)
    objects[s.object_name(ObjId{x})] = t.object_name(F.object_map.at(x));
  for (std::uint32_t m = 0; m < s.morphism_count(); ++m)
    morphisms[s.morphism_name(MorId{m})] = t.morphism_name(F.morphism_map.at(m));
  for (std::uint32_t c = 0; c < sl.color_count(); ++c)
    colors[sl.label(ColorId{c})] = tl.label(F.color_map.at(c));
  doc["object_map"] = std::move(objects);
  doc["morphism_map"] = std::move(morphisms);
  doc["color_map"] = std::move(colors);
  auto put_ref = [&](const char *key, const std::optional<ColoredCategoryRef> &ref) {
    if (ref)
      doc[key] = {{"category", ref->category}, {"coloring", ref->coloring}};
  };
  put_ref("source", refs.source);
  put_ref("target", refs.target);
  return canonical(doc);
}

ColoredFunctor functor_from_string(const std::string &text, const ColoredCategory &source,
                                   const ColoredCategory &target) {
  static constexpr const char *what = "functor file";
  const json doc = parse(text, what);
  require_format(doc, what);
  const auto &objects = as_object(require(doc, "object_map", what), "object_map");
  const auto &morphisms = as_object(require(doc, "morphism_map", what), "morphism_map");
  const auto &colors = as_object(require(doc, "color_map", what), "color_map");
  const auto &s = source.category();
  const auto &t = target.category();
  const auto &sl = source.coloring();
  const auto &tl = target.coloring();

  ColoredFunctor F{source, target, std::vector<ObjId>(s.object_count()),
                   std::vector<MorId>(s.morphism_count()),
                   std::vector<ColorId>(sl.color_count())};

  // Reads a name -> name map that must be total over `count` source entries.
  auto read_map = [&](const json &m, const char *key, std::size_t count, auto find_source,
                      auto find_target, auto source_name, auto &out) {
    std::vector<bool> seen(count, false);
    for (const auto &[from, to] : m.items()) {
      const auto i = find_source(from);
      if (!i)
        throw FormatError(std::string(what) + ": " + key + " names unknown source '" +
                          from + "'");
      const auto target_name = as_string(to, std::string(key) + "." + from);
      const auto j = find_target(target_name);
      if (!j)
        throw FormatError(std::string(what) + ": " + key + " names unknown target '" +
                          target_name + "'");
      out[i->index()] = *j;
      seen[i->index()] = true;
    }
    for (std::size_t i = 0; i < count; ++i)
      if (!seen[i])
        throw FormatError(std::string(what) + ": " + key + " is missing '" +
                          source_name(i) + "'");
  };
  read_map(
      objects, "object_map", s.object_count(),
      [&](const std::string &n) { return s.find_object(n); },
      [&](const std::string &n) { return t.find_object(n); },
      [&](std::size_t i) { return s.object_name(ObjId{i}); }, F.object_map);
  read_map(
      morphisms, "morphism_map", s.morphism_count(),
      [&](const std::string &n) { return s.find_morphism(n); },
      [&](const std::string &n) { return t.find_morphism(n); },
      [&](std::size_t i) { return s.morphism_name(MorId{i}); }, F.morphism_map);
  read_map(
      colors, "color_map", sl.color_count(),
      [&](const std::string &n) { return sl.find_color(n); },
      [&](const std::string &n) { return tl.find_color(n); },
      [&](std::size_t i) { return sl.label(ColorId{i}); }, F.color_map);
  return F;
}

FunctorRefs functor_refs_from_string(const std::string &text) {
  static constexpr const char *what = "functor file";
  const json doc = parse(text, what);
  require_format(doc, what);
  FunctorRefs refs;
  auto get = [&](const char *key) -> std::optional<ColoredCategoryRef> {
    auto it = doc.find(key);
    if (it == doc.end())
      return std::nullopt;
    const auto &ref = as_object(*it, key);
    return ColoredCategoryRef{
        as_string(require(ref, "category", key), std::string(key) + ".category"),
        as_string(require(ref, "coloring", key), std::string(key) + ".coloring")};
  };
  refs.source = get("source");
  refs.target = get("target");
  return refs;
}

ColoredFunctor load_functor(const std::filesystem::path &path) {
  const auto text = read_text_file(path);
  const auto refs = functor_refs_from_string(text);
  if (!refs.source)
    throw FormatError(path.string() + ": functor file: missing key 'source'");
  if (!refs.target)
    throw FormatError(path.string() + ": functor file: missing key 'target'");
  auto source = load_colored_category(resolve_ref(path, refs.source->category),
                                      resolve_ref(path, refs.source->coloring));
  auto target = load_colored_category(resolve_ref(path, refs.target->category),
                                      resolve_ref(path, refs.target->coloring));
  return functor_from_string(text, source, target);
}

ColoredFunctor load_functor(const std::filesystem::path &path, const ColoredCategory &source,
                            const ColoredCategory &target) {
  try {
    return functor_from_string(read_text_file(path), source, target);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_functor(const ColoredFunctor &F, const std::filesystem::path &path,
                  const FunctorRefs &refs) {
  write_text_file(path, functor_to_string(F, refs));
}

// Quotient map

std::string quotient_map_to_string(const QuotientResult &qr, const FinCategory &source,
                                   const Coloring &col) {
  const auto &u = qr.u.category();
  json doc;
  doc["format"] = kFormatVersion;
  json po = json::object(), pm = json::object(), s0 = json::object(), s1 = json::object();
  for (std::uint32_t x = 0; x < source.object_count(); ++x)
    po[source.object_name(ObjId{x})] = u.object_name(qr.pi_objects.at(x));
  for (std::uint32_t m = 0; m < source.morphism_count(); ++m)
    pm[source.morphism_name(MorId{m})] = u.morphism_name(qr.pi_morphisms.at(m));
  for (std::uint32_t c = 0; c < col.color_count(); ++c) {
    s1[col.label(ColorId{c})] = u.morphism_name(qr.s1.at(c));
    if (qr.s0.at(c))
      s0[col.label(ColorId{c})] = u.object_name(*qr.s0[c]);
  }
  doc["pi_objects"] = std::move(po);
  doc["pi_morphisms"] = std::move(pm);
  doc["s0"] = std::move(s0);
  doc["s1"] = std::move(s1);
  return canonical(doc);
}

void save_quotient_map(const QuotientResult &qr, const FinCategory &source,
                       const Coloring &col, const std::filesystem::path &path) {
  write_text_file(path, quotient_map_to_string(qr, source, col));
}

// Report

std::string report_to_string(std::span<const ValidationReport> reports) {
  json checks = json::array();
  for (const auto &r : reports) {
    json witnesses = json::array();
    for (const auto &w : r.witnesses())
      witnesses.push_back({{"law", w.law}, {"items", w.items}, {"message", w.message}});
    checks.push_back({{"name", r.check()},
                      {"status", r.passed() ? "pass" : "fail"},
                      {"violations", r.violation_count()},
                      {"witnesses", std::move(witnesses)}});
  }
  json doc;
  doc["format"] = kFormatVersion;
  doc["checks"] = std::move(checks);
  return canonical(doc);
}

void save_report(std::span<const ValidationReport> reports,
                 const std::filesystem::path &path) {
  write_text_file(path, report_to_string(reports));
}

// Files

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FormatError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out)
    throw FormatError("failed writing '" + path.string() + "'");
}

} // namespace chromoid
