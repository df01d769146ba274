#include "chromoid/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "chromoid/builders.hpp"
#include "chromoid/serialization.hpp"

namespace chromoid {

namespace fs = std::filesystem;

namespace {

// "dir/name.json" + ".coloring" -> "dir/name.coloring.json".
fs::path sibling(const fs::path &path, const std::string &infix) {
  fs::path stem = path;
  if (stem.extension() == ".json")
    stem.replace_extension();
  return fs::path(stem.string() + infix + ".json");
}

// Reference to `file` as stored in a functor document written to `doc`.
std::string reference(const fs::path &doc, const fs::path &file) {
  const auto base = fs::absolute(doc).parent_path();
  auto rel = fs::absolute(file).lexically_normal().lexically_relative(base);
  return rel.empty() ? fs::absolute(file).string() : rel.generic_string();
}

void print_report(std::ostream &out, const ValidationReport &r) {
  if (r.passed()) {
    out << r.check() << ": pass\n";
    return;
  }
  out << r.check() << ": FAIL (" << r.violation_count() << " violation"
      << (r.violation_count() == 1 ? "" : "s") << ")\n";
  for (const auto &w : r.witnesses()) {
    out << "  " << w.law << ": (";
    for (std::size_t i = 0; i < w.items.size(); ++i)
      out << (i ? ", " : "") << w.items[i];
    out << ")";
    if (!w.message.empty())
      out << " " << w.message;
    out << "\n";
  }
}

bool all_passed(const std::vector<ValidationReport> &reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const ValidationReport &r) { return r.passed(); });
}

// A groupoid report for a category that is not one: each morphism without a
// two-sided inverse is a witness.
ValidationReport missing_inverses(const FinCategory &cat) {
  ValidationReport report("groupoid");
  for (std::uint32_t f = 0; f < cat.morphism_count(); ++f) {
    const MorId fm{f};
    bool found = false;
    for (MorId g : cat.incoming(cat.src(fm))) {
      if (cat.src(g) != cat.tgt(fm))
        continue;
      if (cat.compose(fm, g) == cat.identity(cat.tgt(g)) &&
          cat.compose(g, fm) == cat.identity(cat.src(fm))) {
        found = true;
        break;
      }
    }
    if (!found)
      report.add("inverse-exists", {cat.morphism_name(fm)}, "no two-sided inverse");
  }
  return report;
}

std::optional<FinGroupoid> as_groupoid(const CategoryValue &value) {
  if (const auto *g = std::get_if<FinGroupoid>(&value))
    return *g;
  return derive_groupoid(std::get<FinCategory>(value));
}

void print_loaded_warnings(std::ostream &err, const LoadedColoring &loaded) {
  for (const auto &w : loaded.warnings)
    err << "warning: " << w << "\n";
}

void write_quotient(const QuotientResult &qr, const fs::path &category_path,
                    const fs::path &coloring_path) {
  save_category(qr.u, category_path);
  save_coloring(qr.u.category(), quotient_coloring(qr), coloring_path);
}

// Commands

struct CheckArgs {
  std::string category;
  std::string coloring;
  bool schemoid = false;
  bool groupoid = false;
  bool move_lemmas = false;
  std::string report;
};

int cmd_check(const CheckArgs &a, std::ostream &out, std::ostream &err) {
  const auto value = load_category(a.category);
  const auto &cat = category_of(value);
  const auto loaded = load_coloring(a.coloring, cat);
  print_loaded_warnings(err, loaded);
  const auto &col = loaded.coloring;

  std::vector<ValidationReport> reports;
  reports.push_back(validate_category(cat));
  const auto table = NCountTable::compute(cat, col);
  reports.push_back(check_colored_category(cat, col, table));

  const auto gpd = as_groupoid(value);
  if (gpd) {
    if (a.groupoid)
      reports.push_back(validate_groupoid(*gpd));
    reports.push_back(check_inverse_compat(*gpd, col));
  } else if (a.groupoid || a.move_lemmas) {
    reports.push_back(missing_inverses(cat));
  } else {
    err << "note: not a groupoid; inverse-compat skipped\n";
  }
  if (a.schemoid)
    reports.push_back(check_schemoid(cat, col).report);
  if (a.move_lemmas && gpd)
    reports.push_back(check_move_lemmas(*gpd, col));

  for (const auto &r : reports)
    print_report(out, r);
  if (!a.report.empty())
    save_report(reports, a.report);
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

struct QuotientArgs {
  std::string category;
  std::string coloring;
  std::string output;
  std::string coloring_output;
  std::string map;
  bool unchecked = false;
};

int cmd_quotient(const QuotientArgs &a, std::ostream &out, std::ostream &err) {
  const auto value = load_category(a.category);
  const auto gpd = require_groupoid(value);
  const auto loaded = load_coloring(a.coloring, gpd.category());
  print_loaded_warnings(err, loaded);
  const auto &col = loaded.coloring;

  const auto qr = build_quotient(gpd, col, QuotientOptions{!a.unchecked});
  const fs::path category_out = a.output;
  const fs::path coloring_out =
      a.coloring_output.empty() ? sibling(category_out, ".coloring") : fs::path(a.coloring_output);
  write_quotient(qr, category_out, coloring_out);
  if (!a.map.empty())
    save_quotient_map(qr, gpd.category(), col, a.map);
  out << "quotient: " << qr.u.category().object_count() << " objects, "
      << qr.u.category().morphism_count() << " morphisms\n";
  return kExitOk;
}

struct HammingArgs {
  std::uint32_t n = 2;
  std::uint32_t d = 1;
  std::string coloring = "weight";
  std::string prefix;
};

int cmd_hamming(const HammingArgs &a, std::ostream &out) {
  const auto ag = action_groupoid(a.n, a.d);
  Coloring col;
  if (a.coloring == "weight")
    col = hamming_coloring(ag);
  else if (a.coloring == "pi")
    col = pi_coloring(ag);
  else if (a.coloring == "discrete")
    col = discrete_coloring(ag.category());
  else
    col = trivial_coloring(ag.category());
  save_category(ag.groupoid(), a.prefix + ".category.json");
  save_coloring(ag.category(), col, a.prefix + ".coloring.json");
  out << ag.category().object_count() << " objects, " << ag.category().morphism_count()
      << " morphisms, " << col.color_count() << " colors\n";
  return kExitOk;
}

struct FactorArgs {
  std::string category;
  std::string coloring;
  std::string functor;
  std::string output;
};

int cmd_factor(const FactorArgs &a, std::ostream &out) {
  const auto source = load_colored_category(a.category, a.coloring);
  const auto refs = functor_refs_from_string(read_text_file(a.functor));
  if (!refs.target)
    throw FormatError(a.functor + ": functor file: missing key 'target'");
  const fs::path base = fs::path(a.functor).parent_path();
  auto resolve = [&](const std::string &ref) {
    const fs::path p(ref);
    return p.is_absolute() ? p : base / p;
  };
  const fs::path target_category = resolve(refs.target->category);
  const fs::path target_coloring = resolve(refs.target->coloring);
  const auto target = load_colored_category(target_category, target_coloring);
  const auto F = load_functor(a.functor, source, target);

  auto laws = check_colored_functor(F);
  if (!target.is_discrete())
    laws.add("discrete-target", {}, "target coloring is not discrete");
  if (!laws.passed()) {
    print_report(out, laws);
    return kExitCheckFailed;
  }
  if (!source.groupoid())
    throw FormatError(a.category + ": category is not a groupoid");

  const auto fac = factor_through_quotient(F);
  const fs::path output = a.output;
  const fs::path q_category = sibling(output, ".quotient.category");
  const fs::path q_coloring = sibling(output, ".quotient.coloring");
  write_quotient(fac.quotient, q_category, q_coloring);
  FunctorRefs out_refs{ColoredCategoryRef{reference(output, q_category), reference(output, q_coloring)},
                       ColoredCategoryRef{reference(output, target_category),
                                          reference(output, target_coloring)}};
  save_functor(fac.factor, output, out_refs);
  out << "factor: " << fac.quotient.u.category().morphism_count()
      << " quotient morphisms; composite with the projection equals F\n";
  return kExitOk;
}

struct InducedArgs {
  std::string source_category;
  std::string source_coloring;
  std::string target_category;
  std::string target_coloring;
  std::string functor;
  std::string output;
};

int cmd_induced(const InducedArgs &a, std::ostream &out) {
  const auto source = load_colored_category(a.source_category, a.source_coloring);
  const auto target = load_colored_category(a.target_category, a.target_coloring);
  const auto F = load_functor(a.functor, source, target);
  const auto ind = induced_functor(F);
  const fs::path output = a.output;
  const fs::path sc = sibling(output, ".source.category");
  const fs::path sl = sibling(output, ".source.coloring");
  const fs::path tc = sibling(output, ".target.category");
  const fs::path tl = sibling(output, ".target.coloring");
  write_quotient(ind.source_quotient, sc, sl);
  write_quotient(ind.target_quotient, tc, tl);
  save_functor(ind.functor, output,
               FunctorRefs{ColoredCategoryRef{reference(output, sc), reference(output, sl)},
                           ColoredCategoryRef{reference(output, tc), reference(output, tl)}});
  const bool identity = ind.functor.source == ind.functor.target &&
                        ind.functor == identity_functor(ind.functor.source);
  out << "induced: " << ind.source_quotient.u.category().morphism_count() << " -> "
      << ind.target_quotient.u.category().morphism_count() << " morphisms"
      << (identity ? " (identity)" : "") << "\n";
  return kExitOk;
}

int cmd_group(const std::string &path, std::ostream &out) {
  const auto gpd = require_groupoid(load_category(path));
  const auto g = group_table(gpd);
  std::size_t width = 1;
  for (const auto &e : g.elements)
    width = std::max(width, e.size());
  out << std::left << std::setw(static_cast<int>(width)) << "*";
  for (const auto &e : g.elements)
    out << " " << std::setw(static_cast<int>(width)) << e;
  out << "\n";
  for (std::size_t a = 0; a < g.elements.size(); ++a) {
    out << std::setw(static_cast<int>(width)) << g.elements[a];
    for (std::size_t b = 0; b < g.elements.size(); ++b)
      out << " " << std::setw(static_cast<int>(width)) << g.elements[g.mul[a][b]];
    out << "\n";
  }
  out << std::right << g.classification() << "\n";
  return kExitOk;
}

int cmd_iso(const std::string &a_path, const std::string &b_path, std::ostream &out) {
  const auto a = require_groupoid(load_category(a_path));
  const auto b = require_groupoid(load_category(b_path));
  const auto iso = groupoid_isomorphic(a, b);
  if (!iso) {
    out << "not isomorphic\n";
    return kExitCheckFailed;
  }
  const auto &ac = a.category();
  const auto &bc = b.category();
  out << "isomorphic\nobjects:\n";
  for (std::uint32_t x = 0; x < ac.object_count(); ++x)
    out << "  " << ac.object_name(ObjId{x}) << " -> "
        << bc.object_name(iso->object_map[x]) << "\n";
  out << "morphisms:\n";
  for (std::uint32_t m = 0; m < ac.morphism_count(); ++m)
    out << "  " << ac.morphism_name(MorId{m}) << " -> "
        << bc.morphism_name(iso->morphism_map[m]) << "\n";
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quotients of morphism-colored groupoids", "chromoid"};
  app.require_subcommand(1);

  CheckArgs check;
  auto *c = app.add_subcommand("check", "Verify category, coloring and schemoid laws");
  c->add_option("category", check.category, "Category file")->required();
  c->add_option("coloring", check.coloring, "Coloring file")->required();
  c->add_flag("--schemoid", check.schemoid, "Also check constant intersection numbers");
  c->add_flag("--groupoid", check.groupoid, "Also check the inverse laws");
  c->add_flag("--move-lemmas", check.move_lemmas, "Also check the transport statements");
  c->add_option("--report", check.report, "Write a report file");

  QuotientArgs quotient;
  auto *q = app.add_subcommand("quotient", "Compute the universal quotient groupoid");
  q->add_option("category", quotient.category, "Category file")->required();
  q->add_option("coloring", quotient.coloring, "Coloring file")->required();
  q->add_option("-o,--output", quotient.output, "Quotient category file")->required();
  q->add_option("--coloring-out", quotient.coloring_output,
                "Quotient coloring file (default: <output>.coloring.json)");
  q->add_option("--map", quotient.map, "Write the projection maps");
  q->add_flag("--unchecked", quotient.unchecked, "Skip the precondition checks");

  HammingArgs hamming;
  auto *h = app.add_subcommand("hamming", "Write the action groupoid of (Z/n)^d");
  h->add_option("--n", hamming.n, "Modulus")->required()->check(CLI::PositiveNumber);
  h->add_option("--d", hamming.d, "Dimension")->required()->check(CLI::PositiveNumber);
  h->add_option("--coloring", hamming.coloring, "weight, pi, discrete or trivial")
      ->check(CLI::IsMember({"weight", "pi", "discrete", "trivial"}));
  h->add_option("-o,--output", hamming.prefix,
                "Output prefix; writes <prefix>.category.json and <prefix>.coloring.json")
      ->required();

  FactorArgs factor;
  auto *f = app.add_subcommand("factor", "Factor a functor to a discrete target through the quotient");
  f->add_option("category", factor.category, "Source category file")->required();
  f->add_option("coloring", factor.coloring, "Source coloring file")->required();
  f->add_option("functor", factor.functor, "Functor file")->required();
  f->add_option("-o,--output", factor.output, "Factor functor file")->required();

  InducedArgs induced;
  auto *i = app.add_subcommand("induced", "Functor between quotients induced by a colored functor");
  i->add_option("source-category", induced.source_category)->required();
  i->add_option("source-coloring", induced.source_coloring)->required();
  i->add_option("target-category", induced.target_category)->required();
  i->add_option("target-coloring", induced.target_coloring)->required();
  i->add_option("functor", induced.functor)->required();
  i->add_option("-o,--output", induced.output, "Induced functor file")->required();

  std::string group_path;
  auto *g = app.add_subcommand("group", "Print the group of a one-object groupoid");
  g->add_option("category", group_path, "Category file")->required();

  std::string iso_a, iso_b;
  auto *s = app.add_subcommand("iso", "Test two groupoids for isomorphism");
  s->add_option("a", iso_a, "Category file")->required();
  s->add_option("b", iso_b, "Category file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c)
      return cmd_check(check, out, err);
    if (*q)
      return cmd_quotient(quotient, out, err);
    if (*h)
      return cmd_hamming(hamming, out);
    if (*f)
      return cmd_factor(factor, out);
    if (*i)
      return cmd_induced(induced, out);
    if (*g)
      return cmd_group(group_path, out);
    if (*s)
      return cmd_iso(iso_a, iso_b, out);
  } catch (const PreconditionError &e) {
    err << "error: " << e.what() << "\n";
    print_report(out, e.report());
    return kExitCheckFailed;
  } catch (const InvariantViolation &e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace chromoid
