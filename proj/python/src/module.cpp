#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "chromoid/builders.hpp"
#include "chromoid/cli.hpp"
#include "chromoid/congruence.hpp"
#include "chromoid/functors.hpp"
#include "chromoid/quotient.hpp"
#include "chromoid/serialization.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace chromoid;

namespace {

// Python sees objects, morphisms and colors by name.

MorId morphism_id(const FinCategory &cat, const std::string &name) {
  if (auto m = cat.find_morphism(name))
    return *m;
  throw StructuralError("unknown morphism '" + name + "'");
}

ObjId object_id(const FinCategory &cat, const std::string &name) {
  if (auto x = cat.find_object(name))
    return *x;
  throw StructuralError("unknown object '" + name + "'");
}

const FinGroupoid &require_groupoid(const ColoredCategory &cc) {
  if (!cc.groupoid())
    throw StructuralError("the colored category is not a groupoid");
  return *cc.groupoid();
}

std::vector<std::vector<std::string>> class_labels(const ColorPartition &p, const Coloring &col) {
  std::vector<std::vector<std::string>> out(p.class_count());
  for (std::size_t k = 0; k < p.class_count(); ++k)
    for (ColorId c : p.members(k))
      out[k].push_back(col.label(c));
  return out;
}

py::dict report_dict(const ValidationReport &r) {
  py::list witnesses;
  for (const auto &w : r.witnesses())
    witnesses.append(py::dict("law"_a = w.law, "items"_a = w.items, "message"_a = w.message));
  return py::dict("name"_a = r.check(), "passed"_a = r.passed(),
                  "violations"_a = r.violation_count(), "witnesses"_a = witnesses);
}

ColoredCategory hamming(std::uint32_t n, std::uint32_t d, const std::string &coloring) {
  const auto ag = action_groupoid(n, d);
  if (coloring == "weight")
    return {ag.groupoid(), hamming_coloring(ag)};
  if (coloring == "pi")
    return {ag.groupoid(), pi_coloring(ag)};
  if (coloring == "discrete")
    return {ag.groupoid(), discrete_coloring(ag.category())};
  if (coloring == "trivial")
    return {ag.groupoid(), trivial_coloring(ag.category())};
  throw StructuralError("unknown coloring '" + coloring + "'");
}

ColoredCategory recolor(const ColoredCategory &cc, const py::dict &labels) {
  const auto &cat = cc.category();
  std::vector<std::string> by_index(cat.morphism_count());
  std::vector<bool> seen(cat.morphism_count(), false);
  for (const auto &[key, value] : labels) {
    const auto m = morphism_id(cat, py::cast<std::string>(key));
    by_index[m.index()] = py::cast<std::string>(value);
    seen[m.index()] = true;
  }
  for (std::size_t m = 0; m < seen.size(); ++m)
    if (!seen[m])
      throw StructuralError("no label for morphism '" + cat.morphism_name(MorId{m}) + "'");
  auto col = coloring_from_labels(cat, by_index);
  if (cc.groupoid())
    return {*cc.groupoid(), std::move(col)};
  return {cat, std::move(col)};
}

struct PyQuotient {
  QuotientResult result;
  ColoredCategory source;
  ColoredCategory colored;
};

PyQuotient quotient(const ColoredCategory &cc, bool checked) {
  auto qr = build_quotient(require_groupoid(cc), cc.coloring(), QuotientOptions{checked});
  auto colored = quotient_category(qr);
  return {std::move(qr), cc, std::move(colored)};
}

py::dict pi_morphisms(const PyQuotient &q) {
  py::dict out;
  const auto &src = q.source.category();
  const auto &u = q.result.u.category();
  for (std::size_t m = 0; m < src.morphism_count(); ++m)
    out[py::str(src.morphism_name(MorId{m}))] =
        u.morphism_name(q.result.pi_morphisms[m]);
  return out;
}

py::dict pi_objects(const PyQuotient &q) {
  py::dict out;
  const auto &src = q.source.category();
  const auto &u = q.result.u.category();
  for (std::size_t x = 0; x < src.object_count(); ++x)
    out[py::str(src.object_name(ObjId{x}))] = u.object_name(q.result.pi_objects[x]);
  return out;
}

py::dict s1(const PyQuotient &q) {
  py::dict out;
  const auto &col = q.source.coloring();
  const auto &u = q.result.u.category();
  for (std::size_t c = 0; c < col.color_count(); ++c)
    out[py::str(col.label(ColorId{c}))] = u.morphism_name(q.result.s1[c]);
  return out;
}

py::dict mapping(const GroupoidIsomorphism &iso, const FinCategory &a, const FinCategory &b) {
  py::dict objects, morphisms;
  for (std::size_t x = 0; x < iso.object_map.size(); ++x)
    objects[py::str(a.object_name(ObjId{x}))] = b.object_name(iso.object_map[x]);
  for (std::size_t m = 0; m < iso.morphism_map.size(); ++m)
    morphisms[py::str(a.morphism_name(MorId{m}))] = b.morphism_name(iso.morphism_map[m]);
  return py::dict("objects"_a = objects, "morphisms"_a = morphisms);
}

py::tuple cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_chromoid, m) {
  m.doc() = "Colored categories, their congruences and quotient groupoids.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<StructuralError>(m, "StructuralError", error);
  py::register_exception<FormatError>(m, "FormatError", error);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", error);
  auto invariant = py::register_exception<InvariantViolation>(m, "InvariantViolation", error);
  py::register_exception<ClassConstancyError>(m, "ClassConstancyError", invariant);
  // Translated by hand so the report travels with the exception.
  static PyObject *precondition =
      py::exception<PreconditionError>(m, "PreconditionError", error).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const PreconditionError &e) {
      py::object exc = py::handle(precondition)(e.what());
      exc.attr("report") = report_dict(e.report());
      PyErr_SetObject(precondition, exc.ptr());
    }
  });

  py::class_<ColoredCategory>(m, "ColoredCategory")
      .def_property_readonly("objects",
                             [](const ColoredCategory &cc) {
                               const auto &cat = cc.category();
                               std::vector<std::string> out;
                               for (std::size_t x = 0; x < cat.object_count(); ++x)
                                 out.push_back(cat.object_name(ObjId{x}));
                               return out;
                             })
      .def_property_readonly("morphisms",
                             [](const ColoredCategory &cc) {
                               const auto &cat = cc.category();
                               std::vector<std::string> out;
                               for (std::size_t f = 0; f < cat.morphism_count(); ++f)
                                 out.push_back(cat.morphism_name(MorId{f}));
                               return out;
                             })
      .def_property_readonly("colors",
                             [](const ColoredCategory &cc) {
                               const auto labels = cc.coloring().labels();
                               return std::vector<std::string>(labels.begin(), labels.end());
                             })
      .def_property_readonly("is_groupoid",
                             [](const ColoredCategory &cc) { return cc.groupoid() != nullptr; })
      .def_property_readonly("is_discrete", &ColoredCategory::is_discrete)
      .def("src",
           [](const ColoredCategory &cc, const std::string &f) {
             const auto &cat = cc.category();
             return cat.object_name(cat.src(morphism_id(cat, f)));
           })
      .def("tgt",
           [](const ColoredCategory &cc, const std::string &f) {
             const auto &cat = cc.category();
             return cat.object_name(cat.tgt(morphism_id(cat, f)));
           })
      .def("identity",
           [](const ColoredCategory &cc, const std::string &x) {
             const auto &cat = cc.category();
             return cat.morphism_name(cat.identity(object_id(cat, x)));
           })
      .def(
          "compose",
          [](const ColoredCategory &cc, const std::string &f,
             const std::string &g) -> std::optional<std::string> {
            const auto &cat = cc.category();
            const auto h = cat.compose(morphism_id(cat, f), morphism_id(cat, g));
            if (!h)
              return std::nullopt;
            return cat.morphism_name(*h);
          },
          "f"_a, "g"_a, "f after g, or None when the pair is not composable")
      .def("inverse",
           [](const ColoredCategory &cc, const std::string &f) {
             const auto &gpd = require_groupoid(cc);
             return gpd.category().morphism_name(gpd.inverse(morphism_id(gpd.category(), f)));
           })
      .def("color",
           [](const ColoredCategory &cc, const std::string &f) {
             const auto &col = cc.coloring();
             return col.label(col.color(morphism_id(cc.category(), f)));
           })
      .def("recolored", &recolor, "labels"_a,
           "Same category with a new coloring given as {morphism: label}.")
      .def("category_json",
           [](const ColoredCategory &cc) {
             return cc.groupoid() ? category_to_string(*cc.groupoid())
                                  : category_to_string(cc.category());
           })
      .def("coloring_json",
           [](const ColoredCategory &cc) {
             return coloring_to_string(cc.category(), cc.coloring());
           })
      .def("__eq__", &ColoredCategory::operator==)
      .def("__repr__", [](const ColoredCategory &cc) {
        return "<ColoredCategory " + std::to_string(cc.category().object_count()) +
               " objects, " + std::to_string(cc.category().morphism_count()) +
               " morphisms, " + std::to_string(cc.coloring().color_count()) + " colors>";
      });

  py::class_<PyQuotient>(m, "Quotient")
      .def_property_readonly("colored", [](const PyQuotient &q) { return q.colored; })
      .def_property_readonly("pi_objects", &pi_objects)
      .def_property_readonly("pi_morphisms", &pi_morphisms)
      .def_property_readonly("s1", &s1)
      .def_property_readonly("morphism_classes",
                             [](const PyQuotient &q) {
                               return class_labels(q.result.morphism_classes,
                                                   q.source.coloring());
                             })
      .def_property_readonly("object_classes",
                             [](const PyQuotient &q) {
                               return class_labels(q.result.object_classes,
                                                   q.source.coloring());
                             })
      .def("group_classification",
           [](const PyQuotient &q) { return quotient_group(q.result).classification(); })
      .def("map_json", [](const PyQuotient &q) {
        return quotient_map_to_string(q.result, q.source.category(), q.source.coloring());
      });

  m.def("hamming", &hamming, "n"_a, "d"_a, "coloring"_a = "weight",
        "The action groupoid of (Z/n)^d on itself with the given coloring: "
        "weight, pi, discrete or trivial.");
  m.def(
      "cyclic_group",
      [](std::size_t k) {
        const auto g = one_object_group(cyclic_group_table(k));
        return ColoredCategory(g, discrete_coloring(g.category()));
      },
      "k"_a, "Z/k as a one-object groupoid with the discrete coloring.");

  m.def(
      "loads",
      [](const std::string &category, const std::string &coloring) {
        const auto value = category_from_string(category);
        const auto &cat = category_of(value);
        auto col = coloring_from_string(coloring, cat).coloring;
        if (const auto *g = std::get_if<FinGroupoid>(&value))
          return ColoredCategory(*g, std::move(col));
        if (auto g = derive_groupoid(cat))
          return ColoredCategory(std::move(*g), std::move(col));
        return ColoredCategory(cat, std::move(col));
      },
      "category"_a, "coloring"_a, "Parse a category document and a coloring document.");
  m.def("load", &load_colored_category, "category"_a, "coloring"_a);

  m.def(
      "check",
      [](const ColoredCategory &cc, bool schemoid, bool move_lemmas) {
        const auto &cat = cc.category();
        const auto &col = cc.coloring();
        py::list out;
        out.append(report_dict(validate_category(cat)));
        out.append(report_dict(check_colored_category(cat, col)));
        if (cc.groupoid())
          out.append(report_dict(check_inverse_compat(*cc.groupoid(), col)));
        if (schemoid)
          out.append(report_dict(check_schemoid(cat, col).report));
        if (move_lemmas)
          out.append(report_dict(check_move_lemmas(require_groupoid(cc), col)));
        return out;
      },
      "colored"_a, "schemoid"_a = false, "move_lemmas"_a = false,
      "Run the verification checks; one report dict per check.");

  m.def(
      "morphism_classes",
      [](const ColoredCategory &cc, bool checked) {
        return class_labels(morphism_color_partition(require_groupoid(cc), cc.coloring(),
                                                     CongruenceOptions{checked}),
                            cc.coloring());
      },
      "colored"_a, "checked"_a = true, "Congruence classes of colors, as labels.");
  m.def(
      "object_classes",
      [](const ColoredCategory &cc, bool checked) {
        const auto &gpd = require_groupoid(cc);
        const auto part =
            morphism_color_partition(gpd, cc.coloring(), CongruenceOptions{checked});
        return class_labels(object_color_partition(gpd, cc.coloring(), part), cc.coloring());
      },
      "colored"_a, "checked"_a = true, "Classes of identity colors, as labels.");

  m.def("quotient", &quotient, "colored"_a, "checked"_a = true);

  m.def(
      "group_classification",
      [](const ColoredCategory &cc) { return group_table(require_groupoid(cc)).classification(); },
      "colored"_a, "cyclic(k) or non-cyclic(...) for a one-object groupoid.");

  m.def(
      "isomorphism",
      [](const ColoredCategory &a, const ColoredCategory &b) -> std::optional<py::dict> {
        const auto iso = groupoid_isomorphic(require_groupoid(a), require_groupoid(b));
        if (!iso)
          return std::nullopt;
        return mapping(*iso, a.category(), b.category());
      },
      "a"_a, "b"_a, "An isomorphism of the underlying groupoids, or None.");

  m.def("count_functors_to_discrete", &count_colored_functors_to_discrete, "source"_a,
        "target"_a, "Number of colored functors into a discrete colored groupoid.");

  m.def("run_cli", &cli, "args"_a,
        "Run the command-line tool in process; returns (exit_code, stdout, stderr).");

  m.attr("FORMAT") = kFormatVersion;
}
