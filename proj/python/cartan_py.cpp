#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>

#include "cartan/invariants.hpp"
#include "cartan/serialize.hpp"

namespace py = pybind11;
using namespace cartan;

namespace {

AlgebraPtr make_algebra(const std::string& kind, std::uint32_t p, std::vector<std::uint32_t> m,
                        const std::optional<std::string>& scaling) {
  std::optional<BasisScaling> s;
  if (scaling) {
    if (*scaling == "monomial") {
      s = BasisScaling::Monomial;
    } else if (*scaling == "divided") {
      s = BasisScaling::DividedPower;
    } else {
      throw ParameterError("scaling must be 'monomial' or 'divided'");
    }
  }
  return build_algebra(parse_kind(kind), FieldParams::make(p, std::move(m)), std::nullopt, s);
}

const HamiltonianPair& pair_for(std::uint32_t p) {
  static std::map<std::uint32_t, HamiltonianPair> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, build_hamiltonian_pair(FieldParams::make(p, {1, 1}))).first;
  return it->second;
}

py::dict record_dict(const InvariantRecord& rec) {
  py::dict d;
  d["label"] = rec.label;
  d["power"] = rec.power;
  d["invariant"] = rec.invariant;
  d["generator"] = rec.generator;
  d["term_count"] = rec.term_count;
  d["p_power_m"] = rec.p_power_m;
  d["lambda"] = rec.lambda ? py::object(py::int_(*rec.lambda)) : py::object(py::none());
  d["null_result"] = rec.null_result;
  return d;
}

py::dict generator_dict(const GeneratorCheck& check, const CartanAlgebra& a) {
  py::dict d;
  d["ok"] = check.ok;
  d["diagnostics"] = check.diagnostics;
  d["witness"] = check.witness ? py::object(py::str(a.label(*check.witness))) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_cartan, m) {
  m.doc() = "Modular Lie algebras of Cartan type and their symmetric invariants";

  // Base first: pybind11 tries translators in reverse registration order.
  py::register_exception<Error>(m, "CartanError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("binom_mod", &binom_lucas, py::arg("a"), py::arg("b"), py::arg("p"));

  py::class_<CartanAlgebra, std::shared_ptr<CartanAlgebra>>(m, "Algebra")
      .def(py::init([](const std::string& kind, std::uint32_t p, std::vector<std::uint32_t> mm,
                       std::optional<std::string> scaling) {
             return std::const_pointer_cast<CartanAlgebra>(make_algebra(kind, p, std::move(mm), scaling));
           }),
           py::arg("kind"), py::arg("p"), py::arg("m"), py::arg("scaling") = py::none())
      .def_property_readonly("kind", [](const CartanAlgebra& a) { return to_string(a.kind()); })
      .def_property_readonly("p", [](const CartanAlgebra& a) { return a.params().p; })
      .def_property_readonly("m", [](const CartanAlgebra& a) { return a.params().m; })
      .def_property_readonly("dim", &CartanAlgebra::dim)
      .def_property_readonly("top_grade", &CartanAlgebra::top_grade)
      .def_property_readonly("convention", &CartanAlgebra::convention_tag)
      .def_property_readonly("labels",
                             [](const CartanAlgebra& a) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.label(i));
                               return out;
                             })
      .def("grade", &CartanAlgebra::grade)
      .def("index", [](const CartanAlgebra& a, const std::string& label) {
        auto i = a.find(label);
        if (!i) throw py::key_error(label);
        return *i;
      })
      .def("bracket",
           [](const CartanAlgebra& a, const std::string& x, const std::string& y) {
             auto i = a.find(x), j = a.find(y);
             if (!i || !j) throw py::key_error(!i ? x : y);
             std::map<std::string, std::uint32_t> out;
             for (const auto& [k, c] : a.bracket_mod(*i, *j)) out[a.label(k)] = c;
             return out;
           },
           "Structure constants of [x, y] mod p, keyed by label.")
      .def("filtration", &CartanAlgebra::filtration_basis)
      .def("structure_constants_json",
           [](const CartanAlgebra& a) { return dump(serialize_structure_constants(a)); })
      .def("__repr__", [](const CartanAlgebra& a) { return "<Algebra " + a.convention_tag() + ">"; });

  py::class_<ModPoly>(m, "Polynomial")
      .def(py::init([](std::shared_ptr<CartanAlgebra> a, const std::string& text) {
             AlgebraPtr alg = a;
             return parse_polynomial(text, alg, alg->field());
           }),
           py::arg("algebra"), py::arg("text") = "0")
      .def_static("from_json",
                  [](std::shared_ptr<CartanAlgebra> a, const std::string& doc) {
                    return deserialize_mod(Json::parse(doc), a);
                  })
      .def("to_json", [](const ModPoly& f) { return dump(serialize(f)); })
      .def("__str__", &ModPoly::to_text)
      .def("__repr__", [](const ModPoly& f) { return "<Polynomial " + f.to_text() + ">"; })
      .def("__len__", &ModPoly::size)
      .def("__eq__", [](const ModPoly& a, const ModPoly& b) { return a == b; })
      .def("__add__", [](const ModPoly& a, const ModPoly& b) { return a + b; })
      .def("__sub__", [](const ModPoly& a, const ModPoly& b) { return a - b; })
      .def("__mul__", [](const ModPoly& a, const ModPoly& b) { return a * b; })
      .def("__pow__", [](const ModPoly& a, unsigned e) { return a.pow(e); })
      .def("scaled", [](const ModPoly& a, std::int64_t c) { return a.scaled(a.ring().from_int(c)); })
      .def_property_readonly("is_zero", &ModPoly::is_zero)
      .def_property_readonly("degree", &ModPoly::homogeneous_degree)
      .def_property_readonly("algebra", [](const ModPoly& f) {
        return std::const_pointer_cast<CartanAlgebra>(f.algebra());
      });

  m.def("ad", [](const std::string& label, const ModPoly& f) {
    auto b = f.algebra()->find(label);
    if (!b) throw py::key_error(label);
    return ad_action(*b, f);
  }, py::arg("label"), py::arg("f"));
  m.def("d_delta", [](const ModPoly& f, unsigned workers) {
    py::gil_scoped_release release;
    return d_delta(f, workers);
  }, py::arg("f"), py::arg("workers") = 1);
  m.def("is_invariant", [](const ModPoly& f) {
    const auto r = is_invariant(f);
    return py::make_tuple(r.is_invariant, r.witness ? py::object(py::str(f.algebra()->label(r.witness->first)))
                                                    : py::object(py::none()));
  }, "Returns (invariant, witness label or None).");
  m.def("check_generator", [](const ModPoly& f) {
    const auto& a = *f.algebra();
    return generator_dict(a.kind() == AlgebraKind::W ? check_generator_W(f) : check_generator_SH(f), a);
  });

  m.def("compute_delta", [](std::uint32_t p, unsigned power) {
    return compute_delta(power, pair_for(p)).to_text();
  }, py::arg("p"), py::arg("power"), "Delta_i over the integers for Hbar_2(1,1), as text.");
  m.def("delta_star", [](std::uint32_t p, unsigned power, unsigned workers) {
    InvariantRecord rec = [&] {
      py::gil_scoped_release release;
      return delta_star(power, pair_for(p), workers);
    }();
    return record_dict(rec);
  }, py::arg("p"), py::arg("power"), py::arg("workers") = 1);
  m.def("lambda_homogeneity", &lambda_homogeneity);
  m.def("independence", [](std::uint32_t p, std::vector<unsigned> powers) {
    std::vector<InvariantRecord> records;
    for (auto power : powers) records.push_back(delta_star(power, pair_for(p)));
    const auto report = independence_report(records);
    py::dict d;
    d["independent"] = report.independent;
    d["independent_count"] = report.independent_count;
    d["trace"] = report.trace;
    return d;
  }, py::arg("p"), py::arg("powers"));
  m.def("conjecture_sweep", [](std::uint32_t p, std::size_t max_terms, double max_seconds, unsigned workers) {
    SweepReport report = [&] {
      py::gil_scoped_release release;
      return conjecture_sweep(p, Budget::with(max_terms, max_seconds), workers);
    }();
    py::dict d;
    d["p"] = report.p;
    d["index"] = report.index;
    py::list records;
    for (const auto& r : report.records) records.append(record_dict(r));
    d["records"] = records;
    d["rejected"] = report.rejected;
    d["verification_problems"] = report.verification_problems;
    d["partial"] = report.partial;
    d["message"] = report.message;
    d["independent_count"] =
        report.independence ? py::object(py::int_(report.independence->independent_count)) : py::object(py::none());
    d["matches_index"] = report.matches_index();
    return d;
  }, py::arg("p"), py::arg("max_terms") = 0, py::arg("max_seconds") = 0.0, py::arg("workers") = 1);
}
