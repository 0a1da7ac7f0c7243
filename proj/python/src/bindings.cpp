#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prodset/circle.hpp"
#include "prodset/compact_cover.hpp"
#include "prodset/error.hpp"
#include "prodset/harmonic.hpp"
#include "prodset/lab.hpp"
#include "prodset/periodic.hpp"
#include "prodset/structure.hpp"

namespace py = pybind11;
using namespace prodset;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<std::string> format_all(const GroupDescriptor& d, const std::vector<GroupElement>& els) {
  std::vector<std::string> out;
  out.reserve(els.size());
  for (const auto& g : els) out.push_back(d.format(g));
  return out;
}

py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.numerator(), q.denominator());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Product-set structure, random walks and cover bounds";

  const auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded", base.ptr());
  py::register_exception<DescriptorMismatch>(m, "DescriptorMismatch", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("version", &tool_version);

  m.def(
      "multiply",
      [](const std::string& desc, const std::string& g, const std::string& h) {
        const auto d = GroupDescriptor::parse(desc);
        return d.format(d.mul(d.parse_element(g), d.parse_element(h)));
      },
      py::arg("descriptor"), py::arg("g"), py::arg("h"));
  m.def(
      "inverse",
      [](const std::string& desc, const std::string& g) {
        const auto d = GroupDescriptor::parse(desc);
        return d.format(d.inv(d.parse_element(g)));
      },
      py::arg("descriptor"), py::arg("g"));
  m.def(
      "ball",
      [](const std::string& desc, int64_t r) {
        const auto d = GroupDescriptor::parse(desc);
        const Ball b = enumerate_ball(d, r);
        return format_all(d, b.elements());
      },
      py::arg("descriptor"), py::arg("radius"), "Elements of the ball of the given radius in canonical order.");

  py::class_<PeriodicIntSet>(m, "PeriodicIntSet")
      .def(py::init<int64_t, std::vector<int64_t>>(), py::arg("modulus"), py::arg("residues"))
      .def_static("parse", &PeriodicIntSet::parse)
      .def_property_readonly("modulus", &PeriodicIntSet::modulus)
      .def_property_readonly("residues", &PeriodicIntSet::residues)
      .def_property_readonly("density", [](const PeriodicIntSet& s) { return fraction(s.density()); })
      .def("__contains__", &PeriodicIntSet::contains)
      .def("normalized", &PeriodicIntSet::normalized)
      .def("complement", &PeriodicIntSet::complement)
      .def("__add__", &periodic_product)
      .def("__eq__", [](const PeriodicIntSet& a, const PeriodicIntSet& b) { return a == b; })
      .def("__str__", &PeriodicIntSet::to_string)
      .def("__repr__", [](const PeriodicIntSet& s) { return "PeriodicIntSet('" + s.to_string() + "')"; });

  m.def(
      "syndeticity_index",
      [](const PeriodicIntSet& c) -> py::object {
        const IndexReport r = syndeticity_index(c);
        if (!r.minimal()) return py::none();
        std::vector<int64_t> cover;
        for (const auto& g : r.cover) cover.push_back(g[0]);
        return py::make_tuple(*r.index, cover);
      },
      "Minimal (|F|, F) with F + C = Z, or None when C is empty.");

  m.def(
      "theorem2_audit",
      [](const std::string& desc, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        const FiniteGroupSpace space(GroupDescriptor::parse(desc));
        return to_python(audit_json(space, theorem2_bound_check(space, space.subset(a), space.subset(b))));
      },
      py::arg("descriptor"), py::arg("a"), py::arg("b"));
  m.def(
      "exact_min_cover",
      [](const std::string& desc, const std::vector<std::size_t>& u) -> py::object {
        const FiniteGroupSpace space(GroupDescriptor::parse(desc));
        const auto r = exact_min_cover(space, space.subset(u));
        if (!r.size()) return py::none();
        return py::cast(r.cover);
      },
      py::arg("descriptor"), py::arg("u"));

  m.def(
      "cylinder_harmonic",
      [](const std::string& prefix, const std::string& g, int depth) {
        const auto f2 = GroupDescriptor::free(2);
        const CertifiedValue v = free_cylinder_harmonic(f2, f2.word(prefix), f2.word(g), depth);
        return py::make_tuple(v.lo, v.hi);
      },
      py::arg("prefix"), py::arg("g"), py::arg("depth") = 40,
      "Certified (lo, hi) bounds on the hitting probability of a boundary cylinder of F2.");

  m.def(
      "refute_syndeticity",
      [](int rho, int max_length) -> py::object {
        const Ball f = enumerate_ball(free_rank_two(), rho);
        const Refutation r = refute_syndeticity(CircleSystem::standard(), f.elements(), standard_arcs(), max_length);
        if (!r.certificate) return py::none();
        return to_python(certificate_json(*r.certificate));
      },
      py::arg("rho"), py::arg("max_length") = 60,
      "Certificate for F = Ball(rho) on the standard arc fixture, or None.");
  m.def(
      "verify_certificate", [](const py::object& cert) { return verify_certificate(from_python(cert)); },
      py::arg("certificate"));

  m.def(
      "run_experiment",
      [](const std::string& config_text, unsigned jobs) {
        ExperimentConfig cfg = ExperimentConfig::parse(config_text);
        cfg.jobs = jobs;
        ResultRecord rec;
        {
          py::gil_scoped_release release;
          rec = run_experiment(cfg);
        }
        return to_python(rec.to_json());
      },
      py::arg("config"), py::arg("jobs") = 1, "Runs a lab experiment from config text and returns its record.");
}
