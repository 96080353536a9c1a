#include "gcb/engine.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

std::string checkText(const std::string& text, const std::vector<std::string>& checks) {
  gcb::ModelData m = gcb::buildModel(gcb::parseStructureFile(text));
  return gcb::runChecks(m, checks).json();
}

std::string roundTrip(const gcb::StructureFile& f) {
  return gcb::serializeStructureFile(f);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "exact symbolic checks for generalized contact bundle data";

  // translators run newest-first, so the derived type goes second
  py::register_exception<gcb::GcbError>(mod, "GcbError", PyExc_RuntimeError);
  py::register_exception<gcb::ParseError>(mod, "ParseError", PyExc_ValueError);

  mod.def("check", &checkText, py::arg("text"), py::arg("checks") = std::vector<std::string>{},
          "run checks on a structure file; returns a schema-1 JSON report");
  mod.def(
      "applicable_checks",
      [](const std::string& text) {
        return gcb::applicableChecks(gcb::buildModel(gcb::parseStructureFile(text)));
      },
      py::arg("text"));
  mod.def(
      "homogenize",
      [](const std::string& text, const std::string& fiber) {
        return roundTrip(gcb::homogenizeFile(gcb::parseStructureFile(text), fiber));
      },
      py::arg("text"), py::arg("fiber") = "r");
  mod.def(
      "dehomogenize",
      [](const std::string& text) {
        return roundTrip(gcb::dehomogenizeFile(gcb::parseStructureFile(text)));
      },
      py::arg("text"));
  mod.def(
      "induce_im",
      [](const std::string& text) {
        return roundTrip(gcb::induceImFile(gcb::parseStructureFile(text)));
      },
      py::arg("text"));
  mod.def("examples", &gcb::exampleCatalog);
  mod.def("example", &gcb::exampleFile, py::arg("name"));
}
