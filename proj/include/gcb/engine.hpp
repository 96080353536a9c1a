#ifndef GCB_ENGINE_HPP
#define GCB_ENGINE_HPP

#include "gcb/structure_file.hpp"

namespace gcb {

struct UnknownExample : GcbError {
  explicit UnknownExample(const std::string& name)
      : GcbError("unknown example '" + name + "'") {}
};

struct CheckRun {
  std::string name;
  std::string verdict;  // pass | fail | error
  CheckReport report;
  std::string error;
};

struct EngineResult {
  std::vector<CheckRun> checks;
  long elapsedMs = 0;

  bool pass() const;
  int exitCode() const { return pass() ? 0 : 1; }
  std::string human(bool full) const;
  std::string json() const;  // schema 1
};

// check names: almost, integrable, jacobi, contact, hitchin, gc, im,
// multiplicative; empty list = every check whose sections are present
EngineResult runChecks(const ModelData& m, const std::vector<std::string>& names);
std::vector<std::string> applicableChecks(const ModelData& m);

StructureFile homogenizeFile(const StructureFile& f, const std::string& fiberName = "r");
StructureFile dehomogenizeFile(const StructureFile& f);
StructureFile induceImFile(const StructureFile& f);

std::vector<std::pair<std::string, std::string>> exampleCatalog();
std::string exampleFile(const std::string& name);  // throws UnknownExample

}  // namespace gcb

#endif
