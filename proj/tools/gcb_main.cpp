#include "gcb/engine.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gcb::GcbError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw gcb::GcbError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic checks for generalized contact bundle data"};
  app.require_subcommand(1);

  std::string file, outPath, reportPath, exampleName;
  bool full = false;
  app.add_flag("--full", full, "print full residual expressions");
  app.add_option("--report", reportPath, "write a JSON report (schema 1)");

  auto* check = app.add_subcommand("check", "run verification checks on a structure file");
  check->fallthrough();
  check->add_option("file", file)->required();
  std::vector<std::string> checkNames;
  bool allChecks = false;
  for (const char* name : {"almost", "integrable", "jacobi", "contact", "hitchin", "gc",
                           "im", "multiplicative"})
    check->add_flag_callback(std::string("--") + name,
                             [&checkNames, name] { checkNames.push_back(name); });
  check->add_flag("--all", allChecks, "run every applicable check");

  auto* homog = app.add_subcommand("homogenize", "build the homogenized triple");
  homog->fallthrough();
  homog->add_option("file", file)->required();
  homog->add_option("-o,--output", outPath)->required();

  auto* dehomog = app.add_subcommand("dehomogenize", "read the triple back at the unit slice");
  dehomog->fallthrough();
  dehomog->add_option("file", file)->required();
  dehomog->add_option("-o,--output", outPath)->required();

  auto* induce = app.add_subcommand("induce-im", "induced IM form of a multiplicative form");
  induce->fallthrough();
  induce->add_option("file", file)->required();
  induce->add_option("-o,--output", outPath)->required();

  auto* examples = app.add_subcommand("examples", "list or emit built-in example files");
  examples->add_option("name", exampleName);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (examples->parsed()) {
      if (exampleName.empty()) {
        for (auto& [name, desc] : gcb::exampleCatalog())
          std::cout << name << " - " << desc << "\n";
      } else {
        std::cout << gcb::exampleFile(exampleName);
      }
      return 0;
    }
    if (check->parsed()) {
      gcb::ModelData m = gcb::buildModel(gcb::parseStructureFile(readFile(file)));
      if (allChecks) checkNames.clear();
      gcb::EngineResult res = gcb::runChecks(m, checkNames);
      std::cout << res.human(full);
      if (!reportPath.empty()) writeFile(reportPath, res.json());
      return res.exitCode();
    }
    gcb::StructureFile in = gcb::parseStructureFile(readFile(file));
    gcb::StructureFile out;
    if (homog->parsed())
      out = gcb::homogenizeFile(in);
    else if (dehomog->parsed())
      out = gcb::dehomogenizeFile(in);
    else
      out = gcb::induceImFile(in);
    writeFile(outPath, gcb::serializeStructureFile(out));
    return 0;
  } catch (const gcb::ParseError& e) {
    std::cerr << "parse error at line " << e.line << ": " << e.what() << "\n";
    return 2;
  } catch (const gcb::UnknownExample& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gcb::GcbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
