#ifndef GCB_STRUCTURE_FILE_HPP
#define GCB_STRUCTURE_FILE_HPP

#include "gcb/homog.hpp"
#include "gcb/imgroupoid.hpp"

#include <optional>

namespace gcb {

// Sectioned text format: `[section]` headers and `key = value` entries.
struct StructEntry {
  std::string key, value;
  int line = 0;
};

struct StructSection {
  std::string name;
  std::vector<StructEntry> entries;
  int line = 0;

  const StructEntry* find(const std::string& key) const;
};

struct StructureFile {
  std::vector<StructSection> sections;

  const StructSection* find(const std::string& name) const;
  StructSection& add(const std::string& name);
};

StructureFile parseStructureFile(const std::string& text);
std::string serializeStructureFile(const StructureFile& f);

// Structure data decoded from the sections; absent blocks are left empty.
struct ModelData {
  Chart chart;
  std::optional<Chart> chart2;
  std::optional<TransitionData> transition;  // chart -> chart2 with cocycle
  std::optional<EndoDL> phi;
  std::optional<JacobiBivector> J;
  std::optional<AtiyahForm> omega;
  std::optional<KForm> theta, theta2;
  std::optional<GcTriple> gc;
  std::optional<LieAlgebroidPresentation> algebroid;
  std::optional<ImForm> imform;
  std::optional<GroupoidPresentation> groupoid;
  std::optional<AtiyahForm> gomega;  // on the arrow chart of the groupoid

  GacsTriple triple() const;  // phi/J/omega with zero defaults
};

// throws ParseError (with the entry's line) on undeclared coordinates,
// malformed indices, or expression syntax errors
ModelData buildModel(const StructureFile& f);

}  // namespace gcb

#endif
