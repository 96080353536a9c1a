#include "gcb/structure_file.hpp"

#include <sstream>

namespace gcb {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& what, int line) { throw ParseError(what, line, 1); }

std::vector<std::string> splitList(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// key suffix "_i_j_..." after the given prefix; empty when the key is bare
std::vector<int> keyIndices(const std::string& key, const std::string& prefix, int line) {
  if (key == prefix) return {};
  std::vector<int> out;
  for (auto& part : splitList(key.substr(prefix.size() + 1), '_')) {
    try {
      size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      fail("malformed index in key '" + key + "'", line);
    }
  }
  return out;
}

bool keyHasPrefix(const std::string& key, const std::string& prefix) {
  return key == prefix || (key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0 &&
                           key[prefix.size()] == '_');
}

struct ExprReader {
  const Chart& chart;

  RationalExpr operator()(const StructEntry& e) const {
    RationalExpr r = parseExpr(e.value, e.line);
    std::vector<int> vars;
    r.collectVars(vars);
    for (int v : vars)
      if (chart.indexOf(v) < 0)
        fail("undeclared coordinate '" + VarTable::name(v) + "'", e.line);
    return r;
  }
};

void checkIndexRange(const std::vector<int>& idx, int dim, int line) {
  for (int i : idx)
    if (i >= dim) fail("coordinate index " + std::to_string(i) + " out of range", line);
}

Chart readChart(const StructSection& s) {
  const StructEntry* coords = s.find("coords");
  if (!coords) fail("section [" + s.name + "] needs a coords entry", s.line);
  auto names = splitList(coords->value, ',');
  if (names.empty()) fail("empty coordinate list", coords->line);
  return Chart(names);
}

KForm readKFormSection(const StructSection& s, const Chart& c, const std::string& prefix,
                       int degree) {
  ExprReader rd{c};
  KForm w(c, degree);
  for (auto& e : s.entries) {
    if (!keyHasPrefix(e.key, prefix)) continue;
    Index idx = keyIndices(e.key, prefix, e.line);
    if (static_cast<int>(idx.size()) != degree)
      fail("key '" + e.key + "' needs " + std::to_string(degree) + " indices", e.line);
    checkIndexRange(idx, c.dim(), e.line);
    w.add(idx, rd(e));
  }
  return w;
}

AtiyahForm readAtiyahSection(const StructSection& s, const Chart& c, int defaultDegree) {
  int degree = defaultDegree;
  if (const StructEntry* d = s.find("degree")) degree = std::stoi(d->value);
  AtiyahForm w(c, degree);
  w.comp0 = readKFormSection(s, c, "w0", degree);
  w.comp1 = readKFormSection(s, c, "w1", degree - 1);
  return w;
}

EndoDL readPhi(const StructSection& s, const Chart& c) {
  ExprReader rd{c};
  EndoDL phi(c);
  for (auto& e : s.entries) {
    if (keyHasPrefix(e.key, "A")) {
      Index idx = keyIndices(e.key, "A", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      phi.A.at(idx[0], idx[1]) = rd(e);
    } else if (keyHasPrefix(e.key, "b")) {
      Index idx = keyIndices(e.key, "b", e.line);
      if (idx.size() != 1) fail("key '" + e.key + "' needs one index", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      phi.b.comp[static_cast<size_t>(idx[0])] = rd(e);
    } else if (keyHasPrefix(e.key, "xi")) {
      Index idx = keyIndices(e.key, "xi", e.line);
      if (idx.size() != 1) fail("key '" + e.key + "' needs one index", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      phi.xi.add(idx, rd(e));
    } else if (e.key == "c") {
      phi.c = rd(e);
    } else {
      fail("unknown key '" + e.key + "' in [phi]", e.line);
    }
  }
  return phi;
}

JacobiBivector readJ(const StructSection& s, const Chart& c) {
  ExprReader rd{c};
  JacobiBivector J = JacobiBivector::zero(c);
  for (auto& e : s.entries) {
    if (keyHasPrefix(e.key, "lambda")) {
      Index idx = keyIndices(e.key, "lambda", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      J.lambda.add(idx, rd(e));
    } else if (keyHasPrefix(e.key, "E")) {
      Index idx = keyIndices(e.key, "E", e.line);
      if (idx.size() != 1) fail("key '" + e.key + "' needs one index", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      J.euler.comp[static_cast<size_t>(idx[0])] = rd(e);
    } else {
      fail("unknown key '" + e.key + "' in [J]", e.line);
    }
  }
  return J;
}

GcTriple readGc(const StructSection& s, const Chart& c) {
  ExprReader rd{c};
  GcTriple g;
  g.chart = c;
  g.a = Matrix(c.dim(), c.dim());
  g.pi = Polyvector(c, 2);
  g.sigma = KForm(c, 2);
  for (auto& e : s.entries) {
    if (keyHasPrefix(e.key, "a")) {
      Index idx = keyIndices(e.key, "a", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      g.a.at(idx[0], idx[1]) = rd(e);
    } else if (keyHasPrefix(e.key, "pi")) {
      Index idx = keyIndices(e.key, "pi", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      g.pi.add(idx, rd(e));
    } else if (keyHasPrefix(e.key, "sigma")) {
      Index idx = keyIndices(e.key, "sigma", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      checkIndexRange(idx, c.dim(), e.line);
      g.sigma.add(idx, rd(e));
    } else {
      fail("unknown key '" + e.key + "' in [gc]", e.line);
    }
  }
  return g;
}

LieAlgebroidPresentation readAlgebroid(const StructSection& s, const Chart& c) {
  ExprReader rd{c};
  const StructEntry* rk = s.find("rank");
  if (!rk) fail("[algebroid] needs a rank entry", s.line);
  int rank = std::stoi(rk->value);
  LieAlgebroidPresentation alg;
  alg.chart = c;
  alg.rank = rank;
  alg.rho.assign(static_cast<size_t>(rank), VectorField(c));
  alg.gamma.assign(static_cast<size_t>(rank), RationalExpr());
  for (auto& e : s.entries) {
    if (e.key == "rank") continue;
    if (keyHasPrefix(e.key, "rho")) {
      Index idx = keyIndices(e.key, "rho", e.line);
      if (idx.size() != 2) fail("key '" + e.key + "' needs two indices", e.line);
      if (idx[0] >= rank) fail("frame index out of range", e.line);
      checkIndexRange({idx[1]}, c.dim(), e.line);
      alg.rho[static_cast<size_t>(idx[0])].comp[static_cast<size_t>(idx[1])] = rd(e);
    } else if (keyHasPrefix(e.key, "gamma")) {
      Index idx = keyIndices(e.key, "gamma", e.line);
      if (idx.size() != 1 || idx[0] >= rank) fail("bad gamma index", e.line);
      alg.gamma[static_cast<size_t>(idx[0])] = rd(e);
    } else if (keyHasPrefix(e.key, "c")) {
      Index idx = keyIndices(e.key, "c", e.line);
      if (idx.size() != 3 || idx[0] >= rank || idx[1] >= rank || idx[2] >= rank ||
          idx[0] >= idx[1])
        fail("structure key needs indices i < j and a frame index", e.line);
      auto& sec = alg.c[{idx[0], idx[1]}];
      if (sec.empty()) sec.assign(static_cast<size_t>(rank), RationalExpr());
      sec[static_cast<size_t>(idx[2])] = rd(e);
    } else {
      fail("unknown key '" + e.key + "' in [algebroid]", e.line);
    }
  }
  return alg;
}

ImForm readImForm(const StructSection& s, const Chart& c, int rank) {
  const StructEntry* dg = s.find("degree");
  int degree = dg ? std::stoi(dg->value) : 2;
  ImForm f = ImForm::zero(c, rank, degree);
  ExprReader rd{c};
  for (auto& e : s.entries) {
    if (e.key == "degree") continue;
    bool isL = keyHasPrefix(e.key, "l");
    bool isD = keyHasPrefix(e.key, "d");
    if (!isL && !isD) fail("unknown key '" + e.key + "' in [imform]", e.line);
    Index idx = keyIndices(e.key, isL ? "l" : "d", e.line);
    if (idx.size() < 2) fail("key '" + e.key + "' needs a frame index and a component tag", e.line);
    int frame = idx[0], comp = idx[1];
    if (frame >= rank || (comp != 0 && comp != 1)) fail("bad imform key '" + e.key + "'", e.line);
    Index rest(idx.begin() + 2, idx.end());
    checkIndexRange(rest, c.dim(), e.line);
    AtiyahForm& target = isL ? f.l[static_cast<size_t>(frame)] : f.d[static_cast<size_t>(frame)];
    int want = (comp == 0 ? target.degree : target.degree - 1);
    if (static_cast<int>(rest.size()) != want)
      fail("key '" + e.key + "' needs " + std::to_string(want) + " component indices", e.line);
    (comp == 0 ? target.comp0 : target.comp1).add(rest, rd(e));
  }
  return f;
}

GroupoidPresentation readGroupoid(const StructSection& s, const Chart& c) {
  const StructEntry* ty = s.find("type");
  if (!ty) fail("[groupoid] needs a type entry", s.line);
  GroupoidPresentation G;
  if (ty->value == "pair") {
    G = GroupoidPresentation::pairGroupoid(c);
  } else if (ty->value == "bundle") {
    const StructEntry* fb = s.find("fiber");
    G = GroupoidPresentation::bundleOfGroups(c, fb ? fb->value : "a");
  } else if (ty->value == "unit") {
    G = GroupoidPresentation::unitGroupoid(c);
  } else {
    fail("unknown groupoid type '" + ty->value + "'", ty->line);
  }
  if (const StructEntry* dr = s.find("deltarep")) G.deltaRep = ExprReader{G.g}(*dr);
  for (auto& e : s.entries)
    if (e.key != "type" && e.key != "fiber" && e.key != "deltarep")
      fail("unknown key '" + e.key + "' in [groupoid]", e.line);
  return G;
}

}  // namespace

const StructEntry* StructSection::find(const std::string& key) const {
  for (auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const StructSection* StructureFile::find(const std::string& name) const {
  for (auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

StructSection& StructureFile::add(const std::string& name) {
  sections.push_back({name, {}, 0});
  return sections.back();
}

StructureFile parseStructureFile(const std::string& text) {
  StructureFile f;
  StructSection* cur = nullptr;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string l = trim(raw);
    if (l.empty() || l[0] == '#') continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail("unterminated section header", line);
      std::string name = trim(l.substr(1, l.size() - 2));
      if (name.empty()) fail("empty section name", line);
      f.sections.push_back({name, {}, line});
      cur = &f.sections.back();
      continue;
    }
    size_t eq = l.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'", line);
    if (!cur) fail("entry before any section header", line);
    std::string key = trim(l.substr(0, eq)), value = trim(l.substr(eq + 1));
    if (key.empty() || value.empty()) fail("expected 'key = value'", line);
    cur->entries.push_back({key, value, line});
  }
  return f;
}

std::string serializeStructureFile(const StructureFile& f) {
  std::ostringstream os;
  bool first = true;
  for (auto& s : f.sections) {
    if (!first) os << "\n";
    first = false;
    os << "[" << s.name << "]\n";
    for (auto& e : s.entries) os << e.key << " = " << e.value << "\n";
  }
  return os.str();
}

GacsTriple ModelData::triple() const {
  return {phi ? *phi : EndoDL::zero(chart), J ? *J : JacobiBivector::zero(chart),
          omega ? *omega : AtiyahForm(chart, 2)};
}

ModelData buildModel(const StructureFile& f) {
  const StructSection* man = f.find("manifold");
  if (!man) throw ParseError("missing [manifold] section", 1, 1);
  ModelData m;
  m.chart = readChart(*man);

  if (const StructSection* s = f.find("manifold2")) m.chart2 = readChart(*s);
  if (const StructSection* s = f.find("transition")) {
    if (!m.chart2) fail("[transition] requires [manifold2]", s->line);
    ExprReader rd{m.chart};
    std::vector<RationalExpr> comps(static_cast<size_t>(m.chart2->dim()));
    for (auto& e : s->entries) {
      if (e.key == "kappa") continue;
      if (!keyHasPrefix(e.key, "to")) fail("unknown key '" + e.key + "' in [transition]", e.line);
      Index idx = keyIndices(e.key, "to", e.line);
      if (idx.size() != 1) fail("key '" + e.key + "' needs one index", e.line);
      checkIndexRange(idx, m.chart2->dim(), e.line);
      comps[static_cast<size_t>(idx[0])] = rd(e);
    }
    const StructEntry* k = s->find("kappa");
    if (!k) fail("[transition] needs a kappa entry", s->line);
    m.transition = TransitionData(ChartMap(m.chart, *m.chart2, comps), rd(*k));
  }

  if (const StructSection* s = f.find("phi")) m.phi = readPhi(*s, m.chart);
  if (const StructSection* s = f.find("J")) m.J = readJ(*s, m.chart);
  if (const StructSection* s = f.find("omega")) m.omega = readAtiyahSection(*s, m.chart, 2);
  if (const StructSection* s = f.find("theta")) m.theta = readKFormSection(*s, m.chart, "c", 1);
  if (const StructSection* s = f.find("theta2")) {
    if (!m.chart2) fail("[theta2] requires [manifold2]", s->line);
    m.theta2 = readKFormSection(*s, *m.chart2, "c", 1);
  }
  if (const StructSection* s = f.find("gc")) m.gc = readGc(*s, m.chart);
  if (const StructSection* s = f.find("algebroid")) m.algebroid = readAlgebroid(*s, m.chart);
  if (const StructSection* s = f.find("imform")) {
    if (!m.algebroid) fail("[imform] requires [algebroid]", s->line);
    m.imform = readImForm(*s, m.chart, m.algebroid->rank);
  }
  if (const StructSection* s = f.find("groupoid")) m.groupoid = readGroupoid(*s, m.chart);
  if (const StructSection* s = f.find("gomega")) {
    if (!m.groupoid) fail("[gomega] requires [groupoid]", s->line);
    m.gomega = readAtiyahSection(*s, m.groupoid->g, 2);
  }
  return m;
}

}  // namespace gcb
