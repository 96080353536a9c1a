#include "gcb/engine.hpp"

#include "gcb/hitchin.hpp"

#include "json.hpp"

#include <chrono>
#include <sstream>

namespace gcb {

namespace {

const char* kConventions =
    "exact rational-function arithmetic at a generic point; contact triples "
    "follow the (phi, J, omega) = (0, inverse(Omega), -Omega) sign convention";

CheckRun runOne(const std::string& name, const std::function<CheckReport()>& fn) {
  CheckRun r;
  r.name = name;
  try {
    r.report = fn();
    r.verdict = r.report.pass() ? "pass" : "fail";
  } catch (const GcbError& e) {
    r.verdict = "error";
    r.error = e.what();
  }
  return r;
}

CheckReport merged(std::initializer_list<CheckReport> reports) {
  CheckReport out;
  for (auto& r : reports)
    for (auto& i : r.items) out.items.push_back(i);
  return out;
}

CheckReport contactCheck(const ModelData& m) {
  if (!m.theta) throw GcbError("contact check needs a [theta] section");
  CheckReport rep;
  ContactAtiyah a = contactToAtiyah(StructureForm(*m.theta));
  AtiyahForm d = atiyahD(a.omega);
  rep.add("closed", d.isZero(), d.isZero() ? "" : d.str());
  rep.add("nondegenerate", a.nondegenerate,
          a.nondegenerate ? "" : "flat frame matrix is singular");
  if (m.theta2 && m.transition) {
    ContactAtiyah b = contactToAtiyah(StructureForm(*m.theta2));
    rep.add("nondegenerate2", b.nondegenerate,
            b.nondegenerate ? "" : "flat frame matrix is singular");
    AtiyahForm r = atlasCompat(a.omega, b.omega, *m.transition);
    rep.add("atlas_compat", r.isZero(), r.isZero() ? "" : r.str());
  }
  return rep;
}

CheckReport imCheck(const ModelData& m) {
  if (!m.algebroid) throw GcbError("im check needs an [algebroid] section");
  const ImForm& f = m.imform ? *m.imform
                             : ImForm::zero(m.chart, m.algebroid->rank, 2);
  return merged({checkLieAlgebroid(*m.algebroid), checkFlatConnection(*m.algebroid),
                 checkImForm(*m.algebroid, f)});
}

CheckReport multiplicativeCheck(const ModelData& m) {
  if (!m.groupoid) throw GcbError("multiplicative check needs a [groupoid] section");
  if (!m.gomega) throw GcbError("multiplicative check needs a [gomega] section");
  return merged({checkGroupoid(*m.groupoid), checkMultiplicative(*m.groupoid, *m.gomega)});
}

CheckReport gcCheck(const ModelData& m) {
  if (!m.gc) throw GcbError("gc check needs a [gc] section");
  return merged({checkHomogeneity(*m.gc), checkGc(*m.gc)});
}

CheckReport hitchinCheck(const ModelData& m) {
  if (!m.omega) throw GcbError("hitchin check needs an [omega] section");
  return checkHitchinPair({*m.omega, m.phi ? *m.phi : EndoDL::zero(m.chart)});
}

std::string truncate(const std::string& s, bool full) {
  if (full || s.size() <= 120) return s;
  return s.substr(0, 117) + "...";
}

void appendKForm(StructSection& s, const std::string& prefix, const KForm& w) {
  for (auto& [idx, coeff] : w.comp) {
    std::string key = prefix;
    for (int i : idx) key += "_" + std::to_string(i);
    s.entries.push_back({key, coeff.str(), 0});
  }
}

void appendPolyvector(StructSection& s, const std::string& prefix, const Polyvector& p) {
  for (auto& [idx, coeff] : p.comp) {
    std::string key = prefix;
    for (int i : idx) key += "_" + std::to_string(i);
    s.entries.push_back({key, coeff.str(), 0});
  }
}

void appendManifold(StructureFile& out, const Chart& c) {
  StructSection& man = out.add("manifold");
  std::string coords;
  for (int i = 0; i < c.dim(); ++i) coords += (i ? ", " : "") + c.coordName(i);
  man.entries.push_back({"coords", coords, 0});
}

void appendTriple(StructureFile& out, const GacsTriple& t) {
  const Chart& c = t.chart();
  StructSection& phi = out.add("phi");
  for (int i = 0; i < c.dim(); ++i)
    for (int j = 0; j < c.dim(); ++j)
      if (!t.phi.A.at(i, j).isZero())
        phi.entries.push_back(
            {"A_" + std::to_string(i) + "_" + std::to_string(j), t.phi.A.at(i, j).str(), 0});
  for (int i = 0; i < c.dim(); ++i)
    if (!t.phi.b.comp[static_cast<size_t>(i)].isZero())
      phi.entries.push_back(
          {"b_" + std::to_string(i), t.phi.b.comp[static_cast<size_t>(i)].str(), 0});
  appendKForm(phi, "xi", t.phi.xi);
  if (!t.phi.c.isZero()) phi.entries.push_back({"c", t.phi.c.str(), 0});

  StructSection& J = out.add("J");
  appendPolyvector(J, "lambda", t.J.lambda);
  for (int i = 0; i < c.dim(); ++i)
    if (!t.J.euler.comp[static_cast<size_t>(i)].isZero())
      J.entries.push_back(
          {"E_" + std::to_string(i), t.J.euler.comp[static_cast<size_t>(i)].str(), 0});

  StructSection& w = out.add("omega");
  appendKForm(w, "w0", t.omega.comp0);
  appendKForm(w, "w1", t.omega.comp1);
}

}  // namespace

bool EngineResult::pass() const {
  for (auto& c : checks)
    if (c.verdict != "pass") return false;
  return true;
}

std::string EngineResult::human(bool full) const {
  std::ostringstream os;
  for (auto& c : checks) {
    os << c.name << ": " << c.verdict << "\n";
    if (c.verdict == "error") {
      os << "  error: " << c.error << "\n";
      continue;
    }
    for (auto& i : c.report.items)
      if (!i.zero) os << "  " << i.name << ": " << truncate(i.detail, full) << "\n";
  }
  return os.str();
}

std::string EngineResult::json() const {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["conventions"] = kConventions;
  doc["elapsed_ms"] = elapsedMs;
  doc["pass"] = pass();
  doc["checks"] = nlohmann::json::array();
  for (auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["verdict"] = c.verdict;
    if (c.verdict == "error") jc["error"] = c.error;
    jc["items"] = nlohmann::json::array();
    for (auto& i : c.report.items)
      jc["items"].push_back({{"name", i.name}, {"zero", i.zero}, {"residual", i.detail}});
    doc["checks"].push_back(jc);
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> applicableChecks(const ModelData& m) {
  std::vector<std::string> out;
  if (m.phi || m.J || m.omega) {
    out.push_back("almost");
    out.push_back("integrable");
  }
  if (m.J) out.push_back("jacobi");
  if (m.theta) out.push_back("contact");
  if (m.omega) out.push_back("hitchin");
  if (m.gc) out.push_back("gc");
  if (m.algebroid) out.push_back("im");
  if (m.gomega) out.push_back("multiplicative");
  return out;
}

EngineResult runChecks(const ModelData& m, const std::vector<std::string>& names) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> run = names.empty() ? applicableChecks(m) : names;
  EngineResult res;
  for (auto& name : run) {
    if (name == "almost")
      res.checks.push_back(runOne(name, [&] { return checkAlmost(m.triple()); }));
    else if (name == "integrable")
      res.checks.push_back(runOne(name, [&] { return checkIntegrable(m.triple()); }));
    else if (name == "jacobi")
      res.checks.push_back(runOne(
          name, [&] { return checkJacobi(m.J ? *m.J : JacobiBivector::zero(m.chart)); }));
    else if (name == "contact")
      res.checks.push_back(runOne(name, [&] { return contactCheck(m); }));
    else if (name == "hitchin")
      res.checks.push_back(runOne(name, [&] { return hitchinCheck(m); }));
    else if (name == "gc")
      res.checks.push_back(runOne(name, [&] { return gcCheck(m); }));
    else if (name == "im")
      res.checks.push_back(runOne(name, [&] { return imCheck(m); }));
    else if (name == "multiplicative")
      res.checks.push_back(runOne(name, [&] { return multiplicativeCheck(m); }));
    else
      throw GcbError("unknown check '" + name + "'");
  }
  res.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return res;
}

StructureFile homogenizeFile(const StructureFile& f, const std::string& fiberName) {
  ModelData m = buildModel(f);
  GcTriple g = homogenize(m.triple(), fiberName);
  StructureFile out;
  appendManifold(out, g.chart);
  StructSection& s = out.add("gc");
  for (int i = 0; i < g.chart.dim(); ++i)
    for (int j = 0; j < g.chart.dim(); ++j)
      if (!g.a.at(i, j).isZero())
        s.entries.push_back(
            {"a_" + std::to_string(i) + "_" + std::to_string(j), g.a.at(i, j).str(), 0});
  appendPolyvector(s, "pi", g.pi);
  appendKForm(s, "sigma", g.sigma);
  return out;
}

StructureFile dehomogenizeFile(const StructureFile& f) {
  ModelData m = buildModel(f);
  if (!m.gc) throw GcbError("dehomogenize needs a [gc] section");
  GacsTriple t = dehomogenize(*m.gc);
  StructureFile out;
  appendManifold(out, t.chart());
  appendTriple(out, t);
  return out;
}

StructureFile induceImFile(const StructureFile& f) {
  ModelData m = buildModel(f);
  if (!m.groupoid || !m.gomega)
    throw GcbError("induce-im needs [groupoid] and [gomega] sections");
  LieAlgebroidPresentation alg = lieFunctor(*m.groupoid);
  ImForm im = inducedImForm(*m.groupoid, *m.gomega);
  StructureFile out;
  appendManifold(out, m.chart);
  StructSection& a = out.add("algebroid");
  a.entries.push_back({"rank", std::to_string(alg.rank), 0});
  for (int i = 0; i < alg.rank; ++i)
    for (int j = 0; j < m.chart.dim(); ++j)
      if (!alg.rho[static_cast<size_t>(i)].comp[static_cast<size_t>(j)].isZero())
        a.entries.push_back({"rho_" + std::to_string(i) + "_" + std::to_string(j),
                             alg.rho[static_cast<size_t>(i)].comp[static_cast<size_t>(j)].str(), 0});
  for (int i = 0; i < alg.rank; ++i)
    if (!alg.gamma[static_cast<size_t>(i)].isZero())
      a.entries.push_back({"gamma_" + std::to_string(i), alg.gamma[static_cast<size_t>(i)].str(), 0});
  for (auto& [ij, sec] : alg.c)
    for (int k = 0; k < alg.rank; ++k)
      if (!sec[static_cast<size_t>(k)].isZero())
        a.entries.push_back({"c_" + std::to_string(ij.first) + "_" + std::to_string(ij.second) +
                                 "_" + std::to_string(k),
                             sec[static_cast<size_t>(k)].str(), 0});
  StructSection& s = out.add("imform");
  s.entries.push_back({"degree", std::to_string(im.degree), 0});
  for (int i = 0; i < alg.rank; ++i) {
    appendKForm(s, "l_" + std::to_string(i) + "_0", im.l[static_cast<size_t>(i)].comp0);
    appendKForm(s, "l_" + std::to_string(i) + "_1", im.l[static_cast<size_t>(i)].comp1);
    appendKForm(s, "d_" + std::to_string(i) + "_0", im.d[static_cast<size_t>(i)].comp0);
    appendKForm(s, "d_" + std::to_string(i) + "_1", im.d[static_cast<size_t>(i)].comp1);
  }
  return out;
}

}  // namespace gcb
