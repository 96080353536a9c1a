#include "gcb/homog.hpp"

namespace gcb {

namespace {

VectorField matApply(const Chart& c, const Matrix& a, const VectorField& y) {
  VectorField v(c);
  for (int i = 0; i < c.dim(); ++i) {
    RationalExpr acc;
    for (int j = 0; j < c.dim(); ++j)
      acc = acc + a.at(i, j) * y.comp[static_cast<size_t>(j)];
    v.comp[static_cast<size_t>(i)] = acc;
  }
  return v;
}

KForm matCoApply(const Chart& c, const Matrix& a, const KForm& xi) {
  KForm r(c, 1);
  for (int i = 0; i < c.dim(); ++i) {
    RationalExpr acc;
    for (int j = 0; j < c.dim(); ++j) acc = acc + xi.coeff(Index{j}) * a.at(j, i);
    r.add(Index{i}, acc);
  }
  return r;
}

std::string gtStr(const GtSection& e) {
  return "(" + e.x.str() + ", " + e.xi.str() + ")";
}

}  // namespace

VectorField GcTriple::euler() const {
  VectorField e(chart);
  e.comp[static_cast<size_t>(fiberIndex())] = chart.coordExpr(fiberIndex());
  return e;
}

GcTriple homogenize(const GacsTriple& t, const std::string& fiberName) {
  const Chart& c = t.chart();
  int n = c.dim();
  GcTriple g;
  g.chart = c.extended(fiberName);
  RationalExpr r = g.chart.coordExpr(n);

  g.a = Matrix(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.a.at(i, j) = t.phi.A.at(i, j);
  for (int j = 0; j < n; ++j) g.a.at(n, j) = t.phi.xi.coeff(Index{j}) * r;
  for (int i = 0; i < n; ++i) g.a.at(i, n) = t.phi.b.comp[static_cast<size_t>(i)] / r;
  g.a.at(n, n) = t.phi.c;

  g.pi = Polyvector(g.chart, 2);
  for (auto& [idx, coeff] : t.J.lambda.comp) g.pi.add(idx, coeff / r);
  for (int i = 0; i < n; ++i)
    g.pi.add(Index{i, n}, -t.J.euler.comp[static_cast<size_t>(i)]);

  g.sigma = KForm(g.chart, 2);
  for (auto& [idx, coeff] : t.omega.comp0.comp) g.sigma.add(idx, coeff * r);
  for (int i = 0; i < n; ++i) g.sigma.add(Index{i, n}, -t.omega.comp1.coeff(Index{i}));
  return g;
}

CheckReport checkHomogeneity(const GcTriple& g) {
  const Chart& c = g.chart;
  VectorField E = g.euler();
  CheckReport rep;

  bool aZero = true;
  std::string aDetail;
  for (int j = 0; j < c.dim(); ++j) {
    VectorField x = VectorField::coordinate(c, j);
    VectorField res = lieBracket(E, matApply(c, g.a, x)) - matApply(c, g.a, lieBracket(E, x));
    if (!res.isZero() && aZero) {
      aZero = false;
      aDetail = res.str();
    }
  }
  rep.add("a_degree", aZero, aDetail);

  Polyvector pres = lie(E, g.pi) + g.pi;
  rep.add("pi_degree", pres.isZero(), pres.isZero() ? "" : pres.str());

  KForm sres = lie(E, g.sigma) - g.sigma;
  rep.add("sigma_degree", sres.isZero(), sres.isZero() ? "" : sres.str());
  return rep;
}

GtSection classicalDorfman(const GtSection& e, const GtSection& f) {
  return {lieBracket(e.x, f.x), lie(e.x, f.xi) - contract(f.x, exteriorD(e.xi))};
}

GtSection gcApply(const GcTriple& g, const GtSection& e) {
  const Chart& c = g.chart;
  VectorField sharp(c);
  for (int j = 0; j < c.dim(); ++j) {
    RationalExpr acc;
    for (int i = 0; i < c.dim(); ++i) {
      if (i == j) continue;
      Index idx{std::min(i, j), std::max(i, j)};
      RationalExpr p = g.pi.coeff(idx);
      if (i > j) p = -p;
      acc = acc + e.xi.coeff(Index{i}) * p;
    }
    sharp.comp[static_cast<size_t>(j)] = acc;
  }
  return {matApply(c, g.a, e.x) + sharp,
          contract(e.x, g.sigma) - matCoApply(c, g.a, e.xi)};
}

CheckReport checkGc(const GcTriple& g) {
  const Chart& c = g.chart;
  CheckReport rep;
  std::vector<GtSection> frame;
  for (int i = 0; i < c.dim(); ++i)
    frame.push_back({VectorField::coordinate(c, i), KForm(c, 1)});
  for (int i = 0; i < c.dim(); ++i)
    frame.push_back({VectorField(c), KForm::dcoord(c, i)});

  bool sq = true;
  std::string sqDetail;
  for (auto& e : frame) {
    GtSection r = gcApply(g, gcApply(g, e)) + e;
    if (!r.isZero() && sq) {
      sq = false;
      sqDetail = gtStr(r);
    }
  }
  rep.add("jsq_plus_id", sq, sqDetail);

  auto pairing = [](const GtSection& e, const GtSection& f) {
    return evaluate(e.xi, {f.x}) + evaluate(f.xi, {e.x});
  };
  bool skew = true;
  std::string skewDetail;
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = i; j < frame.size(); ++j) {
      RationalExpr r = pairing(gcApply(g, frame[i]), frame[j]) +
                       pairing(frame[i], gcApply(g, frame[j]));
      if (!r.isZero() && skew) {
        skew = false;
        skewDetail = r.str();
      }
    }
  rep.add("skew", skew, skewDetail);

  std::vector<GtSection> secs;
  std::vector<RationalExpr> mult{RationalExpr::fromInt(1)};
  for (int i = 0; i < c.dim(); ++i) mult.push_back(c.coordExpr(i));
  for (auto& m : mult)
    for (auto& e : frame) secs.push_back(e.scaled(m));

  bool tor = true;
  std::string torDetail;
  for (size_t i = 0; i < secs.size() && tor; ++i)
    for (size_t j = i + 1; j < secs.size() && tor; ++j) {
      GtSection a = gcApply(g, secs[i]), b = gcApply(g, secs[j]);
      GtSection r = classicalDorfman(a, b) - classicalDorfman(secs[i], secs[j]) -
                    gcApply(g, classicalDorfman(a, secs[j])) -
                    gcApply(g, classicalDorfman(secs[i], b));
      if (!r.isZero()) {
        tor = false;
        torDetail = gtStr(r);
      }
    }
  rep.add("torsion", tor, torDetail);
  return rep;
}

GacsTriple dehomogenize(const GcTriple& g) {
  if (!checkHomogeneity(g).pass()) throw NotHomogeneous();
  const Chart& ce = g.chart;
  int n = ce.dim() - 1;
  Chart c;
  for (int i = 0; i < n; ++i) c.coords.push_back(ce.coordVar(i));
  std::map<int, RationalExpr> atOne{{ce.coordVar(n), RationalExpr::fromInt(1)}};
  auto ev = [&](const RationalExpr& e) { return e.subst(atOne); };

  EndoDL phi(c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi.A.at(i, j) = ev(g.a.at(i, j));
  for (int j = 0; j < n; ++j) phi.xi.add(Index{j}, ev(g.a.at(n, j)));
  for (int i = 0; i < n; ++i) phi.b.comp[static_cast<size_t>(i)] = ev(g.a.at(i, n));
  phi.c = ev(g.a.at(n, n));

  JacobiBivector J(Polyvector(c, 2), VectorField(c));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) J.lambda.add(Index{i, j}, ev(g.pi.coeff(Index{i, j})));
  for (int i = 0; i < n; ++i)
    J.euler.comp[static_cast<size_t>(i)] = -ev(g.pi.coeff(Index{i, n}));

  AtiyahForm omega(c, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) omega.comp0.add(Index{i, j}, ev(g.sigma.coeff(Index{i, j})));
  for (int i = 0; i < n; ++i) omega.comp1.add(Index{i}, -ev(g.sigma.coeff(Index{i, n})));

  return {phi, J, omega};
}

}  // namespace gcb
