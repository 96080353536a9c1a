#include "gcb/atiyah.hpp"

#include <sstream>

namespace gcb {

// ---------------------------------------------------------------------------
// AtiyahForm

AtiyahForm::AtiyahForm(KForm w0, KForm w1, bool lval)
    : chart(w0.chart), degree(w0.degree), comp0(std::move(w0)), comp1(std::move(w1)),
      lValued(lval) {
  if (comp1.degree != degree - 1) throw GcbError("Atiyah form component degree mismatch");
}

AtiyahForm AtiyahForm::section(const Chart& c, const RationalExpr& lambda) {
  AtiyahForm w(c, 0);
  w.comp0 = KForm::function(c, lambda);
  return w;
}

AtiyahForm AtiyahForm::fromBase(const KForm& w0, bool lval) {
  AtiyahForm w(w0.chart, w0.degree, lval);
  w.comp0 = w0;
  return w;
}

AtiyahForm AtiyahForm::operator+(const AtiyahForm& o) const {
  AtiyahForm r = *this;
  r.comp0 = comp0 + o.comp0;
  r.comp1 = comp1 + o.comp1;
  return r;
}
AtiyahForm AtiyahForm::operator-(const AtiyahForm& o) const { return *this + (-o); }
AtiyahForm AtiyahForm::operator-() const {
  AtiyahForm r = *this;
  r.comp0 = -comp0;
  r.comp1 = -comp1;
  return r;
}
AtiyahForm AtiyahForm::scaled(const RationalExpr& f) const {
  AtiyahForm r = *this;
  r.comp0 = comp0.scaled(f);
  r.comp1 = comp1.scaled(f);
  return r;
}

std::string AtiyahForm::str() const {
  std::ostringstream os;
  os << "(" << comp0.str() << ", " << comp1.str() << ")";
  return os.str();
}

AtiyahForm JetSection::asAtiyahForm() const {
  AtiyahForm w(alpha.chart, 1);
  w.comp0 = alpha;
  w.comp1 = KForm::function(alpha.chart, fn);
  return w;
}

JetSection JetSection::fromAtiyahForm(const AtiyahForm& w) {
  if (w.degree != 1) throw GcbError("jet section requires a degree-1 Atiyah form");
  return JetSection(w.comp0, w.comp1.coeff({}));
}

// ---------------------------------------------------------------------------
// EndoDL / EndoJ1

EndoDL EndoDL::identityEndo(const Chart& ch) {
  EndoDL e(ch);
  e.A = Matrix::identity(ch.dim());
  e.c = RationalExpr::fromInt(1);
  return e;
}

Derivation EndoDL::apply(const Derivation& d) const {
  VectorField v(chart);
  for (int i = 0; i < chart.dim(); ++i) {
    RationalExpr acc;
    for (int j = 0; j < chart.dim(); ++j)
      acc = acc + A.at(i, j) * d.sym.comp[static_cast<size_t>(j)];
    v.comp[static_cast<size_t>(i)] = acc + d.wt * b.comp[static_cast<size_t>(i)];
  }
  RationalExpr w = c * d.wt;
  for (int j = 0; j < chart.dim(); ++j)
    w = w + xi.coeff(Index{j}) * d.sym.comp[static_cast<size_t>(j)];
  return Derivation(v, w);
}

EndoDL EndoDL::operator+(const EndoDL& o) const {
  EndoDL r(chart);
  r.A = A + o.A;
  r.b = b + o.b;
  r.xi = xi + o.xi;
  r.c = c + o.c;
  return r;
}
EndoDL EndoDL::operator-(const EndoDL& o) const {
  EndoDL r(chart);
  r.A = A - o.A;
  r.b = b - o.b;
  r.xi = xi - o.xi;
  r.c = c - o.c;
  return r;
}
EndoDL EndoDL::scaled(const RationalExpr& f) const {
  EndoDL r(chart);
  r.A = A;
  for (auto& e : r.A.a) e = e * f;
  r.b = b.scaled(f);
  r.xi = xi.scaled(f);
  r.c = c * f;
  return r;
}

EndoDL EndoDL::compose(const EndoDL& inner) const {
  // read blocks off the action on the frame
  EndoDL r(chart);
  auto frame = dlFrame(chart);
  for (int j = 0; j < chart.dim(); ++j) {
    Derivation img = apply(inner.apply(frame[static_cast<size_t>(j)]));
    for (int i = 0; i < chart.dim(); ++i) r.A.at(i, j) = img.sym.comp[static_cast<size_t>(i)];
    r.xi.add(Index{j}, img.wt);
  }
  Derivation img = apply(inner.apply(frame[static_cast<size_t>(chart.dim())]));
  r.b = img.sym;
  r.c = img.wt;
  return r;
}

bool EndoDL::isZero() const {
  return A.isZero() && b.isZero() && xi.isZero() && c.isZero();
}

JetSection EndoJ1::apply(const JetSection& j) const {
  KForm a(chart, 1);
  for (int i = 0; i < chart.dim(); ++i) {
    RationalExpr acc;
    for (int k = 0; k < chart.dim(); ++k) acc = acc + P.at(i, k) * j.alpha.coeff(Index{k});
    a.add(Index{i}, acc + j.fn * q.coeff(Index{i}));
  }
  RationalExpr g = s * j.fn;
  for (int k = 0; k < chart.dim(); ++k)
    g = g + j.alpha.coeff(Index{k}) * r.comp[static_cast<size_t>(k)];
  return JetSection(a, g);
}

// ---------------------------------------------------------------------------
// operations

RationalExpr derApply(const Derivation& d, const RationalExpr& lambda) {
  return d.sym.apply(lambda) + d.wt * lambda;
}

Derivation derBracket(const Derivation& a, const Derivation& b) {
  return Derivation(lieBracket(a.sym, b.sym), a.sym.apply(b.wt) - b.sym.apply(a.wt));
}

AtiyahForm atiyahD(const AtiyahForm& w) {
  AtiyahForm r(w.chart, w.degree + 1, w.lValued);
  r.comp0 = exteriorD(w.comp0);
  if (w.lValued) {
    r.comp1 = w.comp0 - exteriorD(w.comp1);
  } else {
    r.comp1 = -exteriorD(w.comp1);
  }
  return r;
}

AtiyahForm atiyahContract(const Derivation& d, const AtiyahForm& w) {
  if (w.degree < 1) throw DegreeZero();
  AtiyahForm r(w.chart, w.degree - 1, w.lValued);
  r.comp0 = contract(d.sym, w.comp0) + w.comp1.scaled(d.wt);
  if (w.degree >= 2) r.comp1 = -contract(d.sym, w.comp1);
  return r;
}

AtiyahForm atiyahLie(const Derivation& d, const AtiyahForm& w) {
  if (w.degree == 0) return atiyahContract(d, atiyahD(w));
  return atiyahContract(d, atiyahD(w)) + atiyahD(atiyahContract(d, w));
}

AtiyahForm wedgeReal1(const KForm& a, const AtiyahForm& w) {
  AtiyahForm r(w.chart, w.degree + 1, w.lValued);
  r.comp0 = wedge(a, w.comp0);
  r.comp1 = -wedge(a, w.comp1);
  return r;
}

RationalExpr evalAtiyah(const AtiyahForm& w, const std::vector<Derivation>& args) {
  if (static_cast<int>(args.size()) != w.degree)
    throw GcbError("Atiyah form evaluated on wrong number of arguments");
  std::vector<VectorField> syms;
  for (auto& d : args) syms.push_back(d.sym);
  RationalExpr v = evaluate(w.comp0, syms);
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].wt.isZero()) continue;
    std::vector<VectorField> rest;
    for (size_t j = 0; j < args.size(); ++j)
      if (j != i) rest.push_back(args[j].sym);
    RationalExpr t = args[i].wt * evaluate(w.comp1, rest);
    v = i % 2 == 0 ? v + t : v - t;
  }
  return v;
}

RationalExpr jetPair(const Derivation& d, const JetSection& j) {
  return evalAtiyah(j.asAtiyahForm(), {d});
}

AtiyahForm jetProlong(const RationalExpr& lambda, const Chart& c) {
  return atiyahD(AtiyahForm::section(c, lambda));
}

RationalExpr omniPairing(const OmniSection& e, const OmniSection& f) {
  return jetPair(e.der, f.jet) + jetPair(f.der, e.jet);
}

OmniSection dorfman(const OmniSection& e, const OmniSection& f) {
  Derivation d = derBracket(e.der, f.der);
  AtiyahForm lie1 = atiyahLie(e.der, f.jet.asAtiyahForm());
  AtiyahForm corr = atiyahContract(f.der, atiyahD(e.jet.asAtiyahForm()));
  return OmniSection(d, JetSection::fromAtiyahForm(lie1 - corr));
}

EndoJ1 adjoint(const EndoDL& F) {
  EndoJ1 r(F.chart);
  r.P = F.A.transpose();
  r.q = F.xi;
  r.r = F.b;
  r.s = F.c;
  return r;
}

JetSection flatMap(const AtiyahForm& w2, const Derivation& d) {
  return JetSection::fromAtiyahForm(atiyahContract(d, w2));
}

Derivation sharpMap(const JacobiBivector& J, const JetSection& j) {
  const Chart& c = J.chart();
  VectorField v(c);
  // Lambda^sharp alpha + g E
  for (int k = 0; k < c.dim(); ++k) {
    RationalExpr acc = j.fn * J.euler.comp[static_cast<size_t>(k)];
    for (int i = 0; i < c.dim(); ++i) {
      if (i == k) continue;
      Index idx{std::min(i, k), std::max(i, k)};
      RationalExpr lam = J.lambda.coeff(idx);
      if (i > k) lam = -lam;
      acc = acc + j.alpha.coeff(Index{i}) * lam;
    }
    v.comp[static_cast<size_t>(k)] = acc;
  }
  RationalExpr w;
  for (int i = 0; i < c.dim(); ++i)
    w = w - J.euler.comp[static_cast<size_t>(i)] * j.alpha.coeff(Index{i});
  return Derivation(v, w);
}

RationalExpr JacobiBivector::pair(const JetSection& a, const JetSection& b) const {
  return jetPair(sharpMap(*this, a), b);
}

Matrix flatFrameMatrix(const AtiyahForm& w2) {
  const Chart& c = w2.chart;
  int n = c.dim();
  Matrix m(n + 1, n + 1);
  auto frame = dlFrame(c);
  for (int col = 0; col <= n; ++col) {
    JetSection j = flatMap(w2, frame[static_cast<size_t>(col)]);
    for (int row = 0; row < n; ++row) m.at(row, col) = j.alpha.coeff(Index{row});
    m.at(n, col) = j.fn;
  }
  return m;
}

Matrix sharpFrameMatrix(const JacobiBivector& J) {
  const Chart& c = J.chart();
  int n = c.dim();
  Matrix m(n + 1, n + 1);
  auto frame = jetFrame(c);
  for (int col = 0; col <= n; ++col) {
    Derivation d = sharpMap(J, frame[static_cast<size_t>(col)]);
    for (int row = 0; row < n; ++row) m.at(row, col) = d.sym.comp[static_cast<size_t>(row)];
    m.at(n, col) = d.wt;
  }
  return m;
}

std::vector<Derivation> dlFrame(const Chart& c) {
  std::vector<Derivation> f;
  for (int i = 0; i < c.dim(); ++i)
    f.emplace_back(VectorField::coordinate(c, i), RationalExpr());
  f.push_back(Derivation::identity(c));
  return f;
}

std::vector<JetSection> jetFrame(const Chart& c) {
  std::vector<JetSection> f;
  for (int i = 0; i < c.dim(); ++i) f.emplace_back(KForm::dcoord(c, i), RationalExpr());
  f.emplace_back(KForm(c, 1), RationalExpr::fromInt(1));
  return f;
}

std::vector<RationalExpr> coordMultipliers(const Chart& c) {
  std::vector<RationalExpr> m{RationalExpr::fromInt(1)};
  for (int i = 0; i < c.dim(); ++i) m.push_back(c.coordExpr(i));
  return m;
}

AtiyahForm atiyahPullback(const ChartMap& f, const RationalExpr& kappa, const AtiyahForm& w) {
  if (kappa.isZero()) throw NonInvertibleCocycle();
  RationalExpr kinv = kappa.inverse();
  AtiyahForm r(f.source, w.degree, w.lValued);
  KForm p0 = pullback(f, w.comp0);
  if (w.degree == 0) {
    r.comp0 = p0.scaled(kinv);
    return r;
  }
  KForm p1 = pullback(f, w.comp1);
  // dk/k correction
  std::vector<RationalExpr> dk;
  for (int j = 0; j < f.source.dim(); ++j) dk.push_back(kappa.derivative(f.source.coordVar(j)));
  KForm dkform = KForm::oneForm(f.source, dk).scaled(kinv);
  r.comp0 = (p0 - wedge(dkform, p1)).scaled(kinv);
  r.comp1 = p1.scaled(kinv);
  return r;
}

TransitionData::TransitionData(ChartMap m, RationalExpr k) : map(std::move(m)), kappa(std::move(k)) {
  if (kappa.isZero()) throw NonInvertibleCocycle();
}

AtiyahForm atlasCompat(const AtiyahForm& onChart1, const AtiyahForm& onChart2,
                       const TransitionData& t) {
  return atiyahPullback(t.map, t.kappa, onChart2) - onChart1;
}

}  // namespace gcb
