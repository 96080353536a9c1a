#include "gcb/gcs.hpp"

namespace gcb {

namespace {

std::string derStr(const Derivation& d) {
  return "(" + d.sym.str() + ", " + d.wt.str() + ")";
}
std::string jetStr(const JetSection& j) {
  return "(" + j.alpha.str() + ", " + j.fn.str() + ")";
}
std::string omniStr(const OmniSection& e) {
  return "(" + derStr(e.der) + ", " + jetStr(e.jet) + ")";
}

// accumulates a zero verdict plus a sample nonzero residual
struct Accum {
  bool zero = true;
  std::string detail;

  void observeExpr(const RationalExpr& v) {
    if (!v.isZero() && zero) {
      zero = false;
      detail = v.str();
    }
  }
  template <typename T, typename Str>
  void observe(const T& v, Str str) {
    if (!v.isZero() && zero) {
      zero = false;
      detail = str(v);
    }
  }
};

}  // namespace

OmniSection OmniEndo::apply(const OmniSection& e) const {
  Derivation d = t.phi.apply(e.der) + sharpMap(t.J, e.jet);
  JetSection j = flatMap(t.omega, e.der) - adjoint(t.phi).apply(e.jet);
  return OmniSection(d, j);
}

OmniEndo assembleEndo(const GacsTriple& t) { return OmniEndo(t); }

std::vector<Derivation> dlTestSections(const Chart& c) {
  std::vector<Derivation> out;
  for (auto& m : coordMultipliers(c))
    for (auto& e : dlFrame(c)) out.push_back(e.scaled(m));
  return out;
}

std::vector<JetSection> jetTestSections(const Chart& c) {
  std::vector<JetSection> out;
  for (auto& m : coordMultipliers(c))
    for (auto& e : jetFrame(c)) out.push_back(e.scaled(m));
  return out;
}

std::vector<OmniSection> omniTestSections(const Chart& c) {
  std::vector<OmniSection> out;
  for (auto& m : coordMultipliers(c)) {
    for (auto& e : dlFrame(c))
      out.push_back(OmniSection(e.scaled(m), JetSection::zero(c)));
    for (auto& e : jetFrame(c))
      out.push_back(OmniSection(Derivation::zero(c), e.scaled(m)));
  }
  return out;
}

CheckReport checkAlmost(const GacsTriple& t) {
  const Chart& c = t.chart();
  EndoJ1 phiDag = adjoint(t.phi);
  CheckReport rep;

  Accum a1;
  for (auto& psi : jetFrame(c)) {
    Derivation r = t.phi.apply(sharpMap(t.J, psi)) - sharpMap(t.J, phiDag.apply(psi));
    a1.observe(r, derStr);
  }
  rep.add("phi_jsharp", a1.zero, a1.detail);

  Accum a2;
  for (auto& d : dlFrame(c)) {
    Derivation r = t.phi.apply(t.phi.apply(d)) + d + sharpMap(t.J, flatMap(t.omega, d));
    a2.observe(r, derStr);
  }
  rep.add("phi_square", a2.zero, a2.detail);

  Accum a3;
  for (auto& d : dlFrame(c)) {
    JetSection r = flatMap(t.omega, t.phi.apply(d)) - phiDag.apply(flatMap(t.omega, d));
    a3.observe(r, jetStr);
  }
  rep.add("flat_phi", a3.zero, a3.detail);

  // independent route through the assembled block operator
  OmniEndo I = assembleEndo(t);
  std::vector<OmniSection> frame;
  for (auto& d : dlFrame(c)) frame.push_back(OmniSection(d, JetSection::zero(c)));
  for (auto& j : jetFrame(c)) frame.push_back(OmniSection(Derivation::zero(c), j));

  Accum sq;
  for (auto& e : frame) sq.observe(I.apply(I.apply(e)) + e, omniStr);
  rep.add("isq_plus_id", sq.zero, sq.detail);

  Accum skew;
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = i; j < frame.size(); ++j)
      skew.observeExpr(omniPairing(I.apply(frame[i]), frame[j]) +
                       omniPairing(frame[i], I.apply(frame[j])));
  rep.add("iadj_plus_i", skew.zero, skew.detail);
  return rep;
}

OmniSection nijenhuis(const OmniEndo& I, const OmniSection& e, const OmniSection& f) {
  OmniSection Ie = I.apply(e), If = I.apply(f);
  return dorfman(Ie, If) - dorfman(e, f) - I.apply(dorfman(Ie, f)) -
         I.apply(dorfman(e, If));
}

CheckReport checkIntegrable(const GacsTriple& t) {
  if (!checkAlmost(t).pass()) throw NotAlmost();
  OmniEndo I = assembleEndo(t);
  auto secs = omniTestSections(t.chart());
  Accum a;
  // N_I is skew once the almost relations hold
  for (size_t i = 0; i < secs.size() && a.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && a.zero; ++j)
      a.observe(nijenhuis(I, secs[i], secs[j]), omniStr);
  CheckReport rep;
  rep.add("nijenhuis", a.zero, a.detail);
  return rep;
}

RationalExpr jacobiBracket(const JacobiBivector& J, const RationalExpr& lam,
                           const RationalExpr& mu) {
  const Chart& c = J.chart();
  JetSection a = JetSection::fromAtiyahForm(jetProlong(lam, c));
  JetSection b = JetSection::fromAtiyahForm(jetProlong(mu, c));
  return J.pair(a, b);
}

JetSection jetBracket(const JacobiBivector& J, const JetSection& a, const JetSection& b) {
  const Chart& c = J.chart();
  AtiyahForm r = atiyahLie(sharpMap(J, a), b.asAtiyahForm()) -
                 atiyahLie(sharpMap(J, b), a.asAtiyahForm()) -
                 jetProlong(J.pair(a, b), c);
  return JetSection::fromAtiyahForm(r);
}

CheckReport checkJacobi(const JacobiBivector& J) {
  const Chart& c = J.chart();
  CheckReport rep;
  auto secs = jetTestSections(c);

  Accum jac;
  for (size_t i = 0; i < secs.size() && jac.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && jac.zero; ++j)
      for (size_t k = j + 1; k < secs.size() && jac.zero; ++k) {
        JetSection r = jetBracket(J, secs[i], jetBracket(J, secs[j], secs[k])) +
                       jetBracket(J, secs[j], jetBracket(J, secs[k], secs[i])) +
                       jetBracket(J, secs[k], jetBracket(J, secs[i], secs[j]));
        jac.observe(r, jetStr);
      }
  rep.add("jacobiator", jac.zero, jac.detail);

  Accum anc;
  for (size_t i = 0; i < secs.size() && anc.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && anc.zero; ++j) {
      VectorField r = sharpMap(J, jetBracket(J, secs[i], secs[j])).sym -
                      lieBracket(sharpMap(J, secs[i]).sym, sharpMap(J, secs[j]).sym);
      anc.observe(r, [](const VectorField& v) { return v.str(); });
    }
  rep.add("anchor", anc.zero, anc.detail);

  // independent route: the classical bivector conditions
  Polyvector E = Polyvector::fromVectorField(J.euler);
  Polyvector s1 = schouten(J.lambda, J.lambda) - wedge(E, J.lambda).scaled(RationalExpr::fromInt(2));
  rep.add("schouten_lambda", s1.isZero(), s1.isZero() ? "" : s1.str());
  Polyvector s2 = schouten(E, J.lambda);
  rep.add("schouten_euler", s2.isZero(), s2.isZero() ? "" : s2.str());
  return rep;
}

AtiyahForm omegaPhi(const GacsTriple& t) {
  const Chart& c = t.chart();
  AtiyahForm r(c, 2);
  auto di = [&](int i) { return Derivation(VectorField::coordinate(c, i), RationalExpr()); };
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i + 1; j < c.dim(); ++j)
      r.comp0.add(Index{i, j}, evalAtiyah(t.omega, {t.phi.apply(di(i)), di(j)}));
  Derivation one = Derivation::identity(c);
  for (int j = 0; j < c.dim(); ++j)
    r.comp1.add(Index{j}, evalAtiyah(t.omega, {t.phi.apply(one), di(j)}));
  return r;
}

namespace {

// residuals of the first three integrability equations on test sections;
// shared by checkEquations and checkTheorem47Subset
void equationResiduals(const GacsTriple& t, CheckReport& rep) {
  const Chart& c = t.chart();
  EndoJ1 phiDag = adjoint(t.phi);
  auto jets = jetTestSections(c);

  Accum e3;
  for (size_t i = 0; i < jets.size() && e3.zero; ++i)
    for (size_t j = i + 1; j < jets.size() && e3.zero; ++j) {
      Derivation r = sharpMap(t.J, jetBracket(t.J, jets[i], jets[j])) -
                     derBracket(sharpMap(t.J, jets[i]), sharpMap(t.J, jets[j]));
      e3.observe(r, derStr);
    }
  rep.add("eq_jacobi", e3.zero, e3.detail);

  Accum e4;
  for (size_t i = 0; i < jets.size() && e4.zero; ++i)
    for (size_t j = 0; j < jets.size() && e4.zero; ++j) {
      if (i == j) continue;
      const JetSection &p = jets[i], &q = jets[j];
      AtiyahForm r = phiDag.apply(jetBracket(t.J, p, q)).asAtiyahForm() -
                     atiyahLie(sharpMap(t.J, p), phiDag.apply(q).asAtiyahForm()) +
                     atiyahLie(sharpMap(t.J, q), phiDag.apply(p).asAtiyahForm()) +
                     jetProlong(t.J.pair(phiDag.apply(p), q), c);
      e4.observe(r, [](const AtiyahForm& w) { return w.str(); });
    }
  rep.add("eq_compat", e4.zero, e4.detail);

  Accum e5;
  AtiyahForm dw = atiyahD(t.omega);
  auto ders = dlTestSections(c);
  for (size_t i = 0; i < ders.size() && e5.zero; ++i)
    for (size_t j = i + 1; j < ders.size() && e5.zero; ++j) {
      const Derivation &d = ders[i], &n = ders[j];
      Derivation nphi = derBracket(t.phi.apply(d), t.phi.apply(n)) +
                        t.phi.apply(t.phi.apply(derBracket(d, n))) -
                        t.phi.apply(derBracket(t.phi.apply(d), n)) -
                        t.phi.apply(derBracket(d, t.phi.apply(n)));
      JetSection inner = JetSection::fromAtiyahForm(
          atiyahContract(d, atiyahContract(n, dw)));
      e5.observe(nphi - sharpMap(t.J, inner), derStr);
    }
  rep.add("eq_torsion", e5.zero, e5.detail);
}

}  // namespace

CheckReport checkEquations(const GacsTriple& t) {
  if (!checkAlmost(t).pass()) throw NotAlmost();
  const Chart& c = t.chart();
  CheckReport rep;
  equationResiduals(t, rep);

  Accum e6;
  AtiyahForm dw = atiyahD(t.omega);
  AtiyahForm dwphi = atiyahD(omegaPhi(t));
  auto ders = dlTestSections(c);
  for (size_t i = 0; i < ders.size() && e6.zero; ++i)
    for (size_t j = i + 1; j < ders.size() && e6.zero; ++j)
      for (size_t k = j + 1; k < ders.size() && e6.zero; ++k) {
        const Derivation &d = ders[i], &n = ders[j], &q = ders[k];
        RationalExpr r = evalAtiyah(dwphi, {d, n, q}) -
                         evalAtiyah(dw, {t.phi.apply(d), n, q}) -
                         evalAtiyah(dw, {d, t.phi.apply(n), q}) -
                         evalAtiyah(dw, {d, n, t.phi.apply(q)});
        e6.observeExpr(r);
      }
  rep.add("eq_closed", e6.zero, e6.detail);
  return rep;
}

PropEquivalence checkPropEquivalence(const GacsTriple& t) {
  PropEquivalence out;
  out.nijenhuisZero = checkIntegrable(t).pass();
  out.equationsZero = checkEquations(t).pass();
  return out;
}

CheckReport checkTheorem47Subset(const GacsTriple& t) {
  const Chart& c = t.chart();
  EndoJ1 phiDag = adjoint(t.phi);
  CheckReport rep;

  Accum a1;
  for (auto& psi : jetFrame(c)) {
    Derivation r = t.phi.apply(sharpMap(t.J, psi)) - sharpMap(t.J, phiDag.apply(psi));
    a1.observe(r, derStr);
  }
  rep.add("phi_jsharp", a1.zero, a1.detail);

  Accum a2;
  for (auto& d : dlFrame(c)) {
    Derivation r = t.phi.apply(t.phi.apply(d)) + d + sharpMap(t.J, flatMap(t.omega, d));
    a2.observe(r, derStr);
  }
  rep.add("phi_square", a2.zero, a2.detail);

  equationResiduals(t, rep);
  return rep;
}

}  // namespace gcb
