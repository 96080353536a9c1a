#include "gcb/hitchin.hpp"

namespace gcb {

StructureForm::StructureForm(KForm t) : theta(std::move(t)) {
  if (theta.degree != 1) throw GcbError("structure form must have degree 1");
  if (theta.isZero()) throw GcbError("structure form is identically zero");
}

ContactAtiyah contactToAtiyah(const StructureForm& theta) {
  ContactAtiyah out;
  out.omega = atiyahD(AtiyahForm::fromBase(theta.theta));
  try {
    flatFrameMatrix(out.omega).inverse();
    out.nondegenerate = true;
  } catch (const Degenerate&) {
    out.nondegenerate = false;
  }
  return out;
}

JacobiBivector invertAtiyah2(const AtiyahForm& omega2) {
  const Chart& c = omega2.chart;
  int n = c.dim();
  Matrix N = flatFrameMatrix(omega2).inverse();
  JacobiBivector J(Polyvector(c, 2), VectorField(c));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) J.lambda.add(Index{i, j}, N.at(j, i));
  for (int k = 0; k < n; ++k) J.euler.comp[static_cast<size_t>(k)] = N.at(k, n);
  if (!(sharpFrameMatrix(J) == N))
    throw GcbError("inverse of the flat matrix is not of sharp shape");
  return J;
}

AtiyahForm invertJacobi(const JacobiBivector& J) {
  const Chart& c = J.chart();
  int n = c.dim();
  Matrix M = sharpFrameMatrix(J).inverse();
  AtiyahForm w(c, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.comp0.add(Index{i, j}, M.at(j, i));
  for (int i = 0; i < n; ++i) w.comp1.add(Index{i}, M.at(i, n));
  if (!(flatFrameMatrix(w) == M))
    throw GcbError("inverse of the sharp matrix is not of flat shape");
  return w;
}

AtiyahForm phiStar(const EndoDL& phi, const AtiyahForm& w2) {
  const Chart& c = phi.chart;
  AtiyahForm r(c, 2);
  auto di = [&](int i) { return Derivation(VectorField::coordinate(c, i), RationalExpr()); };
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i + 1; j < c.dim(); ++j)
      r.comp0.add(Index{i, j}, evalAtiyah(w2, {phi.apply(di(i)), phi.apply(di(j))}));
  Derivation one = Derivation::identity(c);
  for (int j = 0; j < c.dim(); ++j)
    r.comp1.add(Index{j}, evalAtiyah(w2, {phi.apply(one), phi.apply(di(j))}));
  return r;
}

CheckReport checkHitchinPair(const HitchinPair& p) {
  const Chart& c = p.Phi.chart;
  CheckReport rep;
  EndoJ1 phiDag = adjoint(p.Phi);

  bool flatPhi = true;
  std::string detail;
  for (auto& d : dlFrame(c)) {
    JetSection r = flatMap(p.Omega, p.Phi.apply(d)) - phiDag.apply(flatMap(p.Omega, d));
    if (!r.isZero() && flatPhi) {
      flatPhi = false;
      detail = "(" + r.alpha.str() + ", " + r.fn.str() + ")";
    }
  }
  rep.add("flat_phi", flatPhi, detail);

  GacsTriple shim{p.Phi, JacobiBivector::zero(c), p.Omega};
  AtiyahForm dwp = atiyahD(omegaPhi(shim));
  rep.add("closed_phi", dwp.isZero(), dwp.isZero() ? "" : dwp.str());

  AtiyahForm dw = atiyahD(p.Omega);
  rep.add("closed", dw.isZero(), dw.isZero() ? "" : dw.str());

  bool nondeg = true;
  try {
    flatFrameMatrix(p.Omega).inverse();
  } catch (const Degenerate&) {
    nondeg = false;
  }
  rep.add("nondegenerate", nondeg, nondeg ? "" : "flat frame matrix is singular");
  return rep;
}

GacsTriple gcsFromHitchin(const HitchinPair& p) {
  if (!checkHitchinPair(p).pass()) throw NotHitchin();
  JacobiBivector J = invertAtiyah2(p.Omega);
  AtiyahForm omega = -(p.Omega + phiStar(p.Phi, p.Omega));
  return {p.Phi, J, omega};
}

HitchinPair hitchinFromGcs(const GacsTriple& t) {
  return {invertJacobi(t.J), t.phi};
}

EndoDL endoFromAction(const Chart& c,
                      const std::function<Derivation(const Derivation&)>& act) {
  EndoDL r(c);
  auto frame = dlFrame(c);
  for (int j = 0; j < c.dim(); ++j) {
    Derivation img = act(frame[static_cast<size_t>(j)]);
    for (int i = 0; i < c.dim(); ++i) r.A.at(i, j) = img.sym.comp[static_cast<size_t>(i)];
    r.xi.add(Index{j}, img.wt);
  }
  Derivation img = act(frame[static_cast<size_t>(c.dim())]);
  r.b = img.sym;
  r.c = img.wt;
  return r;
}

}  // namespace gcb
