#ifndef GCB_GCS_HPP
#define GCB_GCS_HPP

#include "gcb/atiyah.hpp"
#include "gcb/report.hpp"

namespace gcb {

struct NotAlmost : GcbError {
  NotAlmost() : GcbError("triple fails the almost-structure relations") {}
};

// Generalized almost contact structure in block form.
struct GacsTriple {
  EndoDL phi;
  JacobiBivector J;
  AtiyahForm omega;  // degree 2, L-valued

  const Chart& chart() const { return phi.chart; }
};

// The block operator I(D, psi) = (phi D + J# psi, flat(omega) D - phi^dag psi).
class OmniEndo {
 public:
  GacsTriple t;

  explicit OmniEndo(GacsTriple tr) : t(std::move(tr)) {}
  OmniSection apply(const OmniSection& e) const;
};

OmniEndo assembleEndo(const GacsTriple& t);

// the three block relations plus the two operator relations (I^2 = -id,
// I^dag = -I); both routes are reported and must agree
CheckReport checkAlmost(const GacsTriple& t);

OmniSection nijenhuis(const OmniEndo& I, const OmniSection& e, const OmniSection& f);
CheckReport checkIntegrable(const GacsTriple& t);  // throws NotAlmost

RationalExpr jacobiBracket(const JacobiBivector& J, const RationalExpr& lam,
                           const RationalExpr& mu);
JetSection jetBracket(const JacobiBivector& J, const JetSection& a, const JetSection& b);

// route (a): Jacobiator + anchor compatibility of the jet bracket;
// route (b): [Lambda,Lambda] - 2 E^Lambda and [E,Lambda]
CheckReport checkJacobi(const JacobiBivector& J);

// residuals of the four integrability equations
CheckReport checkEquations(const GacsTriple& t);  // throws NotAlmost

struct PropEquivalence {
  bool nijenhuisZero = false;
  bool equationsZero = false;
  bool agree() const { return nijenhuisZero == equationsZero; }
};
PropEquivalence checkPropEquivalence(const GacsTriple& t);  // throws NotAlmost

// the first three equations plus the first two block relations only
CheckReport checkTheorem47Subset(const GacsTriple& t);

// omega_phi(D, N) := omega(phi D, N); well defined once the third block
// relation holds
AtiyahForm omegaPhi(const GacsTriple& t);

// frame-protocol test sections: frames multiplied by {1, x_1, ..., x_n}
std::vector<Derivation> dlTestSections(const Chart& c);
std::vector<JetSection> jetTestSections(const Chart& c);
std::vector<OmniSection> omniTestSections(const Chart& c);

}  // namespace gcb

#endif
