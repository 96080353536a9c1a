#ifndef GCB_HITCHIN_HPP
#define GCB_HITCHIN_HPP

#include <functional>

#include "gcb/gcs.hpp"

namespace gcb {

struct NotHitchin : GcbError {
  NotHitchin() : GcbError("pair fails the contact-Hitchin conditions") {}
};

// trivialized structure form of a hyperplane distribution
struct StructureForm {
  KForm theta;  // degree 1, not identically zero

  explicit StructureForm(KForm t);
};

struct HitchinPair {
  AtiyahForm Omega;  // degree 2, from a structure form
  EndoDL Phi;
};

struct ContactAtiyah {
  AtiyahForm omega;
  bool nondegenerate = false;
};

// d_DL of the pulled-back structure form; nondegenerate iff theta is contact
ContactAtiyah contactToAtiyah(const StructureForm& theta);

// J with sharp(J) = flat(omega)^{-1}; throws Degenerate
JacobiBivector invertAtiyah2(const AtiyahForm& omega2);

// omega_J with flat(omega_J) = sharp(J)^{-1}; throws Degenerate
AtiyahForm invertJacobi(const JacobiBivector& J);

CheckReport checkHitchinPair(const HitchinPair& p);

// (phi^* w)(D, N) := w(phi D, phi N)
AtiyahForm phiStar(const EndoDL& phi, const AtiyahForm& w2);

GacsTriple gcsFromHitchin(const HitchinPair& p);  // throws NotHitchin
HitchinPair hitchinFromGcs(const GacsTriple& t);  // throws Degenerate

// blocks of a DL endomorphism recovered from its action on the frame
EndoDL endoFromAction(const Chart& c,
                      const std::function<Derivation(const Derivation&)>& act);

}  // namespace gcb

#endif
