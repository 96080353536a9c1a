#ifndef GCB_HOMOG_HPP
#define GCB_HOMOG_HPP

#include "gcb/gcs.hpp"

namespace gcb {

struct NotHomogeneous : GcbError {
  NotHomogeneous() : GcbError("triple fails the homogeneity conditions") {}
};

// Generalized complex triple on the homogenized chart (base coordinates plus
// the fiber coordinate r, which is the last one; r != 0 so denominators in r
// are allowed).
struct GcTriple {
  Chart chart;
  Matrix a;        // (1,1)-tensor in the coordinate frame
  Polyvector pi;   // degree 2
  KForm sigma;     // degree 2

  int fiberIndex() const { return chart.dim() - 1; }
  VectorField euler() const;  // r d/dr
};

// section X + xi of the generalized tangent bundle
struct GtSection {
  VectorField x;
  KForm xi;  // degree 1

  GtSection(VectorField v, KForm f) : x(std::move(v)), xi(std::move(f)) {}
  static GtSection zero(const Chart& c) { return {VectorField(c), KForm(c, 1)}; }
  bool isZero() const { return x.isZero() && xi.isZero(); }
  GtSection operator+(const GtSection& o) const { return {x + o.x, xi + o.xi}; }
  GtSection operator-(const GtSection& o) const { return {x - o.x, xi - o.xi}; }
  GtSection scaled(const RationalExpr& f) const { return {x.scaled(f), xi.scaled(f)}; }
};

GcTriple homogenize(const GacsTriple& t, const std::string& fiberName = "r");

CheckReport checkHomogeneity(const GcTriple& g);

GtSection classicalDorfman(const GtSection& e, const GtSection& f);

// block operator (a, pi-sharp; sigma-flat, -a^*)
GtSection gcApply(const GcTriple& g, const GtSection& e);

// J^2 = -id, skewness for the tautological pairing, Nijenhuis torsion
CheckReport checkGc(const GcTriple& g);

GacsTriple dehomogenize(const GcTriple& g);  // throws NotHomogeneous

}  // namespace gcb

#endif
