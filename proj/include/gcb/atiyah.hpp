#ifndef GCB_ATIYAH_HPP
#define GCB_ATIYAH_HPP

#include "gcb/linalg.hpp"
#include "gcb/tensor.hpp"

namespace gcb {

struct NonInvertibleCocycle : GcbError {
  NonInvertibleCocycle() : GcbError("cocycle is identically zero") {}
};

// Derivation of the trivialized line bundle: symbol vector field plus the
// coefficient of the identity operator. The identity derivation is (0, 1).
class Derivation {
 public:
  VectorField sym;
  RationalExpr wt;

  Derivation() = default;
  Derivation(VectorField s, RationalExpr w) : sym(std::move(s)), wt(std::move(w)) {}
  static Derivation zero(const Chart& c) { return Derivation(VectorField(c), RationalExpr()); }
  static Derivation identity(const Chart& c) {
    return Derivation(VectorField(c), RationalExpr::fromInt(1));
  }

  const Chart& chart() const { return sym.chart; }
  bool isZero() const { return sym.isZero() && wt.isZero(); }
  Derivation operator+(const Derivation& o) const { return {sym + o.sym, wt + o.wt}; }
  Derivation operator-(const Derivation& o) const { return {sym - o.sym, wt - o.wt}; }
  Derivation operator-() const { return {-sym, -wt}; }
  Derivation scaled(const RationalExpr& f) const { return {sym.scaled(f), wt * f}; }
  bool operator==(const Derivation& o) const { return sym == o.sym && wt == o.wt; }
};

// Atiyah k-form in components (w0, w1); evaluation convention
//   w(D1,...,Dk) = w0(X1,...,Xk) + sum_i (-1)^{i+1} f_i w1(X1,...,^X_i,...,Xk)
// for D_i = (X_i, f_i). Degree-0 L-valued forms are sections.
class AtiyahForm {
 public:
  Chart chart;
  int degree = 0;
  KForm comp0, comp1;
  bool lValued = true;

  AtiyahForm() = default;
  AtiyahForm(const Chart& c, int k, bool lval = true)
      : chart(c), degree(k), comp0(c, k), comp1(c, k - 1), lValued(lval) {}
  AtiyahForm(KForm w0, KForm w1, bool lval = true);
  static AtiyahForm section(const Chart& c, const RationalExpr& lambda);
  static AtiyahForm fromBase(const KForm& w0, bool lval = true);  // sigma^* of a form

  bool isZero() const { return comp0.isZero() && comp1.isZero(); }
  AtiyahForm operator+(const AtiyahForm& o) const;
  AtiyahForm operator-(const AtiyahForm& o) const;
  AtiyahForm operator-() const;
  AtiyahForm scaled(const RationalExpr& f) const;
  bool operator==(const AtiyahForm& o) const {
    return degree == o.degree && comp0 == o.comp0 && comp1 == o.comp1;
  }
  std::string str() const;
};

// L-valued Atiyah 1-form; models a section of the first jet bundle.
class JetSection {
 public:
  KForm alpha;      // 1-form part
  RationalExpr fn;  // function part

  JetSection() = default;
  JetSection(KForm a, RationalExpr g) : alpha(std::move(a)), fn(std::move(g)) {}
  static JetSection zero(const Chart& c) { return JetSection(KForm(c, 1), RationalExpr()); }

  const Chart& chart() const { return alpha.chart; }
  bool isZero() const { return alpha.isZero() && fn.isZero(); }
  JetSection operator+(const JetSection& o) const { return {alpha + o.alpha, fn + o.fn}; }
  JetSection operator-(const JetSection& o) const { return {alpha - o.alpha, fn - o.fn}; }
  JetSection operator-() const { return {-alpha, -fn}; }
  JetSection scaled(const RationalExpr& f) const { return {alpha.scaled(f), fn * f}; }
  bool operator==(const JetSection& o) const { return alpha == o.alpha && fn == o.fn; }

  AtiyahForm asAtiyahForm() const;
  static JetSection fromAtiyahForm(const AtiyahForm& w);  // degree 1, L-valued
};

class OmniSection {
 public:
  Derivation der;
  JetSection jet;

  OmniSection() = default;
  OmniSection(Derivation d, JetSection j) : der(std::move(d)), jet(std::move(j)) {}
  static OmniSection zero(const Chart& c) {
    return OmniSection(Derivation::zero(c), JetSection::zero(c));
  }
  bool isZero() const { return der.isZero() && jet.isZero(); }
  OmniSection operator+(const OmniSection& o) const { return {der + o.der, jet + o.jet}; }
  OmniSection operator-(const OmniSection& o) const { return {der - o.der, jet - o.jet}; }
  OmniSection operator-() const { return {-der, -jet}; }
  OmniSection scaled(const RationalExpr& f) const { return {der.scaled(f), jet.scaled(f)}; }
  bool operator==(const OmniSection& o) const { return der == o.der && jet == o.jet; }
};

// Endomorphism of DL in blocks: (X, f) -> (A X + f b, xi(X) + c f).
class EndoDL {
 public:
  Chart chart;
  Matrix A;        // (1,1)-tensor
  VectorField b;
  KForm xi;        // degree 1
  RationalExpr c;

  EndoDL() = default;
  explicit EndoDL(const Chart& ch)
      : chart(ch), A(ch.dim(), ch.dim()), b(ch), xi(ch, 1) {}
  static EndoDL zero(const Chart& ch) { return EndoDL(ch); }
  static EndoDL identityEndo(const Chart& ch);

  Derivation apply(const Derivation& d) const;
  EndoDL operator+(const EndoDL& o) const;
  EndoDL operator-(const EndoDL& o) const;
  EndoDL scaled(const RationalExpr& f) const;
  EndoDL compose(const EndoDL& inner) const;  // this after inner
  bool isZero() const;
};

// Endomorphism of the jet bundle: (alpha, g) -> (P alpha + g q, alpha(r) + s g).
class EndoJ1 {
 public:
  Chart chart;
  Matrix P;
  KForm q;        // degree 1
  VectorField r;
  RationalExpr s;

  EndoJ1() = default;
  explicit EndoJ1(const Chart& ch) : chart(ch), P(ch.dim(), ch.dim()), q(ch, 1), r(ch) {}
  JetSection apply(const JetSection& j) const;
};

// Jacobi 2-form on the jet bundle in chart data:
// J((a,f),(b,g)) = Lambda(a,b) + f i_E b - g i_E a.
class JacobiBivector {
 public:
  Polyvector lambda;  // degree 2
  VectorField euler;  // the E component

  JacobiBivector() = default;
  JacobiBivector(Polyvector l, VectorField e) : lambda(std::move(l)), euler(std::move(e)) {}
  static JacobiBivector zero(const Chart& c) {
    return JacobiBivector(Polyvector(c, 2), VectorField(c));
  }
  const Chart& chart() const { return euler.chart; }
  bool isZero() const { return lambda.isZero() && euler.isZero(); }
  bool operator==(const JacobiBivector& o) const {
    return lambda == o.lambda && euler == o.euler;
  }

  RationalExpr pair(const JetSection& a, const JetSection& b) const;
};

// chart-cocycle data for a non-trivial line bundle over two charts
class TransitionData {
 public:
  ChartMap map;        // chart1 -> chart2 coordinates
  RationalExpr kappa;  // cocycle on chart1, nowhere zero

  TransitionData(ChartMap m, RationalExpr k);
};

// --- operations -----------------------------------------------------------

RationalExpr derApply(const Derivation& d, const RationalExpr& lambda);
Derivation derBracket(const Derivation& a, const Derivation& b);

AtiyahForm atiyahD(const AtiyahForm& w);
AtiyahForm atiyahContract(const Derivation& d, const AtiyahForm& w);  // DegreeZero if k=0
AtiyahForm atiyahLie(const Derivation& d, const AtiyahForm& w);

// wedge of a real-valued Atiyah 1-form (a, 0) with an L-valued form
AtiyahForm wedgeReal1(const KForm& a, const AtiyahForm& w);

// evaluation per the stated convention; the independent oracle for the
// component formulas
RationalExpr evalAtiyah(const AtiyahForm& w, const std::vector<Derivation>& args);

RationalExpr jetPair(const Derivation& d, const JetSection& j);  // <Delta, psi>_L
AtiyahForm jetProlong(const RationalExpr& lambda, const Chart& c);  // j^1

RationalExpr omniPairing(const OmniSection& e, const OmniSection& f);
OmniSection dorfman(const OmniSection& e, const OmniSection& f);

EndoJ1 adjoint(const EndoDL& F);
JetSection flatMap(const AtiyahForm& w2, const Derivation& d);   // i_D w
Derivation sharpMap(const JacobiBivector& J, const JetSection& j);

// frame matrix of flat: columns indexed by the DL frame, rows by the jet frame
Matrix flatFrameMatrix(const AtiyahForm& w2);
Matrix sharpFrameMatrix(const JacobiBivector& J);

// frames for operator-valued residual checks
std::vector<Derivation> dlFrame(const Chart& c);
std::vector<JetSection> jetFrame(const Chart& c);
// the multipliers {1, x_1, ..., x_n} of the frame protocol
std::vector<RationalExpr> coordMultipliers(const Chart& c);

// twisted pullback of Atiyah forms along a chart map with cocycle factor
AtiyahForm atiyahPullback(const ChartMap& f, const RationalExpr& kappa, const AtiyahForm& w);

// residual of chart-1 data against chart-2 data under the twisted pullback
AtiyahForm atlasCompat(const AtiyahForm& onChart1, const AtiyahForm& onChart2,
                       const TransitionData& t);

}  // namespace gcb

#endif
