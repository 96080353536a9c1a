#ifndef GCB_IMGROUPOID_HPP
#define GCB_IMGROUPOID_HPP

#include "gcb/gcs.hpp"

#include <functional>
#include <utility>

namespace gcb {

struct InvalidAlgebroid : GcbError {
  InvalidAlgebroid() : GcbError("algebroid presentation fails its axioms") {}
};
struct UnsupportedGroupoid : GcbError {
  UnsupportedGroupoid()
      : GcbError("right-invariant data unavailable for this presentation") {}
};
struct NotMultiplicative : GcbError {
  NotMultiplicative() : GcbError("form is not multiplicative") {}
};

// section of the algebroid by frame coefficients
using ASection = std::vector<RationalExpr>;

// Lie algebroid over the chart, trivialized by a frame e_1..e_m: anchor
// images rho(e_i), structure functions c^k_{ij}, and a flat connection on L
// with nabla_{e_i} = (rho(e_i), gamma_i).
struct LieAlgebroidPresentation {
  Chart chart;
  int rank = 0;
  std::vector<VectorField> rho;
  std::map<std::pair<int, int>, ASection> c;  // keys i < j
  std::vector<RationalExpr> gamma;

  static LieAlgebroidPresentation tangent(const Chart& ch);

  ASection structure(int i, int j) const;  // signed lookup, any order
  VectorField anchor(const ASection& a) const;
  ASection bracket(const ASection& a, const ASection& b) const;
  Derivation nabla(const ASection& a) const;
  ASection basis(int i, const RationalExpr& f = RationalExpr::fromInt(1)) const;
};

CheckReport checkLieAlgebroid(const LieAlgebroidPresentation& alg);
CheckReport checkFlatConnection(const LieAlgebroidPresentation& alg);

// IM Atiyah form stored by frame values; the first-order operator D extends
// by D(f a) = f D(a) + df ^ l(a) with df read as the real-valued 1-form.
struct ImForm {
  Chart chart;
  int degree = 0;
  std::vector<AtiyahForm> l;  // degree - 1
  std::vector<AtiyahForm> d;  // degree
  // optional raw operator; when set, the Leibniz rule is re-checked against it
  std::function<AtiyahForm(const ASection&)> rawD;

  static ImForm zero(const Chart& ch, int rank, int degree);

  AtiyahForm lOf(const ASection& a) const;
  AtiyahForm dOf(const ASection& a) const;
};

CheckReport checkImForm(const LieAlgebroidPresentation& alg, const ImForm& f);

enum class GroupoidKind { Pair, BundleOfGroups, Unit, Custom };

// Chart-presented groupoid: arrows g, composable pairs g2 with the two
// embeddings, composable triples g3 for associativity, and a nowhere-zero
// representation cocycle on the arrow chart.
struct GroupoidPresentation {
  GroupoidKind kind = GroupoidKind::Custom;
  Chart base, g, g2, g3;
  ChartMap s, t, u, inv, mul, pr1, pr2;
  ChartMap left, right;  // g3 -> g2: (m(g1,g2), g3) and (g1, m(g2,g3))
  RationalExpr deltaRep = RationalExpr::fromInt(1);
  // right-invariant s-vertical frame on g; required for custom presentations
  std::vector<VectorField> rightFrame;

  static GroupoidPresentation pairGroupoid(const Chart& m);
  static GroupoidPresentation bundleOfGroups(const Chart& m,
                                             const std::string& fiber = "a");
  static GroupoidPresentation unitGroupoid(const Chart& m);
};

CheckReport checkGroupoid(const GroupoidPresentation& G);

// throws UnsupportedGroupoid when no frame is available
std::vector<VectorField> rightFrameOf(const GroupoidPresentation& G);
VectorField rightInvariantExtension(const GroupoidPresentation& G, const ASection& a);

LieAlgebroidPresentation lieFunctor(const GroupoidPresentation& G);

CheckReport checkMultiplicative(const GroupoidPresentation& G, const AtiyahForm& w);

// throws NotMultiplicative
ImForm inducedImForm(const GroupoidPresentation& G, const AtiyahForm& w);

struct AtiyahDecomposition {
  KForm mu0, mu1;
};
AtiyahDecomposition decomposeAtiyah(const AtiyahForm& w);
AtiyahForm recomposeAtiyah(const AtiyahDecomposition& dec);

CheckReport checkChgCondition3(const GroupoidPresentation& G, const AtiyahForm& Omega,
                               const EndoDL& Phi, const AtiyahForm& omegaM);

}  // namespace gcb

#endif
