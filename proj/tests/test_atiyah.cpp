#include "doctest.h"

#include "gcb/atiyah.hpp"
#include "test_util.hpp"

using namespace gcb;
using gcbtest::Rng;

static RationalExpr E(const char* s) { return parseExpr(s); }

namespace {

Derivation randomDer(Rng& rng, const Chart& c, int maxDeg = 1) {
  return Derivation(rng.vectorField(c, maxDeg), rng.expr(c, maxDeg));
}

AtiyahForm randomAtiyah(Rng& rng, const Chart& c, int k, int maxDeg = 1) {
  AtiyahForm w(c, k);
  w.comp0 = rng.kform(c, k, maxDeg);
  if (k >= 1) w.comp1 = rng.kform(c, k - 1, maxDeg);
  return w;
}

OmniSection randomOmni(Rng& rng, const Chart& c) {
  return OmniSection(randomDer(rng, c),
                     JetSection(rng.kform(c, 1, 1), rng.expr(c, 1)));
}

// direct Chevalley-Eilenberg differential through evaluation; the oracle for
// the component formula of atiyahD
RationalExpr ceEval(const AtiyahForm& w, const std::vector<Derivation>& args) {
  RationalExpr v;
  int n = static_cast<int>(args.size());
  for (int i = 0; i < n; ++i) {
    std::vector<Derivation> rest;
    for (int j = 0; j < n; ++j)
      if (j != i) rest.push_back(args[static_cast<size_t>(j)]);
    RationalExpr t = derApply(args[static_cast<size_t>(i)], evalAtiyah(w, rest));
    v = i % 2 == 0 ? v + t : v - t;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Derivation> rest{derBracket(args[static_cast<size_t>(i)],
                                              args[static_cast<size_t>(j)])};
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) rest.push_back(args[static_cast<size_t>(k)]);
      RationalExpr t = evalAtiyah(w, rest);
      v = (i + j) % 2 == 0 ? v + t : v - t;
    }
  return v;
}

}  // namespace

TEST_CASE("der_apply: examples and Leibniz rule") {
  Chart c = Chart::make({"x", "y"});
  Derivation dx(VectorField::coordinate(c, 0), RationalExpr());
  CHECK(derApply(dx, E("x")) == E("1"));
  Derivation one = Derivation::identity(c);
  CHECK(derApply(one, E("x*y+2")) == E("x*y+2"));
  Derivation d(VectorField::coordinate(c, 0).scaled(E("x")), E("x"));
  CHECK(derApply(d, E("x^2")) == E("2*x^2+x^3"));

  Rng rng;
  for (int i = 0; i < 30; ++i) {
    Derivation a = randomDer(rng, c);
    RationalExpr f = rng.expr(c), lam = rng.expr(c);
    CHECK(derApply(a, f * lam) == a.sym.apply(f) * lam + f * derApply(a, lam));
  }
}

TEST_CASE("der_bracket: examples, Jacobi, central identity") {
  Chart c = Chart::make({"x", "y"});
  Derivation dx(VectorField::coordinate(c, 0), RationalExpr());
  Derivation d(VectorField::coordinate(c, 0).scaled(E("x")), E("x"));
  Derivation expect(VectorField::coordinate(c, 0), E("1"));
  CHECK(derBracket(dx, d) == expect);

  Rng rng;
  Chart c3 = Chart::make({"x", "y", "z"});
  for (int i = 0; i < 20; ++i) {
    Derivation a = randomDer(rng, c3), b = randomDer(rng, c3), e = randomDer(rng, c3);
    CHECK(derBracket(Derivation(a.sym, RationalExpr()), Derivation(b.sym, RationalExpr())) ==
          Derivation(lieBracket(a.sym, b.sym), RationalExpr()));
    CHECK(derBracket(Derivation::identity(c3), a).isZero());
    Derivation jac = derBracket(a, derBracket(b, e)) + derBracket(b, derBracket(e, a)) +
                     derBracket(e, derBracket(a, b));
    CHECK(jac.isZero());
    // commutator of operators on a generic section
    RationalExpr lam = rng.expr(c3);
    CHECK(derApply(derBracket(a, b), lam) ==
          derApply(a, derApply(b, lam)) - derApply(b, derApply(a, lam)));
  }
}

TEST_CASE("atiyah_d: coordinate examples") {
  Chart c = Chart::make({"x", "y", "z"});
  KForm theta = KForm::dcoord(c, 2) - KForm::dcoord(c, 0).scaled(E("y"));
  AtiyahForm w = AtiyahForm::fromBase(theta);
  AtiyahForm dw = atiyahD(w);
  CHECK(dw.comp0 == exteriorD(theta));
  CHECK(dw.comp1 == theta);

  RationalExpr lam = E("x^2*y");
  AtiyahForm j1 = jetProlong(lam, c);
  CHECK(j1.comp0 == exteriorD(KForm::function(c, lam)));
  CHECK(j1.comp1 == KForm::function(c, lam));
}

TEST_CASE("atiyah_d: d after d vanishes") {
  Rng rng;
  Chart c = Chart::make({"x", "y", "z"});
  for (int i = 0; i < 25; ++i) {
    AtiyahForm w = randomAtiyah(rng, c, rng.uniform(0, 3));
    CHECK(atiyahD(atiyahD(w)).isZero());
  }
}

TEST_CASE("atiyah_d: component formula matches CE evaluation, degrees 0..3") {
  Chart c = Chart::make({"x", "y", "z"});
  Rng rng;
  auto frame = dlFrame(c);
  for (int k = 0; k <= 3; ++k) {
    AtiyahForm w = randomAtiyah(rng, c, k);
    AtiyahForm dw = atiyahD(w);
    // all frame tuples
    Rng::forEachIndex(c.dim() + 1, k + 1, [&](const Index& idx) {
      std::vector<Derivation> args;
      for (int i : idx) args.push_back(frame[static_cast<size_t>(i)]);
      CHECK(evalAtiyah(dw, args) == ceEval(w, args));
    });
    // random derivations with non-constant coefficients
    for (int t = 0; t < 3; ++t) {
      std::vector<Derivation> args;
      for (int i = 0; i <= k; ++i) args.push_back(randomDer(rng, c));
      CHECK(evalAtiyah(dw, args) == ceEval(w, args));
    }
  }
}

TEST_CASE("atiyah_contract: examples and evaluation identity") {
  Chart c = Chart::make({"x", "y", "z"});
  KForm theta = KForm::dcoord(c, 2) - KForm::dcoord(c, 0).scaled(E("y"));
  AtiyahForm w(wedge(KForm::dcoord(c, 0), KForm::dcoord(c, 1)), theta);
  Derivation dz(VectorField::coordinate(c, 2), RationalExpr());
  AtiyahForm iw = atiyahContract(dz, w);
  CHECK(iw.comp0.isZero());
  CHECK(iw.comp1 == KForm::function(c, E("-1")));

  Rng rng;
  for (int i = 0; i < 20; ++i) {
    // jet duality: i_D j1(lam) = D(lam)
    RationalExpr lam = rng.expr(c);
    Derivation d = randomDer(rng, c);
    CHECK(atiyahContract(d, jetProlong(lam, c)).comp0.coeff({}) == derApply(d, lam));

    int k = rng.uniform(1, 3);
    AtiyahForm v = randomAtiyah(rng, c, k);
    std::vector<Derivation> rest;
    for (int j = 1; j < k; ++j) rest.push_back(randomDer(rng, c));
    std::vector<Derivation> full{d};
    full.insert(full.end(), rest.begin(), rest.end());
    CHECK(evalAtiyah(atiyahContract(d, v), rest) == evalAtiyah(v, full));
    CHECK(atiyahContract(d, atiyahContract(d, atiyahD(v))).isZero());
  }
  CHECK_THROWS_AS(atiyahContract(dz, AtiyahForm::section(c, E("1"))), DegreeZero);
}

TEST_CASE("atiyah_lie: identity derivation acts as identity; derivation oracle") {
  Chart c = Chart::make({"x", "y", "z"});
  Rng rng;
  for (int k = 0; k <= 3; ++k) {
    AtiyahForm w = randomAtiyah(rng, c, k);
    CHECK(atiyahLie(Derivation::identity(c), w) == w);
  }
  // (L_D w)(D1..) = D(w(D1..)) - sum w(..,[D,Di],..)
  for (int i = 0; i < 15; ++i) {
    int k = rng.uniform(1, 2);
    Derivation d = randomDer(rng, c);
    AtiyahForm w = randomAtiyah(rng, c, k);
    std::vector<Derivation> args;
    for (int j = 0; j < k; ++j) args.push_back(randomDer(rng, c));
    RationalExpr lhs = evalAtiyah(atiyahLie(d, w), args);
    RationalExpr rhs = derApply(d, evalAtiyah(w, args));
    for (int j = 0; j < k; ++j) {
      auto mod = args;
      mod[static_cast<size_t>(j)] = derBracket(d, args[static_cast<size_t>(j)]);
      rhs = rhs - evalAtiyah(w, mod);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("wedge of a real one-form against evaluation") {
  Chart c = Chart::make({"x", "y", "z"});
  Rng rng;
  for (int i = 0; i < 15; ++i) {
    KForm a = rng.kform(c, 1, 1);
    int k = rng.uniform(1, 2);
    AtiyahForm w = randomAtiyah(rng, c, k);
    AtiyahForm aw = wedgeReal1(a, w);
    std::vector<Derivation> args;
    for (int j = 0; j <= k; ++j) args.push_back(randomDer(rng, c));
    RationalExpr expect;
    for (int j = 0; j <= k; ++j) {
      std::vector<Derivation> rest;
      for (int m = 0; m <= k; ++m)
        if (m != j) rest.push_back(args[static_cast<size_t>(m)]);
      RationalExpr t =
          evaluate(a, {args[static_cast<size_t>(j)].sym}) * evalAtiyah(w, rest);
      expect = j % 2 == 0 ? expect + t : expect - t;
    }
    CHECK(evalAtiyah(aw, args) == expect);
  }
}

TEST_CASE("omni pairing: examples, symmetry") {
  Chart c = Chart::make({"x", "y"});
  OmniSection e1(Derivation(VectorField::coordinate(c, 0), RationalExpr()),
                 JetSection::zero(c));
  OmniSection e2(Derivation::zero(c), JetSection(KForm::dcoord(c, 0), RationalExpr()));
  CHECK(omniPairing(e1, e2) == E("1"));

  RationalExpr lam = E("x*y+1");
  OmniSection e3(Derivation::identity(c),
                 JetSection::fromAtiyahForm(jetProlong(lam, c)));
  OmniSection e4(Derivation::zero(c),
                 JetSection::fromAtiyahForm(jetProlong(lam, c)));
  CHECK(omniPairing(e3, e4) == lam);

  Rng rng;
  for (int i = 0; i < 20; ++i) {
    OmniSection a = randomOmni(rng, c), b = randomOmni(rng, c);
    CHECK(omniPairing(a, b) == omniPairing(b, a));
  }
}

TEST_CASE("dorfman: examples") {
  Chart c = Chart::make({"x", "y"});
  Rng rng;
  for (int i = 0; i < 10; ++i) {
    Derivation d1 = randomDer(rng, c), d2 = randomDer(rng, c);
    JetSection j1(rng.kform(c, 1, 1), rng.expr(c, 1));
    OmniSection r = dorfman(OmniSection(d1, JetSection::zero(c)),
                            OmniSection(d2, JetSection::zero(c)));
    CHECK(r.der == derBracket(d1, d2));
    CHECK(r.jet.isZero());
    CHECK(dorfman(OmniSection(Derivation::zero(c), j1),
                  OmniSection(Derivation::zero(c), j1))
              .isZero());
    OmniSection r2 = dorfman(OmniSection(d1, JetSection::zero(c)),
                             OmniSection(Derivation::zero(c), j1));
    CHECK(r2.der.isZero());
    CHECK(r2.jet.asAtiyahForm() == atiyahLie(d1, j1.asAtiyahForm()));
  }
}

TEST_CASE("dorfman: left Leibniz and module Leibniz") {
  Chart c = Chart::make({"x", "y"});
  Rng rng;
  for (int i = 0; i < 8; ++i) {
    OmniSection a = randomOmni(rng, c), b = randomOmni(rng, c), e = randomOmni(rng, c);
    OmniSection lhs = dorfman(a, dorfman(b, e));
    OmniSection rhs = dorfman(dorfman(a, b), e) + dorfman(b, dorfman(a, e));
    CHECK((lhs - rhs).isZero());

    RationalExpr f = rng.expr(c, 1);
    OmniSection mod = dorfman(a, b.scaled(f)) - dorfman(a, b).scaled(f) -
                      b.scaled(a.der.sym.apply(f));
    CHECK(mod.isZero());
  }
}

TEST_CASE("dorfman: pairing invariance and self-bracket") {
  Chart c = Chart::make({"x", "y"});
  Rng rng;
  for (int i = 0; i < 8; ++i) {
    OmniSection a = randomOmni(rng, c), b = randomOmni(rng, c), e = randomOmni(rng, c);
    RationalExpr lhs = derApply(a.der, omniPairing(b, e));
    RationalExpr rhs = omniPairing(dorfman(a, b), e) + omniPairing(b, dorfman(a, e));
    CHECK(lhs == rhs);
    // [[a,a]] = (0, j1 of half the self-pairing)
    OmniSection sq = dorfman(a, a);
    CHECK(sq.der.isZero());
    RationalExpr half = omniPairing(a, a) / E("2");
    CHECK(sq.jet.asAtiyahForm() == jetProlong(half, c));
  }
}

TEST_CASE("adjoint: pairing identity, identity endomorphism") {
  Chart c = Chart::make({"x", "y", "z"});
  Rng rng;
  EndoDL id = EndoDL::identityEndo(c);
  for (int i = 0; i < 10; ++i) {
    EndoDL F(c);
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) F.A.at(r, s) = rng.expr(c, 1);
    F.b = rng.vectorField(c, 1);
    F.xi = rng.kform(c, 1, 1);
    F.c = rng.expr(c, 1);
    EndoJ1 Ft = adjoint(F);
    Derivation d = randomDer(rng, c);
    JetSection j(rng.kform(c, 1, 1), rng.expr(c, 1));
    CHECK(jetPair(d, Ft.apply(j)) == jetPair(F.apply(d), j));
    CHECK(id.apply(d) == d);
    // compose agrees with successive application
    EndoDL G(c);
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) G.A.at(r, s) = rng.expr(c, 1);
    G.b = rng.vectorField(c, 1);
    G.xi = rng.kform(c, 1, 1);
    G.c = rng.expr(c, 1);
    CHECK(F.compose(G).apply(d) == F.apply(G.apply(d)));
  }
}

TEST_CASE("flat and sharp: component formulas against the pairing") {
  Chart c = Chart::make({"x", "y", "z"});
  KForm theta = KForm::dcoord(c, 2) - KForm::dcoord(c, 0).scaled(E("y"));
  AtiyahForm omega(exteriorD(theta), theta);
  Rng rng;
  for (int i = 0; i < 10; ++i) {
    Derivation d = randomDer(rng, c), d2 = randomDer(rng, c);
    JetSection fl = flatMap(omega, d);
    CHECK(fl.alpha == contract(d.sym, exteriorD(theta)) + theta.scaled(d.wt));
    CHECK(fl.fn == -evaluate(theta, {d.sym}));
    // w(D, D') = <D', flat(D)>
    CHECK(jetPair(d2, fl) == evalAtiyah(omega, {d, d2}));

    JacobiBivector J(rng.polyvector(c, 2, 1), rng.vectorField(c, 1));
    JetSection a(rng.kform(c, 1, 1), rng.expr(c, 1));
    JetSection b(rng.kform(c, 1, 1), rng.expr(c, 1));
    // <J#a, b> = J(a,b) = Lambda(a0,b0) + f_a i_E b0 - f_b i_E a0
    RationalExpr direct = evaluate(J.lambda, {a.alpha, b.alpha}) +
                          a.fn * evaluate(b.alpha, {J.euler}) -
                          b.fn * evaluate(a.alpha, {J.euler});
    CHECK(jetPair(sharpMap(J, a), b) == direct);
    CHECK(J.pair(a, b) == -J.pair(b, a));
  }
}

TEST_CASE("frame matrices reproduce flat and sharp") {
  Chart c = Chart::make({"x", "y", "z"});
  Rng rng;
  AtiyahForm w = randomAtiyah(rng, c, 2);
  Matrix M = flatFrameMatrix(w);
  auto dl = dlFrame(c);
  for (int col = 0; col <= 3; ++col) {
    JetSection j = flatMap(w, dl[static_cast<size_t>(col)]);
    for (int row = 0; row < 3; ++row) CHECK(M.at(row, col) == j.alpha.coeff(Index{row}));
    CHECK(M.at(3, col) == j.fn);
  }
  JacobiBivector J(rng.polyvector(c, 2, 1), rng.vectorField(c, 1));
  Matrix N = sharpFrameMatrix(J);
  auto jf = jetFrame(c);
  for (int col = 0; col <= 3; ++col) {
    Derivation d = sharpMap(J, jf[static_cast<size_t>(col)]);
    for (int row = 0; row < 3; ++row)
      CHECK(N.at(row, col) == d.sym.comp[static_cast<size_t>(row)]);
    CHECK(N.at(3, col) == d.wt);
  }
}

TEST_CASE("twisted pullback: identity, functoriality, naturality of d") {
  Chart c = Chart::make({"x", "y"});
  Rng rng;
  ChartMap id = ChartMap::identity(c);
  AtiyahForm w = randomAtiyah(rng, c, 2);
  CHECK(atiyahPullback(id, E("1"), w) == w);
  CHECK_THROWS_AS(atiyahPullback(id, RationalExpr(), w), NonInvertibleCocycle);

  Chart a = Chart::make({"u", "v"});
  Chart b = Chart::make({"s", "t"});
  for (int i = 0; i < 10; ++i) {
    ChartMap F(a, b, {rng.expr(a, 1), rng.expr(a, 1)});
    ChartMap G(b, c, {rng.expr(b, 1), rng.expr(b, 1)});
    RationalExpr kF = rng.exprNonzero(a, 1), kG = rng.exprNonzero(b, 1);
    if (F.pullback(kG).isZero()) continue;  // kG can die on the image of F
    int k = rng.uniform(0, 2);
    AtiyahForm v = randomAtiyah(rng, c, k);
    AtiyahForm once = atiyahPullback(G.compose(F), kF * F.pullback(kG), v);
    AtiyahForm twice = atiyahPullback(F, kF, atiyahPullback(G, kG, v));
    CHECK(once == twice);
  }
}

TEST_CASE("twisted pullback commutes with d on fixed inputs") {
  Rng rng;
  Chart a = Chart::make({"u", "v"});
  Chart b = Chart::make({"s", "t"});
  for (int i = 0; i < 10; ++i) {
    ChartMap F(a, b, {rng.expr(a, 1), rng.expr(a, 1)});
    RationalExpr kF = rng.exprNonzero(a, 1);
    AtiyahForm v = randomAtiyah(rng, b, rng.uniform(0, 2));
    CHECK(atiyahPullback(F, kF, atiyahD(v)) == atiyahD(atiyahPullback(F, kF, v)));
  }
}

TEST_CASE("atlas compatibility: projectivized cotangent plane") {
  Chart c1 = Chart::make({"x", "y", "p"});
  Chart c2 = Chart::make({"x2", "y2", "q"});
  ChartMap F(c1, c2, {E("x"), E("y"), E("1/p")});
  KForm theta1 = KForm::dcoord(c1, 1) - KForm::dcoord(c1, 0).scaled(E("p"));
  KForm theta2 = KForm::dcoord(c2, 0) - KForm::dcoord(c2, 1).scaled(E("q"));
  AtiyahForm w1 = AtiyahForm::fromBase(theta1);
  AtiyahForm w2 = AtiyahForm::fromBase(theta2);

  // kappa = -q on the overlap, i.e. -1/p in the first chart
  TransitionData good(F, E("-1/p"));
  CHECK(atlasCompat(w1, w2, good).isZero());
  TransitionData bad(F, E("1/p"));
  CHECK_FALSE(atlasCompat(w1, w2, bad).isZero());

  // the contact Atiyah 2-forms are compatible under the same cocycle
  CHECK(atlasCompat(atiyahD(w1), atiyahD(w2), good).isZero());

  Chart c = Chart::make({"x", "y"});
  Rng rng;
  AtiyahForm w = randomAtiyah(rng, c, 2);
  TransitionData triv(ChartMap::identity(c), E("1"));
  CHECK(atlasCompat(w, w, triv).isZero());
}
