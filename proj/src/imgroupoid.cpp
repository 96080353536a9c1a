#include "gcb/imgroupoid.hpp"

#include "gcb/hitchin.hpp"

namespace gcb {

namespace {

const RationalExpr& one() {
  static const RationalExpr v = RationalExpr::fromInt(1);
  return v;
}

KForm dfun(const Chart& c, const RationalExpr& f) {
  return exteriorD(KForm::function(c, f));
}

ASection sectionSum(const ASection& a, const ASection& b, bool minus) {
  ASection r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = minus ? a[i] - b[i] : a[i] + b[i];
  return r;
}

bool sectionZero(const ASection& a) {
  for (auto& e : a)
    if (!e.isZero()) return false;
  return true;
}

std::string sectionStr(const ASection& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + a[i].str();
  return s + ")";
}

// first nonzero residual wins
struct Accum {
  bool zero = true;
  std::string detail;

  void feed(bool z, const std::string& d) {
    if (!z && zero) {
      zero = false;
      detail = d;
    }
  }
};

std::vector<ASection> algebroidTestSections(const LieAlgebroidPresentation& alg) {
  std::vector<ASection> out;
  for (auto& f : coordMultipliers(alg.chart))
    for (int i = 0; i < alg.rank; ++i) out.push_back(alg.basis(i, f));
  return out;
}

}  // namespace

LieAlgebroidPresentation LieAlgebroidPresentation::tangent(const Chart& ch) {
  LieAlgebroidPresentation alg;
  alg.chart = ch;
  alg.rank = ch.dim();
  for (int i = 0; i < ch.dim(); ++i) alg.rho.push_back(VectorField::coordinate(ch, i));
  alg.gamma.assign(static_cast<size_t>(ch.dim()), RationalExpr());
  return alg;
}

ASection LieAlgebroidPresentation::structure(int i, int j) const {
  ASection r(static_cast<size_t>(rank));
  if (i == j) return r;
  auto it = c.find({std::min(i, j), std::max(i, j)});
  if (it == c.end()) return r;
  for (int k = 0; k < rank; ++k)
    r[static_cast<size_t>(k)] =
        i < j ? it->second[static_cast<size_t>(k)] : -it->second[static_cast<size_t>(k)];
  return r;
}

VectorField LieAlgebroidPresentation::anchor(const ASection& a) const {
  VectorField v(chart);
  for (int i = 0; i < rank; ++i) v = v + rho[static_cast<size_t>(i)].scaled(a[static_cast<size_t>(i)]);
  return v;
}

ASection LieAlgebroidPresentation::bracket(const ASection& a, const ASection& b) const {
  ASection r(static_cast<size_t>(rank));
  VectorField ra = anchor(a), rb = anchor(b);
  for (int k = 0; k < rank; ++k) {
    RationalExpr acc = ra.apply(b[static_cast<size_t>(k)]) - rb.apply(a[static_cast<size_t>(k)]);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        if (i == j) continue;
        acc = acc + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] *
                        structure(i, j)[static_cast<size_t>(k)];
      }
    r[static_cast<size_t>(k)] = acc;
  }
  return r;
}

Derivation LieAlgebroidPresentation::nabla(const ASection& a) const {
  Derivation d = Derivation::zero(chart);
  for (int i = 0; i < rank; ++i)
    d = d + Derivation(rho[static_cast<size_t>(i)], gamma[static_cast<size_t>(i)])
                .scaled(a[static_cast<size_t>(i)]);
  return d;
}

ASection LieAlgebroidPresentation::basis(int i, const RationalExpr& f) const {
  ASection a(static_cast<size_t>(rank));
  a[static_cast<size_t>(i)] = f;
  return a;
}

CheckReport checkLieAlgebroid(const LieAlgebroidPresentation& alg) {
  CheckReport rep;
  auto secs = algebroidTestSections(alg);

  Accum anchor;
  for (size_t i = 0; i < secs.size() && anchor.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && anchor.zero; ++j) {
      VectorField r = alg.anchor(alg.bracket(secs[i], secs[j])) -
                      lieBracket(alg.anchor(secs[i]), alg.anchor(secs[j]));
      anchor.feed(r.isZero(), r.str());
    }
  rep.add("anchor", anchor.zero, anchor.detail);

  Accum jac;
  for (size_t i = 0; i < secs.size() && jac.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && jac.zero; ++j)
      for (size_t k = j + 1; k < secs.size() && jac.zero; ++k) {
        ASection r = sectionSum(
            sectionSum(alg.bracket(alg.bracket(secs[i], secs[j]), secs[k]),
                       alg.bracket(alg.bracket(secs[j], secs[k]), secs[i]), false),
            alg.bracket(alg.bracket(secs[k], secs[i]), secs[j]), false);
        jac.feed(sectionZero(r), sectionStr(r));
      }
  rep.add("jacobi", jac.zero, jac.detail);
  return rep;
}

CheckReport checkFlatConnection(const LieAlgebroidPresentation& alg) {
  CheckReport rep;
  auto secs = algebroidTestSections(alg);
  Accum curv;
  for (size_t i = 0; i < secs.size() && curv.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && curv.zero; ++j) {
      Derivation r = derBracket(alg.nabla(secs[i]), alg.nabla(secs[j])) -
                     alg.nabla(alg.bracket(secs[i], secs[j]));
      curv.feed(r.isZero(), "(" + r.sym.str() + ", " + r.wt.str() + ")");
    }
  rep.add("curvature", curv.zero, curv.detail);
  return rep;
}

ImForm ImForm::zero(const Chart& ch, int rank, int degree) {
  ImForm f;
  f.chart = ch;
  f.degree = degree;
  f.l.assign(static_cast<size_t>(rank), AtiyahForm(ch, degree - 1));
  f.d.assign(static_cast<size_t>(rank), AtiyahForm(ch, degree));
  return f;
}

AtiyahForm ImForm::lOf(const ASection& a) const {
  AtiyahForm r(chart, degree - 1);
  for (size_t i = 0; i < l.size(); ++i) r = r + l[i].scaled(a[i]);
  return r;
}

AtiyahForm ImForm::dOf(const ASection& a) const {
  AtiyahForm r(chart, degree);
  for (size_t i = 0; i < d.size(); ++i)
    r = r + d[i].scaled(a[i]) + wedgeReal1(dfun(chart, a[i]), l[i]);
  return r;
}

CheckReport checkImForm(const LieAlgebroidPresentation& alg, const ImForm& f) {
  if (!checkLieAlgebroid(alg).pass() || !checkFlatConnection(alg).pass())
    throw InvalidAlgebroid();
  CheckReport rep;
  auto secs = algebroidTestSections(alg);

  if (f.rawD) {
    Accum r1;
    for (int i = 0; i < alg.rank && r1.zero; ++i) {
      AtiyahForm base = f.rawD(alg.basis(i));
      AtiyahForm tab = base - f.d[static_cast<size_t>(i)];
      r1.feed(tab.isZero(), tab.str());
      for (auto& m : coordMultipliers(alg.chart)) {
        AtiyahForm r = f.rawD(alg.basis(i, m)) - base.scaled(m) -
                       wedgeReal1(dfun(alg.chart, m), f.l[static_cast<size_t>(i)]);
        r1.feed(r.isZero(), r.str());
      }
    }
    rep.add("r1", r1.zero, r1.detail);
  }

  Accum r2;
  for (size_t i = 0; i < secs.size() && r2.zero; ++i)
    for (size_t j = i + 1; j < secs.size() && r2.zero; ++j) {
      AtiyahForm r = atiyahLie(alg.nabla(secs[i]), f.dOf(secs[j])) -
                     atiyahLie(alg.nabla(secs[j]), f.dOf(secs[i])) -
                     f.dOf(alg.bracket(secs[i], secs[j]));
      r2.feed(r.isZero(), r.str());
    }
  rep.add("r2", r2.zero, r2.detail);

  Accum r3;
  for (size_t i = 0; i < secs.size() && r3.zero; ++i)
    for (size_t j = 0; j < secs.size() && r3.zero; ++j) {
      AtiyahForm r = atiyahLie(alg.nabla(secs[i]), f.lOf(secs[j])) -
                     atiyahContract(alg.nabla(secs[j]), f.dOf(secs[i])) -
                     f.lOf(alg.bracket(secs[i], secs[j]));
      r3.feed(r.isZero(), r.str());
    }
  rep.add("r3", r3.zero, r3.detail);

  Accum r4;
  if (f.degree >= 2)
    for (size_t i = 0; i < secs.size() && r4.zero; ++i)
      for (size_t j = i; j < secs.size() && r4.zero; ++j) {
        AtiyahForm r = atiyahContract(alg.nabla(secs[i]), f.lOf(secs[j])) +
                       atiyahContract(alg.nabla(secs[j]), f.lOf(secs[i]));
        r4.feed(r.isZero(), r.str());
      }
  rep.add("r4", r4.zero, r4.detail);
  return rep;
}

GroupoidPresentation GroupoidPresentation::pairGroupoid(const Chart& m) {
  int n = m.dim();
  GroupoidPresentation G;
  G.kind = GroupoidKind::Pair;
  G.base = m;
  G.g = m;
  for (int i = 0; i < n; ++i) G.g = G.g.extended(m.coordName(i) + "_s");
  G.g2 = G.g;
  for (int i = 0; i < n; ++i) G.g2 = G.g2.extended(m.coordName(i) + "_s2");
  G.g3 = G.g2;
  for (int i = 0; i < n; ++i) G.g3 = G.g3.extended(m.coordName(i) + "_s3");

  auto block = [&](const Chart& src, std::initializer_list<int> blocks) {
    std::vector<RationalExpr> comps;
    for (int b : blocks)
      for (int i = 0; i < n; ++i) comps.push_back(src.coordExpr(b * n + i));
    return comps;
  };
  G.t = ChartMap(G.g, m, block(G.g, {0}));
  G.s = ChartMap(G.g, m, block(G.g, {1}));
  G.u = ChartMap(m, G.g, block(m, {0, 0}));
  G.inv = ChartMap(G.g, G.g, block(G.g, {1, 0}));
  G.mul = ChartMap(G.g2, G.g, block(G.g2, {0, 2}));
  G.pr1 = ChartMap(G.g2, G.g, block(G.g2, {0, 1}));
  G.pr2 = ChartMap(G.g2, G.g, block(G.g2, {1, 2}));
  G.left = ChartMap(G.g3, G.g2, block(G.g3, {0, 2, 3}));
  G.right = ChartMap(G.g3, G.g2, block(G.g3, {0, 1, 3}));
  for (int i = 0; i < n; ++i) G.rightFrame.push_back(VectorField::coordinate(G.g, i));
  return G;
}

GroupoidPresentation GroupoidPresentation::bundleOfGroups(const Chart& m,
                                                          const std::string& fiber) {
  int n = m.dim();
  GroupoidPresentation G;
  G.kind = GroupoidKind::BundleOfGroups;
  G.base = m;
  G.g = m.extended(fiber);
  G.g2 = G.g.extended(fiber + "2");
  G.g3 = G.g2.extended(fiber + "3");

  auto proj = [&](const Chart& src) {
    std::vector<RationalExpr> comps;
    for (int i = 0; i < n; ++i) comps.push_back(src.coordExpr(i));
    return comps;
  };
  auto with = [&](const Chart& src, std::initializer_list<RationalExpr> extra) {
    std::vector<RationalExpr> comps = proj(src);
    for (auto& e : extra) comps.push_back(e);
    return comps;
  };
  RationalExpr a = G.g2.coordExpr(n), a2 = G.g2.coordExpr(n + 1), a3 = G.g3.coordExpr(n + 2);
  G.t = ChartMap(G.g, m, proj(G.g));
  G.s = ChartMap(G.g, m, proj(G.g));
  G.u = ChartMap(m, G.g, with(m, {RationalExpr()}));
  G.inv = ChartMap(G.g, G.g, with(G.g, {-G.g.coordExpr(n)}));
  G.mul = ChartMap(G.g2, G.g, with(G.g2, {a + a2}));
  G.pr1 = ChartMap(G.g2, G.g, with(G.g2, {a}));
  G.pr2 = ChartMap(G.g2, G.g, with(G.g2, {a2}));
  G.left = ChartMap(G.g3, G.g2, with(G.g3, {a + a2, a3}));
  G.right = ChartMap(G.g3, G.g2, with(G.g3, {a, a2 + a3}));
  G.rightFrame.push_back(VectorField::coordinate(G.g, n));
  return G;
}

GroupoidPresentation GroupoidPresentation::unitGroupoid(const Chart& m) {
  GroupoidPresentation G;
  G.kind = GroupoidKind::Unit;
  G.base = G.g = G.g2 = G.g3 = m;
  ChartMap id = ChartMap::identity(m);
  G.s = G.t = G.u = G.inv = G.mul = G.pr1 = G.pr2 = G.left = G.right = id;
  return G;
}

CheckReport checkGroupoid(const GroupoidPresentation& G) {
  CheckReport rep;
  auto mapDiff = [](const ChartMap& a, const ChartMap& b) {
    Accum acc;
    for (size_t i = 0; i < a.comp.size(); ++i) {
      RationalExpr r = a.comp[i] - b.comp[i];
      acc.feed(r.isZero(), r.str());
    }
    return acc;
  };
  auto addMap = [&](const std::string& name, const ChartMap& a, const ChartMap& b) {
    Accum acc = mapDiff(a, b);
    rep.add(name, acc.zero, acc.detail);
  };
  addMap("unit_source", G.s.compose(G.u), ChartMap::identity(G.base));
  addMap("unit_target", G.t.compose(G.u), ChartMap::identity(G.base));
  addMap("inv_source", G.s.compose(G.inv), G.t);
  addMap("inv_target", G.t.compose(G.inv), G.s);
  addMap("mul_source", G.s.compose(G.mul), G.s.compose(G.pr2));
  addMap("mul_target", G.t.compose(G.mul), G.t.compose(G.pr1));
  addMap("assoc", G.mul.compose(G.left), G.mul.compose(G.right));

  RationalExpr coc = G.mul.pullback(G.deltaRep) -
                     G.pr1.pullback(G.deltaRep) * G.pr2.pullback(G.deltaRep);
  rep.add("cocycle", coc.isZero(), coc.isZero() ? "" : coc.str());
  RationalExpr cu = G.u.pullback(G.deltaRep) - one();
  rep.add("cocycle_unit", cu.isZero(), cu.isZero() ? "" : cu.str());
  return rep;
}

std::vector<VectorField> rightFrameOf(const GroupoidPresentation& G) {
  if (G.kind == GroupoidKind::Unit) return {};
  if (G.rightFrame.empty()) throw UnsupportedGroupoid();
  return G.rightFrame;
}

VectorField rightInvariantExtension(const GroupoidPresentation& G, const ASection& a) {
  auto frame = rightFrameOf(G);
  VectorField v(G.g);
  for (size_t k = 0; k < frame.size(); ++k)
    v = v + frame[k].scaled(G.t.pullback(a[k]));
  return v;
}

namespace {

// solve sum_k coeff_k cols[k] = rhs over the base chart; columns have the
// arrow-chart dimension, so an invertible row subset is searched first
ASection solveFrameCoords(const std::vector<std::vector<RationalExpr>>& cols,
                          const std::vector<RationalExpr>& rhs) {
  size_t m = cols.size(), dim = rhs.size();
  if (m == 0) {
    for (auto& e : rhs)
      if (!e.isZero()) throw GcbError("bracket leaves the right-invariant frame");
    return {};
  }
  ASection pickResult;
  std::vector<size_t> stack;
  std::function<bool(size_t)> search = [&](size_t from) -> bool {
    if (stack.size() == m) {
      Matrix M(static_cast<int>(m), static_cast<int>(m));
      for (size_t r = 0; r < m; ++r)
        for (size_t k = 0; k < m; ++k)
          M.at(static_cast<int>(r), static_cast<int>(k)) = cols[k][stack[r]];
      try {
        Matrix Mi = M.inverse();
        ASection out(m);
        for (size_t k = 0; k < m; ++k) {
          RationalExpr acc;
          for (size_t r = 0; r < m; ++r)
            acc = acc + Mi.at(static_cast<int>(k), static_cast<int>(r)) * rhs[stack[r]];
          out[k] = acc;
        }
        // consistency on the remaining rows
        for (size_t r = 0; r < dim; ++r) {
          RationalExpr res = rhs[r];
          for (size_t k = 0; k < m; ++k) res = res - out[k] * cols[k][r];
          if (!res.isZero()) throw GcbError("bracket leaves the right-invariant frame");
        }
        pickResult = out;
        return true;
      } catch (const Degenerate&) {
        return false;
      }
    }
    for (size_t r = from; r < dim; ++r) {
      stack.push_back(r);
      if (search(r + 1)) return true;
      stack.pop_back();
    }
    return false;
  };
  if (!search(0)) throw GcbError("right-invariant frame is degenerate at units");
  return pickResult;
}

}  // namespace

LieAlgebroidPresentation lieFunctor(const GroupoidPresentation& G) {
  auto frame = rightFrameOf(G);
  LieAlgebroidPresentation alg;
  alg.chart = G.base;
  alg.rank = static_cast<int>(frame.size());
  for (auto& f : frame) {
    VectorField r(G.base);
    for (int i = 0; i < G.base.dim(); ++i)
      r.comp[static_cast<size_t>(i)] = G.u.pullback(f.apply(G.t.comp[static_cast<size_t>(i)]));
    alg.rho.push_back(r);
    alg.gamma.push_back(G.u.pullback(f.apply(G.deltaRep) / G.deltaRep));
  }
  // unit restrictions of the frame columns, for expressing brackets
  std::vector<std::vector<RationalExpr>> cols;
  for (auto& f : frame) {
    std::vector<RationalExpr> col;
    for (auto& e : f.comp) col.push_back(G.u.pullback(e));
    cols.push_back(col);
  }
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = i + 1; j < frame.size(); ++j) {
      VectorField br = lieBracket(frame[i], frame[j]);
      std::vector<RationalExpr> rhs;
      for (auto& e : br.comp) rhs.push_back(G.u.pullback(e));
      bool allZero = true;
      for (auto& e : rhs) allZero = allZero && e.isZero();
      if (!allZero)
        alg.c[{static_cast<int>(i), static_cast<int>(j)}] = solveFrameCoords(cols, rhs);
    }
  return alg;
}

CheckReport checkMultiplicative(const GroupoidPresentation& G, const AtiyahForm& w) {
  RationalExpr kappaI = one() / G.pr1.pullback(G.deltaRep);
  AtiyahForm r = atiyahPullback(G.mul, one(), w) - atiyahPullback(G.pr1, one(), w) -
                 atiyahPullback(G.pr2, kappaI, w);
  CheckReport rep;
  rep.add("multiplicative", r.isZero(), r.isZero() ? "" : r.str());
  return rep;
}

ImForm inducedImForm(const GroupoidPresentation& G, const AtiyahForm& w) {
  if (!checkMultiplicative(G, w).pass()) throw NotMultiplicative();
  auto frame = rightFrameOf(G);
  ImForm f;
  f.chart = G.base;
  f.degree = w.degree;
  for (auto& x : frame) {
    Derivation ng(x, x.apply(G.deltaRep) / G.deltaRep);
    f.d.push_back(atiyahPullback(G.u, one(), atiyahLie(ng, w)));
    f.l.push_back(atiyahPullback(G.u, one(), atiyahContract(ng, w)));
  }
  return f;
}

AtiyahDecomposition decomposeAtiyah(const AtiyahForm& w) {
  return {w.comp0 - exteriorD(w.comp1), w.comp1};
}

AtiyahForm recomposeAtiyah(const AtiyahDecomposition& dec) {
  return AtiyahForm(dec.mu0 + exteriorD(dec.mu1), dec.mu1);
}

CheckReport checkChgCondition3(const GroupoidPresentation& G, const AtiyahForm& Omega,
                               const EndoDL& Phi, const AtiyahForm& omegaM) {
  AtiyahForm r = Omega + phiStar(Phi, Omega) - atiyahPullback(G.s, G.deltaRep, omegaM) +
                 atiyahPullback(G.t, one(), omegaM);
  CheckReport rep;
  rep.add("condition3", r.isZero(), r.isZero() ? "" : r.str());
  return rep;
}

}  // namespace gcb
