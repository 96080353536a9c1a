#include "gcb/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace gcb {

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(const std::vector<std::string>& names) {
  for (auto& n : names) coords.push_back(VarTable::intern(n));
  if (coords.empty()) throw GcbError("chart needs at least one coordinate");
  for (size_t i = 0; i < coords.size(); ++i)
    for (size_t j = i + 1; j < coords.size(); ++j)
      if (coords[i] == coords[j])
        throw GcbError("duplicate coordinate name: " + VarTable::name(coords[i]));
}

Chart Chart::make(std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return Chart(v);
}

int Chart::indexOf(int var) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == var) return static_cast<int>(i);
  return -1;
}

Chart Chart::extended(const std::string& extra) const {
  Chart c = *this;
  int v = VarTable::intern(extra);
  if (indexOf(v) >= 0) throw GcbError("coordinate already present: " + extra);
  c.coords.push_back(v);
  return c;
}

// ---------------------------------------------------------------------------
// index helpers

namespace {

// sorts idx strictly increasing; returns 0 if repeated index, else sign
int normalizeIndex(Index& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    size_t j = i;
    while (j > 0 && idx[j - 1] > idx[j]) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

// sign of merging two increasing index tuples, 0 if they intersect
int mergeIndices(const Index& a, const Index& b, Index& out) {
  out = a;
  out.insert(out.end(), b.begin(), b.end());
  return normalizeIndex(out);
}

template <typename T>
T addTensors(const T& a, const T& b) {
  T r = a;
  for (auto& [idx, c] : b.comp) {
    auto it = r.comp.find(idx);
    if (it == r.comp.end()) {
      if (!c.isZero()) r.comp.emplace(idx, c);
    } else {
      it->second = it->second + c;
      if (it->second.isZero()) r.comp.erase(it);
    }
  }
  return r;
}

template <typename T>
T scaleTensor(const T& a, const RationalExpr& f) {
  T r(a.chart, a.degree);
  if (f.isZero()) return r;
  for (auto& [idx, c] : a.comp) {
    RationalExpr v = c * f;
    if (!v.isZero()) r.comp.emplace(idx, v);
  }
  return r;
}

template <typename T>
T wedgeTensors(const T& a, const T& b) {
  T r(a.chart, a.degree + b.degree);
  for (auto& [ia, ca] : a.comp)
    for (auto& [ib, cb] : b.comp) {
      Index m;
      int s = mergeIndices(ia, ib, m);
      if (s == 0) continue;
      RationalExpr v = ca * cb;
      if (s < 0) v = -v;
      if (v.isZero()) continue;
      auto it = r.comp.find(m);
      if (it == r.comp.end()) {
        r.comp.emplace(m, v);
      } else {
        it->second = it->second + v;
        if (it->second.isZero()) r.comp.erase(it);
      }
    }
  return r;
}

template <typename T>
std::string tensorStr(const T& t, const char* symbol, const char* sep) {
  if (t.comp.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [idx, c] : t.comp) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < idx.size(); ++i)
      os << (i == 0 ? "*" : sep) << symbol << t.chart.coordName(idx[i]);
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::coordinate(const Chart& c, int i) {
  VectorField v(c);
  v.comp[static_cast<size_t>(i)] = RationalExpr::fromInt(1);
  return v;
}

bool VectorField::isZero() const {
  for (auto& c : comp)
    if (!c.isZero()) return false;
  return true;
}

VectorField VectorField::operator+(const VectorField& o) const {
  VectorField r(chart);
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] + o.comp[i];
  return r;
}
VectorField VectorField::operator-(const VectorField& o) const {
  VectorField r(chart);
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] - o.comp[i];
  return r;
}
VectorField VectorField::operator-() const {
  VectorField r(chart);
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = -comp[i];
  return r;
}
VectorField VectorField::scaled(const RationalExpr& f) const {
  VectorField r(chart);
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] * f;
  return r;
}

RationalExpr VectorField::apply(const RationalExpr& f) const {
  RationalExpr r;
  for (size_t i = 0; i < comp.size(); ++i) {
    if (comp[i].isZero()) continue;
    r = r + comp[i] * f.derivative(chart.coordVar(static_cast<int>(i)));
  }
  return r;
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < comp.size(); ++i) {
    if (comp[i].isZero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comp[i].str() << ")*d/d" << chart.coordName(static_cast<int>(i));
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// KForm / Polyvector

KForm KForm::function(const Chart& c, const RationalExpr& f) {
  KForm w(c, 0);
  if (!f.isZero()) w.comp.emplace(Index{}, f);
  return w;
}

KForm KForm::dcoord(const Chart& c, int i) {
  KForm w(c, 1);
  w.comp.emplace(Index{i}, RationalExpr::fromInt(1));
  return w;
}

KForm KForm::oneForm(const Chart& c, const std::vector<RationalExpr>& comps) {
  KForm w(c, 1);
  for (int i = 0; i < c.dim(); ++i)
    if (!comps[static_cast<size_t>(i)].isZero())
      w.comp.emplace(Index{i}, comps[static_cast<size_t>(i)]);
  return w;
}

bool KForm::isZero() const { return comp.empty(); }

RationalExpr KForm::coeff(const Index& idx) const {
  auto it = comp.find(idx);
  return it == comp.end() ? RationalExpr() : it->second;
}

void KForm::add(const Index& idx, const RationalExpr& c) {
  if (c.isZero()) return;
  Index sorted = idx;
  int s = normalizeIndex(sorted);
  if (s == 0) return;
  RationalExpr v = s > 0 ? c : -c;
  auto it = comp.find(sorted);
  if (it == comp.end()) {
    comp.emplace(sorted, v);
  } else {
    it->second = it->second + v;
    if (it->second.isZero()) comp.erase(it);
  }
}

KForm KForm::operator+(const KForm& o) const { return addTensors(*this, o); }
KForm KForm::operator-(const KForm& o) const { return addTensors(*this, -o); }
KForm KForm::operator-() const {
  KForm r(chart, degree);
  for (auto& [idx, c] : comp) r.comp.emplace(idx, -c);
  return r;
}
KForm KForm::scaled(const RationalExpr& f) const { return scaleTensor(*this, f); }
bool KForm::operator==(const KForm& o) const { return degree == o.degree && comp == o.comp; }
std::string KForm::str() const { return tensorStr(*this, "d", "^"); }

Polyvector Polyvector::fromVectorField(const VectorField& X) {
  Polyvector p(X.chart, 1);
  for (int i = 0; i < X.chart.dim(); ++i)
    if (!X.comp[static_cast<size_t>(i)].isZero())
      p.comp.emplace(Index{i}, X.comp[static_cast<size_t>(i)]);
  return p;
}

VectorField Polyvector::toVectorField() const {
  VectorField X(chart);
  for (auto& [idx, c] : comp) X.comp[static_cast<size_t>(idx[0])] = c;
  return X;
}

bool Polyvector::isZero() const { return comp.empty(); }

RationalExpr Polyvector::coeff(const Index& idx) const {
  auto it = comp.find(idx);
  return it == comp.end() ? RationalExpr() : it->second;
}

void Polyvector::add(const Index& idx, const RationalExpr& c) {
  if (c.isZero()) return;
  Index sorted = idx;
  int s = normalizeIndex(sorted);
  if (s == 0) return;
  RationalExpr v = s > 0 ? c : -c;
  auto it = comp.find(sorted);
  if (it == comp.end()) {
    comp.emplace(sorted, v);
  } else {
    it->second = it->second + v;
    if (it->second.isZero()) comp.erase(it);
  }
}

Polyvector Polyvector::operator+(const Polyvector& o) const { return addTensors(*this, o); }
Polyvector Polyvector::operator-(const Polyvector& o) const { return addTensors(*this, -o); }
Polyvector Polyvector::operator-() const {
  Polyvector r(chart, degree);
  for (auto& [idx, c] : comp) r.comp.emplace(idx, -c);
  return r;
}
Polyvector Polyvector::scaled(const RationalExpr& f) const { return scaleTensor(*this, f); }
bool Polyvector::operator==(const Polyvector& o) const {
  return degree == o.degree && comp == o.comp;
}
std::string Polyvector::str() const { return tensorStr(*this, "d/d", "^"); }

KForm wedge(const KForm& a, const KForm& b) { return wedgeTensors(a, b); }
Polyvector wedge(const Polyvector& a, const Polyvector& b) { return wedgeTensors(a, b); }

// ---------------------------------------------------------------------------
// ChartMap

ChartMap::ChartMap(const Chart& src, const Chart& tgt, std::vector<RationalExpr> c)
    : source(src), target(tgt), comp(std::move(c)) {
  if (comp.size() != static_cast<size_t>(target.dim()))
    throw GcbError("chart map has wrong number of components");
}

ChartMap ChartMap::identity(const Chart& c) {
  std::vector<RationalExpr> comps;
  for (int i = 0; i < c.dim(); ++i) comps.push_back(c.coordExpr(i));
  return ChartMap(c, c, comps);
}

RationalExpr ChartMap::pullback(const RationalExpr& f) const {
  std::map<int, RationalExpr> sub;
  for (int i = 0; i < target.dim(); ++i) sub[target.coordVar(i)] = comp[static_cast<size_t>(i)];
  return f.subst(sub);
}

ChartMap ChartMap::compose(const ChartMap& inner) const {
  std::vector<RationalExpr> comps;
  for (auto& c : comp) comps.push_back(inner.pullback(c));
  return ChartMap(inner.source, target, comps);
}

// ---------------------------------------------------------------------------
// calculus

KForm exteriorD(const KForm& w) {
  KForm r(w.chart, w.degree + 1);
  for (auto& [idx, c] : w.comp) {
    for (int k = 0; k < w.chart.dim(); ++k) {
      RationalExpr dc = c.derivative(w.chart.coordVar(k));
      if (dc.isZero()) continue;
      Index withK{k};
      withK.insert(withK.end(), idx.begin(), idx.end());
      r.add(withK, dc);
    }
  }
  return r;
}

KForm contract(const VectorField& X, const KForm& w) {
  if (w.degree < 1) throw DegreeZero();
  KForm r(w.chart, w.degree - 1);
  for (auto& [idx, c] : w.comp) {
    for (size_t p = 0; p < idx.size(); ++p) {
      const RationalExpr& xc = X.comp[static_cast<size_t>(idx[p])];
      if (xc.isZero()) continue;
      RationalExpr v = xc * c;
      if (p % 2 == 1) v = -v;
      Index rest;
      for (size_t q = 0; q < idx.size(); ++q)
        if (q != p) rest.push_back(idx[q]);
      r.add(rest, v);
    }
  }
  return r;
}

RationalExpr evaluate(const KForm& w, const std::vector<VectorField>& args) {
  if (static_cast<int>(args.size()) != w.degree)
    throw GcbError("form evaluated on wrong number of arguments");
  KForm cur = w;
  for (auto& X : args) cur = contract(X, cur);
  return cur.coeff(Index{});
}

RationalExpr evaluate(const Polyvector& p, const std::vector<KForm>& oneForms) {
  if (static_cast<int>(oneForms.size()) != p.degree)
    throw GcbError("polyvector evaluated on wrong number of arguments");
  Polyvector cur = p;
  for (auto& a : oneForms) {
    Polyvector next(cur.chart, cur.degree - 1);
    for (auto& [idx, c] : cur.comp) {
      for (size_t q = 0; q < idx.size(); ++q) {
        RationalExpr ac = a.coeff(Index{idx[q]});
        if (ac.isZero()) continue;
        RationalExpr v = ac * c;
        if (q % 2 == 1) v = -v;
        Index rest;
        for (size_t q2 = 0; q2 < idx.size(); ++q2)
          if (q2 != q) rest.push_back(idx[q2]);
        next.add(rest, v);
      }
    }
    cur = next;
  }
  return cur.coeff(Index{});
}

VectorField lieBracket(const VectorField& X, const VectorField& Y) {
  VectorField r(X.chart);
  for (size_t j = 0; j < r.comp.size(); ++j)
    r.comp[j] = X.apply(Y.comp[j]) - Y.apply(X.comp[j]);
  return r;
}

KForm lie(const VectorField& X, const KForm& w) {
  if (w.degree == 0) return contract(X, exteriorD(w));
  return contract(X, exteriorD(w)) + exteriorD(contract(X, w));
}

namespace {

// left derivative with respect to the odd generator at coordinate position k
Polyvector oddDerivative(const Polyvector& p, int k) {
  Polyvector r(p.chart, p.degree - 1);
  for (auto& [idx, c] : p.comp) {
    for (size_t q = 0; q < idx.size(); ++q) {
      if (idx[q] != k) continue;
      RationalExpr v = q % 2 == 0 ? c : -c;
      Index rest;
      for (size_t q2 = 0; q2 < idx.size(); ++q2)
        if (q2 != q) rest.push_back(idx[q2]);
      r.add(rest, v);
      break;
    }
  }
  return r;
}

Polyvector coeffDerivative(const Polyvector& p, int k) {
  Polyvector r(p.chart, p.degree);
  int var = p.chart.coordVar(k);
  for (auto& [idx, c] : p.comp) r.add(idx, c.derivative(var));
  return r;
}

}  // namespace

Polyvector schouten(const Polyvector& p, const Polyvector& q) {
  Polyvector r(p.chart, p.degree + q.degree - 1);
  for (int k = 0; k < p.chart.dim(); ++k) {
    Polyvector a = wedge(oddDerivative(p, k), coeffDerivative(q, k));
    Polyvector b = wedge(coeffDerivative(p, k), oddDerivative(q, k));
    if (p.degree % 2 == 1) b = -b;
    r = r + a + b;
  }
  return r;
}

Polyvector lie(const VectorField& X, const Polyvector& p) {
  return schouten(Polyvector::fromVectorField(X), p);
}

KForm pullback(const ChartMap& f, const KForm& w) {
  KForm r(f.source, w.degree);
  for (auto& [idx, c] : w.comp) {
    KForm term = KForm::function(f.source, f.pullback(c));
    for (int i : idx) {
      // dF_i expressed in source coordinates
      std::vector<RationalExpr> d;
      for (int j = 0; j < f.source.dim(); ++j)
        d.push_back(f.comp[static_cast<size_t>(i)].derivative(f.source.coordVar(j)));
      term = wedge(term, KForm::oneForm(f.source, d));
      if (term.isZero()) break;
    }
    r = r + term;
  }
  return r;
}

}  // namespace gcb
