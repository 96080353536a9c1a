#ifndef GCB_TENSOR_HPP
#define GCB_TENSOR_HPP

#include "gcb/rational.hpp"

#include <map>

namespace gcb {

struct DegreeZero : GcbError {
  DegreeZero() : GcbError("cannot contract a degree-0 form") {}
};

// Ordered coordinate chart; coordinates are interned variables.
class Chart {
 public:
  std::vector<int> coords;

  Chart() = default;
  explicit Chart(const std::vector<std::string>& names);
  static Chart make(std::initializer_list<const char*> names);

  int dim() const { return static_cast<int>(coords.size()); }
  int coordVar(int i) const { return coords.at(static_cast<size_t>(i)); }
  // position of variable in this chart, -1 if absent
  int indexOf(int var) const;
  std::string coordName(int i) const { return VarTable::name(coords.at(static_cast<size_t>(i))); }
  RationalExpr coordExpr(int i) const { return RationalExpr::variable(coordVar(i)); }

  // chart with one extra coordinate appended
  Chart extended(const std::string& extra) const;

  bool operator==(const Chart& o) const { return coords == o.coords; }
};

// strictly increasing tuple of coordinate positions
using Index = std::vector<int>;

class VectorField {
 public:
  Chart chart;
  std::vector<RationalExpr> comp;  // size = chart.dim()

  VectorField() = default;
  explicit VectorField(const Chart& c) : chart(c), comp(c.dim()) {}
  static VectorField coordinate(const Chart& c, int i);

  bool isZero() const;
  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField scaled(const RationalExpr& f) const;
  RationalExpr apply(const RationalExpr& f) const;  // directional derivative
  bool operator==(const VectorField& o) const { return comp == o.comp; }
  std::string str() const;
};

// Antisymmetric covariant tensor, components on strictly increasing indices.
class KForm {
 public:
  Chart chart;
  int degree = 0;
  std::map<Index, RationalExpr> comp;  // absent = zero

  KForm() = default;
  KForm(const Chart& c, int k) : chart(c), degree(k) {}
  static KForm zero(const Chart& c, int k) { return KForm(c, k); }
  static KForm function(const Chart& c, const RationalExpr& f);
  static KForm dcoord(const Chart& c, int i);  // dx_i
  static KForm oneForm(const Chart& c, const std::vector<RationalExpr>& comps);

  bool isZero() const;
  RationalExpr coeff(const Index& idx) const;
  void add(const Index& idx, const RationalExpr& c);  // sorts, tracks sign, drops zero

  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm operator-() const;
  KForm scaled(const RationalExpr& f) const;
  bool operator==(const KForm& o) const;
  std::string str() const;
};

class Polyvector {
 public:
  Chart chart;
  int degree = 0;
  std::map<Index, RationalExpr> comp;

  Polyvector() = default;
  Polyvector(const Chart& c, int k) : chart(c), degree(k) {}
  static Polyvector fromVectorField(const VectorField& X);
  VectorField toVectorField() const;  // requires degree 1

  bool isZero() const;
  RationalExpr coeff(const Index& idx) const;
  void add(const Index& idx, const RationalExpr& c);

  Polyvector operator+(const Polyvector& o) const;
  Polyvector operator-(const Polyvector& o) const;
  Polyvector operator-() const;
  Polyvector scaled(const RationalExpr& f) const;
  bool operator==(const Polyvector& o) const;
  std::string str() const;
};

// Rational map between charts; components of the target coordinates in
// source coordinates.
class ChartMap {
 public:
  Chart source, target;
  std::vector<RationalExpr> comp;  // size = target.dim()

  ChartMap() = default;
  ChartMap(const Chart& src, const Chart& tgt, std::vector<RationalExpr> c);
  static ChartMap identity(const Chart& c);

  RationalExpr pullback(const RationalExpr& f) const;  // f on target -> source
  ChartMap compose(const ChartMap& inner) const;       // this after inner
};

KForm wedge(const KForm& a, const KForm& b);
Polyvector wedge(const Polyvector& a, const Polyvector& b);

KForm exteriorD(const KForm& w);
KForm contract(const VectorField& X, const KForm& w);  // throws DegreeZero
RationalExpr evaluate(const KForm& w, const std::vector<VectorField>& args);
RationalExpr evaluate(const Polyvector& p, const std::vector<KForm>& oneForms);

VectorField lieBracket(const VectorField& X, const VectorField& Y);
KForm lie(const VectorField& X, const KForm& w);  // Cartan formula
Polyvector lie(const VectorField& X, const Polyvector& p);

// Schouten-Nijenhuis bracket; on two vector fields equals the Lie bracket,
// and [P,P] = 2 P*P for even-degree P with the sign convention fixed here.
Polyvector schouten(const Polyvector& p, const Polyvector& q);

KForm pullback(const ChartMap& f, const KForm& w);

}  // namespace gcb

#endif
