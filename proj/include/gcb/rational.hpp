#ifndef GCB_RATIONAL_HPP
#define GCB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcb {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

struct GcbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroDenominator : GcbError {
  ZeroDenominator() : GcbError("division by an identically zero expression") {}
};
struct ParseError : GcbError {
  int line, col;
  ParseError(const std::string& what, int line_, int col_)
      : GcbError(what), line(line_), col(col_) {}
};

// Interned coordinate names. Append-only, shared by all charts.
class VarTable {
 public:
  static int intern(const std::string& name);
  static const std::string& name(int id);
};

// Sparse exponent vector, entries sorted by variable id, exponents > 0.
class Monomial {
 public:
  std::vector<std::pair<int, int>> e;

  Monomial() = default;
  static Monomial variable(int var, int exp = 1);

  int degree() const;
  int exponent(int var) const;
  bool isOne() const { return e.empty(); }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial dividedBy(const Monomial& o) const;  // requires divides(o) false -> o/this
  static Monomial gcd(const Monomial& a, const Monomial& b);

  // graded lexicographic: total degree first, then lex with lower var id more
  // significant and higher exponent first
  static int cmp(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return e == o.e; }
};

class Polynomial {
 public:
  struct Term {
    Monomial m;
    Rat c;
  };
  // sorted descending in Monomial::cmp, no zero coefficients
  std::vector<Term> terms;

  Polynomial() = default;
  static Polynomial zero() { return {}; }
  static Polynomial constant(const Rat& c);
  static Polynomial variable(int var);

  bool isZero() const { return terms.empty(); }
  bool isConstant() const;
  Rat constantValue() const;  // requires isConstant
  int totalDegree() const;
  int degreeIn(int var) const;
  void collectVars(std::vector<int>& out) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rat& c) const;
  Polynomial pow(int n) const;

  Polynomial derivative(int var) const;

  // coefficient (a polynomial in the other vars) of var^deg
  Polynomial coefficientOf(int var, int deg) const;

  // exact multivariate division; nullopt if not divisible
  std::optional<Polynomial> divExact(const Polynomial& d) const;

  const Rat& leadingCoeff() const { return terms.front().c; }
  const Monomial& leadingMonomial() const { return terms.front().m; }

  bool operator==(const Polynomial& o) const;

  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  std::string str() const;
};

// Exact multivariate rational function; canonical form: gcd-reduced,
// denominator monic in graded-lex order, zero is 0/1.
class RationalExpr {
 public:
  Polynomial num, den;

  RationalExpr() : num(Polynomial::zero()), den(Polynomial::constant(1)) {}
  RationalExpr(const Polynomial& n, const Polynomial& d);  // normalizes
  static RationalExpr fromInt(long v);
  static RationalExpr fromRat(const Rat& v);
  static RationalExpr variable(int var);
  static RationalExpr poly(const Polynomial& p) { return RationalExpr(p, Polynomial::constant(1)); }

  bool isZero() const { return num.isZero(); }
  bool isOne() const;
  bool isConstant() const { return num.isConstant() && den.isConstant(); }

  RationalExpr operator+(const RationalExpr& o) const;
  RationalExpr operator-(const RationalExpr& o) const;
  RationalExpr operator-() const;
  RationalExpr operator*(const RationalExpr& o) const;
  RationalExpr operator/(const RationalExpr& o) const;  // throws ZeroDenominator
  RationalExpr inverse() const;
  RationalExpr pow(int n) const;  // negative allowed via inverse

  RationalExpr derivative(int var) const;

  // substitute variables; missing vars are kept as themselves
  RationalExpr subst(const std::map<int, RationalExpr>& values) const;

  void collectVars(std::vector<int>& out) const;

  bool operator==(const RationalExpr& o) const { return num == o.num && den == o.den; }
  bool operator!=(const RationalExpr& o) const { return !(*this == o); }

  std::string str() const;
};

inline RationalExpr operator*(long c, const RationalExpr& e) {
  return RationalExpr::fromInt(c) * e;
}

// Expression grammar: integers, rational literals p/q, identifiers,
// + - * / ^ with nonnegative integer exponents, parentheses.
// line0/col0 offset the reported positions for embedded snippets.
RationalExpr parseExpr(const std::string& text, int line0 = 1, int col0 = 1);

}  // namespace gcb

#endif
