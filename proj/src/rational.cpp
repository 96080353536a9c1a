#include "gcb/rational.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace gcb {

// ---------------------------------------------------------------------------
// VarTable

namespace {
struct VarTableState {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, int> ids;
};
VarTableState& varState() {
  static VarTableState s;
  return s;
}
}  // namespace

int VarTable::intern(const std::string& name) {
  auto& s = varState();
  std::lock_guard<std::mutex> lock(s.mu);
  auto it = s.ids.find(name);
  if (it != s.ids.end()) return it->second;
  int id = static_cast<int>(s.names.size());
  s.names.push_back(name);
  s.ids.emplace(name, id);
  return id;
}

const std::string& VarTable::name(int id) {
  auto& s = varState();
  std::lock_guard<std::mutex> lock(s.mu);
  return s.names.at(static_cast<size_t>(id));
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int var, int exp) {
  Monomial m;
  if (exp > 0) m.e.emplace_back(var, exp);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, k] : e) d += k;
  return d;
}

int Monomial::exponent(int var) const {
  for (auto& [v, k] : e)
    if (v == var) return k;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j >= o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i >= e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j++]);
    } else {
      r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
      ++i, ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (auto& [v, k] : e)
    if (o.exponent(v) < k) return false;
  return true;
}

Monomial Monomial::dividedBy(const Monomial& o) const {
  // this / o, assumes o divides this
  Monomial r;
  size_t j = 0;
  for (auto& [v, k] : e) {
    while (j < o.e.size() && o.e[j].first < v) ++j;
    int sub = (j < o.e.size() && o.e[j].first == v) ? o.e[j].second : 0;
    if (k - sub > 0) r.e.emplace_back(v, k - sub);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (auto& [v, k] : a.e) {
    int kb = b.exponent(v);
    int m = std::min(k, kb);
    if (m > 0) r.e.emplace_back(v, m);
  }
  return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // lex: lower var id more significant, larger exponent first
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first != b.e[j].first)
      return a.e[i].first < b.e[j].first ? 1 : -1;  // a has smaller var -> bigger
    if (a.e[i].second != b.e[j].second)
      return a.e[i].second > b.e[j].second ? 1 : -1;
    ++i, ++j;
  }
  if (i < a.e.size()) return 1;
  if (j < b.e.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(const Rat& c) {
  Polynomial p;
  if (c != 0) p.terms.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(int var) {
  Polynomial p;
  p.terms.push_back({Monomial::variable(var), Rat(1)});
  return p;
}

bool Polynomial::isConstant() const {
  return terms.empty() || (terms.size() == 1 && terms[0].m.isOne());
}

Rat Polynomial::constantValue() const {
  return terms.empty() ? Rat(0) : terms[0].c;
}

int Polynomial::totalDegree() const {
  return terms.empty() ? 0 : terms.front().m.degree();
}

int Polynomial::degreeIn(int var) const {
  int d = 0;
  for (auto& t : terms) d = std::max(d, t.m.exponent(var));
  return d;
}

void Polynomial::collectVars(std::vector<int>& out) const {
  for (auto& t : terms)
    for (auto& [v, k] : t.m.e)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  size_t i = 0, j = 0;
  while (i < terms.size() || j < o.terms.size()) {
    if (j >= o.terms.size()) {
      r.terms.push_back(terms[i++]);
    } else if (i >= terms.size()) {
      r.terms.push_back(o.terms[j++]);
    } else {
      int c = Monomial::cmp(terms[i].m, o.terms[j].m);
      if (c > 0) {
        r.terms.push_back(terms[i++]);
      } else if (c < 0) {
        r.terms.push_back(o.terms[j++]);
      } else {
        Rat s = terms[i].c + o.terms[j].c;
        if (s != 0) r.terms.push_back({terms[i].m, s});
        ++i, ++j;
      }
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms) t.c = -t.c;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (isZero() || o.isZero()) return {};
  std::map<Monomial, Rat, decltype([](const Monomial& a, const Monomial& b) {
             return Monomial::cmp(a, b) > 0;
           })>
      acc;
  for (auto& a : terms)
    for (auto& b : o.terms) acc[a.m * b.m] += a.c * b.c;
  Polynomial r;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms.push_back({m, c});
  return r;
}

Polynomial Polynomial::scaled(const Rat& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms) t.c *= c;
  return r;
}

Polynomial Polynomial::pow(int n) const {
  Polynomial r = Polynomial::constant(1);
  Polynomial base = *this;
  int k = n;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r;
  for (auto& t : terms) {
    int k = t.m.exponent(var);
    if (k == 0) continue;
    Monomial m;
    for (auto& [v, e2] : t.m.e) {
      if (v == var) {
        if (e2 > 1) m.e.emplace_back(v, e2 - 1);
      } else {
        m.e.emplace_back(v, e2);
      }
    }
    r.terms.push_back({m, t.c * k});
  }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
  return r;
}

Polynomial Polynomial::coefficientOf(int var, int deg) const {
  Polynomial r;
  for (auto& t : terms) {
    if (t.m.exponent(var) != deg) continue;
    Monomial m;
    for (auto& [v, e2] : t.m.e)
      if (v != var) m.e.emplace_back(v, e2);
    r.terms.push_back({m, t.c});
  }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
  return r;
}

std::optional<Polynomial> Polynomial::divExact(const Polynomial& d) const {
  if (d.isZero()) return std::nullopt;
  Polynomial rem = *this;
  Polynomial q;
  while (!rem.isZero()) {
    const Term& lt = rem.terms.front();
    const Term& ld = d.terms.front();
    if (!ld.m.divides(lt.m)) return std::nullopt;
    Term qt{lt.m.dividedBy(ld.m), lt.c / ld.c};
    Polynomial qp;
    qp.terms.push_back(qt);
    q = q + qp;
    rem = rem - qp * d;
  }
  return q;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (size_t i = 0; i < terms.size(); ++i)
    if (!(terms[i].m == o.terms[i].m) || terms[i].c != o.terms[i].c) return false;
  return true;
}

namespace {

// scale to integer coefficients, content 1, positive leading coefficient
Polynomial primitivize(const Polynomial& p) {
  if (p.isZero()) return p;
  Int lcmDen = 1;
  for (auto& t : p.terms) lcmDen = boost::multiprecision::lcm(lcmDen, denominator(t.c));
  Int g = 0;
  for (auto& t : p.terms) {
    Int n = numerator(t.c) * (lcmDen / denominator(t.c));
    g = boost::multiprecision::gcd(g, n);
  }
  if (g == 0) g = 1;
  Rat scale(lcmDen, g);
  Polynomial r = p.scaled(scale);
  if (r.leadingCoeff() < 0) r = -r;
  return r;
}

int mainVariable(const Polynomial& a, const Polynomial& b) {
  std::vector<int> vars;
  a.collectVars(vars);
  b.collectVars(vars);
  if (vars.empty()) return -1;
  return *std::min_element(vars.begin(), vars.end());
}

// pseudo-remainder of a by b in variable x
// lc(b)^(deg a - deg b + 1) * a mod b, the pseudo-remainder
Polynomial prem(Polynomial a, const Polynomial& b, int x) {
  int db = b.degreeIn(x);
  if (db == 0) return Polynomial::zero();
  Polynomial lcB = b.coefficientOf(x, db);
  int e = a.degreeIn(x) - db + 1;
  while (!a.isZero() && a.degreeIn(x) >= db) {
    int da = a.degreeIn(x);
    Polynomial lcA = a.coefficientOf(x, da);
    Polynomial shift = Polynomial::variable(x).pow(da - db);
    a = a * lcB - b * lcA * shift;
    --e;
  }
  if (e > 0) a = a * lcB.pow(e);
  return a;
}

Polynomial contentIn(const Polynomial& p, int x) {
  Polynomial c = Polynomial::zero();
  int d = p.degreeIn(x);
  for (int k = 0; k <= d; ++k) {
    Polynomial ck = p.coefficientOf(x, k);
    if (!ck.isZero()) c = Polynomial::gcd(c, ck);
  }
  return c;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.isZero()) return b.isZero() ? b : primitivize(b);
  if (b.isZero()) return primitivize(a);
  Polynomial pa = primitivize(a), pb = primitivize(b);
  if (pa.isConstant() || pb.isConstant()) return Polynomial::constant(1);
  if (pa.divExact(pb)) return pb;
  if (pb.divExact(pa)) return pa;
  int x = mainVariable(pa, pb);
  if (pa.degreeIn(x) == 0 || pb.degreeIn(x) == 0) {
    // x occurs in only one of them: gcd divides the x-free one and the content
    Polynomial ca = pa.degreeIn(x) == 0 ? pa : contentIn(pa, x);
    Polynomial cb = pb.degreeIn(x) == 0 ? pb : contentIn(pb, x);
    return Polynomial::gcd(ca, cb);
  }
  Polynomial ca = contentIn(pa, x), cb = contentIn(pb, x);
  Polynomial ppa = *pa.divExact(ca), ppb = *pb.divExact(cb);
  Polynomial gc = Polynomial::gcd(ca, cb);
  if (ppa.degreeIn(x) < ppb.degreeIn(x)) std::swap(ppa, ppb);
  // subresultant PRS: controls coefficient growth via known exact divisors
  Polynomial g = Polynomial::constant(1), h = Polynomial::constant(1);
  for (;;) {
    int delta = ppa.degreeIn(x) - ppb.degreeIn(x);
    Polynomial r = prem(ppa, ppb, x);
    if (r.isZero()) break;
    if (r.degreeIn(x) == 0) {
      ppb = Polynomial::constant(1);
      break;
    }
    Polynomial divisor = g * h.pow(delta);
    ppa = ppb;
    ppb = *r.divExact(divisor);
    g = ppa.coefficientOf(x, ppa.degreeIn(x));
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = *g.pow(delta).divExact(h.pow(delta - 1));
    }
  }
  Polynomial cres = contentIn(ppb, x);
  Polynomial res = gc * primitivize(*ppb.divExact(cres));
  return primitivize(res);
}

std::string Polynomial::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms) {
    Rat c = t.c;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool unitCoeff = (c == 1) && !t.m.isOne();
    if (!unitCoeff) os << c.str();
    bool firstVar = !unitCoeff ? false : true;
    for (auto& [v, k] : t.m.e) {
      if (!firstVar || !unitCoeff) os << "*";
      firstVar = false;
      os << VarTable::name(v);
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalExpr

RationalExpr::RationalExpr(const Polynomial& n, const Polynomial& d) {
  if (d.isZero()) throw ZeroDenominator();
  if (n.isZero()) {
    num = Polynomial::zero();
    den = Polynomial::constant(1);
    return;
  }
  Polynomial g = Polynomial::gcd(n, d);
  Polynomial nn = *n.divExact(g);
  Polynomial dd = *d.divExact(g);
  Rat lc = dd.leadingCoeff();
  num = nn.scaled(1 / lc);
  den = dd.scaled(1 / lc);
}

RationalExpr RationalExpr::fromInt(long v) { return poly(Polynomial::constant(Rat(v))); }
RationalExpr RationalExpr::fromRat(const Rat& v) { return poly(Polynomial::constant(v)); }
RationalExpr RationalExpr::variable(int var) { return poly(Polynomial::variable(var)); }

bool RationalExpr::isOne() const {
  return num.isConstant() && num.constantValue() == 1 && den.isConstant();
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
  return RationalExpr(num * o.den + o.num * den, den * o.den);
}
RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
  return RationalExpr(num * o.den - o.num * den, den * o.den);
}
RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num = -r.num;
  return r;
}
RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
  return RationalExpr(num * o.num, den * o.den);
}
RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
  if (o.isZero()) throw ZeroDenominator();
  return RationalExpr(num * o.den, den * o.num);
}
RationalExpr RationalExpr::inverse() const {
  if (isZero()) throw ZeroDenominator();
  return RationalExpr(den, num);
}

RationalExpr RationalExpr::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RationalExpr r = fromInt(1);
  RationalExpr base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

RationalExpr RationalExpr::derivative(int var) const {
  return RationalExpr(num.derivative(var) * den - num * den.derivative(var), den * den);
}

namespace {
RationalExpr substPoly(const Polynomial& p, const std::map<int, RationalExpr>& values) {
  RationalExpr acc;
  for (auto& t : p.terms) {
    RationalExpr term = RationalExpr::fromRat(t.c);
    for (auto& [v, k] : t.m.e) {
      auto it = values.find(v);
      RationalExpr base = it != values.end() ? it->second : RationalExpr::variable(v);
      term = term * base.pow(k);
    }
    acc = acc + term;
  }
  return acc;
}
}  // namespace

RationalExpr RationalExpr::subst(const std::map<int, RationalExpr>& values) const {
  RationalExpr dn = substPoly(den, values);
  if (dn.isZero()) throw ZeroDenominator();
  return substPoly(num, values) / dn;
}

void RationalExpr::collectVars(std::vector<int>& out) const {
  num.collectVars(out);
  den.collectVars(out);
}

std::string RationalExpr::str() const {
  if (den.isConstant() && den.constantValue() == 1) return num.str();
  std::string n = num.str(), d = den.str();
  std::string ns = num.terms.size() > 1 ? "(" + n + ")" : n;
  std::string ds = den.terms.size() > 1 || !den.terms.front().m.isOne() ||
                           den.leadingCoeff() < 0
                       ? "(" + d + ")"
                       : d;
  return ns + "/" + ds;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  int line, col;

  Lexer(const std::string& text, int l0, int c0) : s(text), line(l0), col(c0) {}

  void skipWs() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      if (s[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }
  char peek() {
    skipWs();
    return pos < s.size() ? s[pos] : '\0';
  }
  char advance() {
    char c = s[pos++];
    ++col;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
};

struct Parser {
  Lexer lex;
  Parser(const std::string& text, int l0, int c0) : lex(text, l0, c0) {}

  RationalExpr parse() {
    RationalExpr e = expr();
    if (lex.peek() != '\0') lex.fail("unexpected trailing input");
    return e;
  }

  RationalExpr expr() {
    RationalExpr e = term();
    for (;;) {
      char c = lex.peek();
      if (c == '+') {
        lex.advance();
        e = e + term();
      } else if (c == '-') {
        lex.advance();
        e = e - term();
      } else {
        return e;
      }
    }
  }

  RationalExpr term() {
    RationalExpr e = factor();
    for (;;) {
      char c = lex.peek();
      if (c == '*') {
        lex.advance();
        e = e * factor();
      } else if (c == '/') {
        lex.advance();
        int l = lex.line, co = lex.col;
        RationalExpr d = factor();
        if (d.isZero()) throw ParseError("division by zero expression", l, co);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  RationalExpr factor() {
    char c = lex.peek();
    if (c == '-') {
      lex.advance();
      return -factor();
    }
    if (c == '+') {
      lex.advance();
      return factor();
    }
    RationalExpr base = atom();
    if (lex.peek() == '^') {
      lex.advance();
      char d = lex.peek();
      if (!std::isdigit(static_cast<unsigned char>(d)))
        lex.fail("expected nonnegative integer exponent");
      long n = 0;
      while (lex.pos < lex.s.size() && std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
        n = n * 10 + (lex.advance() - '0');
      return base.pow(static_cast<int>(n));
    }
    return base;
  }

  RationalExpr atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.advance();
      RationalExpr e = expr();
      if (lex.peek() != ')') lex.fail("expected ')'");
      lex.advance();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int n = 0;
      while (lex.pos < lex.s.size() && std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
        n = n * 10 + (lex.advance() - '0');
      return RationalExpr::fromRat(Rat(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (lex.pos < lex.s.size() &&
             (std::isalnum(static_cast<unsigned char>(lex.s[lex.pos])) || lex.s[lex.pos] == '_'))
        id.push_back(lex.advance());
      return RationalExpr::variable(VarTable::intern(id));
    }
    lex.fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RationalExpr parseExpr(const std::string& text, int line0, int col0) {
  Parser p(text, line0, col0);
  return p.parse();
}

}  // namespace gcb
