#include "susy/symbolic/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "susy/errors.hpp"

namespace susy::symbolic {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::complex<double> GaussianRational::to_complex() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string GaussianRational::to_string() const {
  std::ostringstream out;
  if (im == 0) {
    out << re;
  } else if (re == 0) {
    if (im == 1) out << "i";
    else if (im == -1) out << "-i";
    else out << im << "i";
  } else {
    out << "(" << re << (im > 0 ? "+" : "-");
    const Rational a = im > 0 ? im : Rational(-im);
    if (a != 1) out << a;
    out << "i)";
  }
  return out.str();
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b, GaussianRational& factor) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  auto ia = a.factors.begin(), ib = b.factors.begin();
  while (ia != a.factors.end() || ib != b.factors.end()) {
    if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
      out.factors.push_back(*ia++);
    } else if (ia == a.factors.end() || ib->first < ia->first) {
      out.factors.push_back(*ib++);
    } else {
      out.factors.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  out.e1 = a.e1 + b.e1;
  out.sqrt2 = a.sqrt2 + b.sqrt2;
  if (out.sqrt2 >= 2) {
    out.sqrt2 -= 2;
    factor *= GaussianRational(2);
  }
  return out;
}

// Monomial with one factor removed (exponent lowered by one).
Monomial lower(const Monomial& m, std::size_t idx) {
  Monomial out = m;
  if (--out.factors[idx].second == 0) out.factors.erase(out.factors.begin() + static_cast<long>(idx));
  return out;
}

CoeffExpr from_monomial(Monomial m, GaussianRational c = GaussianRational(1)) {
  return CoeffExpr::monomial(std::move(m), std::move(c));
}

// d/dt of a single generator.
CoeffExpr derivative_of(const Symbol& s) {
  switch (s.base) {
    case Base::e:
      return CoeffExpr();
    case Base::B:
      return CoeffExpr::B(s.order + 1);
    case Base::D:
      return CoeffExpr::D(s.order + 1);
    case Base::f:
    case Base::fbar: {
      if (s.order == 0) return CoeffExpr::symbol(s.base, 1);
      if (s.order != 1) throw Error("symbolic: f appears with derivative order > 1");
      const CoeffExpr e = CoeffExpr::e();
      const CoeffExpr k = e * e * CoeffExpr::B() * CoeffExpr::B() + e * CoeffExpr::D(1);
      return -k * CoeffExpr::symbol(s.base, 0);
    }
  }
  return CoeffExpr();
}

std::string symbol_name(const Symbol& s) {
  std::string name;
  switch (s.base) {
    case Base::e: name = "e"; break;
    case Base::B: name = "B"; break;
    case Base::D: name = "D"; break;
    case Base::f: name = "f"; break;
    case Base::fbar: name = "fbar"; break;
  }
  if (s.order <= 3) {
    name += std::string(s.order, '\'');
  } else {
    name += "^(" + std::to_string(s.order) + ")";
  }
  return name;
}

Rational binomial(int n, int k) {
  Rational r(1);
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

CoeffExpr::CoeffExpr(GaussianRational value) {
  if (!value.is_zero()) terms_.emplace(Monomial{}, std::move(value));
}

CoeffExpr CoeffExpr::rational(long long num, long long den) {
  if (den == 0) throw Error("symbolic: zero denominator");
  return CoeffExpr(GaussianRational(Rational(num) / Rational(den)));
}

CoeffExpr CoeffExpr::monomial(Monomial m, GaussianRational c) {
  CoeffExpr out;
  out.add_term(m, c);
  return out;
}

CoeffExpr CoeffExpr::i() { return CoeffExpr(GaussianRational::i()); }

CoeffExpr CoeffExpr::symbol(Base base, int order, int power) {
  if (power <= 0) throw Error("symbolic: symbol powers must be positive");
  if ((base == Base::f || base == Base::fbar) && order > 1) {
    throw Error("symbolic: second derivatives of f are rewritten, not stored");
  }
  if (base == Base::e && order > 0) return CoeffExpr();
  Monomial m;
  m.factors.emplace_back(Symbol{base, static_cast<std::uint8_t>(order)}, power);
  CoeffExpr out;
  out.terms_.emplace(std::move(m), GaussianRational(1));
  return out;
}

CoeffExpr CoeffExpr::E1(int power) {
  Monomial m;
  m.e1 = power;
  CoeffExpr out;
  out.terms_.emplace(std::move(m), GaussianRational(1));
  return out;
}

CoeffExpr CoeffExpr::sqrt2() {
  Monomial m;
  m.sqrt2 = 1;
  CoeffExpr out;
  out.terms_.emplace(std::move(m), GaussianRational(1));
  return out;
}

CoeffExpr CoeffExpr::inv_sqrt2() { return rational(1, 2) * sqrt2(); }

void CoeffExpr::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CoeffExpr& CoeffExpr::operator-=(const CoeffExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CoeffExpr& CoeffExpr::operator*=(const CoeffExpr& o) {
  CoeffExpr out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      GaussianRational c = ca * cb;
      Monomial m = multiply(ma, mb, c);
      out.add_term(m, c);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

CoeffExpr CoeffExpr::conj() const {
  CoeffExpr out;
  for (const auto& [m, c] : terms_) {
    Monomial cm;
    for (const auto& [sym, power] : m.factors) {
      Symbol s = sym;
      if (s.base == Base::f) s.base = Base::fbar;
      else if (s.base == Base::fbar) s.base = Base::f;
      cm.factors.emplace_back(s, power);
    }
    std::sort(cm.factors.begin(), cm.factors.end());
    cm.e1 = -m.e1;
    cm.sqrt2 = m.sqrt2;
    out.add_term(cm, c.conj());
  }
  return out;
}

CoeffExpr CoeffExpr::derivative() const {
  CoeffExpr out;
  for (const auto& [m, c] : terms_) {
    // Product rule over polynomial generators.
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      const auto& [sym, power] = m.factors[k];
      CoeffExpr d = derivative_of(sym);
      if (d.is_zero()) continue;
      out += from_monomial(lower(m, k), c * GaussianRational(power)) * d;
    }
    // d/dt E1^k = i k e B E1^k.
    if (m.e1 != 0) {
      out += from_monomial(m, c * GaussianRational(Rational(0), Rational(m.e1))) * CoeffExpr::e() *
             CoeffExpr::B();
    }
  }
  return out;
}

CoeffExpr CoeffExpr::reduce_wronskian() const {
  const Symbol fbar0{Base::fbar, 0}, f1{Base::f, 1};
  CoeffExpr out;
  for (const auto& [m, c] : terms_) {
    int p = 0, q = 0;
    for (const auto& [sym, power] : m.factors) {
      if (sym == fbar0) p = power;
      if (sym == f1) q = power;
    }
    const int r = std::min(p, q);
    if (r == 0) {
      out.add_term(m, c);
      continue;
    }
    // (fbar f')^r = (f fbar' + 2i)^r.
    Monomial rest;
    for (const auto& [sym, power] : m.factors) {
      int keep = power;
      if (sym == fbar0 || sym == f1) keep -= r;
      if (keep > 0) rest.factors.emplace_back(sym, keep);
    }
    rest.e1 = m.e1;
    rest.sqrt2 = m.sqrt2;
    const CoeffExpr base = from_monomial(rest, c);
    const CoeffExpr ffb = CoeffExpr::f(0) * CoeffExpr::fbar(1);
    const CoeffExpr two_i = CoeffExpr(GaussianRational(Rational(0), Rational(2)));
    for (int j = 0; j <= r; ++j) {
      CoeffExpr term = CoeffExpr(GaussianRational(binomial(r, j)));
      for (int k = 0; k < j; ++k) term *= ffb;
      for (int k = 0; k < r - j; ++k) term *= two_i;
      out += base * term;
    }
  }
  return out;
}

std::complex<double> CoeffExpr::evaluate(const SymbolValues& v) const {
  std::complex<double> acc(0.0);
  for (const auto& [m, c] : terms_) {
    std::complex<double> term = c.to_complex();
    for (const auto& [sym, power] : m.factors) {
      std::complex<double> x;
      switch (sym.base) {
        case Base::e: x = v.e; break;
        case Base::B:
          if (sym.order >= v.B.size()) throw PreconditionError("missing value for " + symbol_name(sym));
          x = v.B[sym.order];
          break;
        case Base::D:
          if (sym.order >= v.D.size()) throw PreconditionError("missing value for " + symbol_name(sym));
          x = v.D[sym.order];
          break;
        case Base::f: x = sym.order == 0 ? v.f : v.f_dot; break;
        case Base::fbar: x = std::conj(sym.order == 0 ? v.f : v.f_dot); break;
      }
      term *= std::pow(x, power);
    }
    if (m.e1 != 0) term *= std::pow(v.e1, m.e1);
    if (m.sqrt2 != 0) term *= std::sqrt(2.0);
    acc += term;
  }
  return acc;
}

std::string to_string(const Monomial& m) {
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  for (const auto& [sym, power] : m.factors) {
    append(power == 1 ? symbol_name(sym) : symbol_name(sym) + "^" + std::to_string(power));
  }
  if (m.e1 != 0) append(m.e1 == 1 ? "E1" : "E1^" + std::to_string(m.e1));
  if (m.sqrt2 != 0) append("sqrt2");
  return out;
}

std::string CoeffExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::string mono = symbolic::to_string(m);
    std::string coeff = c.to_string();
    if (!first) out += " + ";
    first = false;
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else if (coeff == "-1") {
      out += "-" + mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

}  // namespace susy::symbolic
