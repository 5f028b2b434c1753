#pragma once

// Commutative coefficient algebra for the symbolic operator engine.
//
// A CoeffExpr is a polynomial with Gaussian-rational coefficients over
//   e, B, B', B'', ..., D, D', D'', ..., f, f', fbar, fbar',
// times integer powers of E1 = exp(i Omega) (E1* = 1/E1) and at most one
// factor sqrt2 (sqrt2^2 = 2). Every expression is kept in a canonical form:
// monomials sorted, zero terms dropped. The formal time derivative uses
//   Omega' = e B,  f'' = -((eB)^2 + e D') f,  fbar'' = -((eB)^2 + e D') fbar,
// and leaves higher derivatives of B and D as independent symbols.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace susy::symbolic {

using Rational = boost::multiprecision::cpp_rational;

/// p + q i with p, q rational.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::complex<double> to_complex() const;
  std::string to_string() const;
};

enum class Base : std::uint8_t { e, B, D, f, fbar };

struct Symbol {
  Base base = Base::e;
  std::uint8_t order = 0;  // time-derivative order
  auto operator<=>(const Symbol&) const = default;
};

struct Monomial {
  std::vector<std::pair<Symbol, int>> factors;  // sorted, exponents > 0
  int e1 = 0;      // power of exp(i Omega)
  int sqrt2 = 0;   // 0 or 1
  auto operator<=>(const Monomial&) const = default;
};

/// Numerical values for evaluating a CoeffExpr.
struct SymbolValues {
  double e = 1.0;
  std::vector<double> B;  // B, B', B'', ...
  std::vector<double> D;  // D, D', ...
  std::complex<double> f{1.0, 0.0};
  std::complex<double> f_dot{0.0, 1.0};
  std::complex<double> e1{1.0, 0.0};  // exp(i Omega)
};

class CoeffExpr {
 public:
  using Terms = std::map<Monomial, GaussianRational>;

  CoeffExpr() = default;
  CoeffExpr(int value) : CoeffExpr(GaussianRational(value)) {}
  CoeffExpr(GaussianRational value);
  static CoeffExpr rational(long long num, long long den = 1);
  static CoeffExpr i();
  /// c times m; m must already be canonical (sorted factors, sqrt2 in {0, 1}).
  static CoeffExpr monomial(Monomial m, GaussianRational c);

  static CoeffExpr symbol(Base base, int order = 0, int power = 1);
  static CoeffExpr e() { return symbol(Base::e); }
  static CoeffExpr B(int order = 0) { return symbol(Base::B, order); }
  static CoeffExpr D(int order = 0) { return symbol(Base::D, order); }
  static CoeffExpr f(int order = 0) { return symbol(Base::f, order); }
  static CoeffExpr fbar(int order = 0) { return symbol(Base::fbar, order); }
  /// exp(i power Omega).
  static CoeffExpr E1(int power = 1);
  static CoeffExpr sqrt2();
  /// 1 / sqrt2 = sqrt2 / 2.
  static CoeffExpr inv_sqrt2();

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  CoeffExpr& operator+=(const CoeffExpr& o);
  CoeffExpr& operator-=(const CoeffExpr& o);
  CoeffExpr& operator*=(const CoeffExpr& o);
  friend CoeffExpr operator+(CoeffExpr a, const CoeffExpr& b) { return a += b; }
  friend CoeffExpr operator-(CoeffExpr a, const CoeffExpr& b) { return a -= b; }
  friend CoeffExpr operator*(CoeffExpr a, const CoeffExpr& b) { return a *= b; }
  friend CoeffExpr operator-(const CoeffExpr& a) { return CoeffExpr(-1) * a; }
  friend bool operator==(const CoeffExpr&, const CoeffExpr&) = default;

  /// Complex conjugation: i -> -i, f <-> fbar, E1 -> 1/E1.
  CoeffExpr conj() const;

  /// Formal d/dt with the rewrite rules listed above.
  CoeffExpr derivative() const;

  /// Imposes the normalized Wronskian f fbar' - fbar f' = -2i by rewriting
  /// fbar f' -> f fbar' + 2i (unique remainder modulo that relation).
  CoeffExpr reduce_wronskian() const;

  std::complex<double> evaluate(const SymbolValues& values) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const GaussianRational& c);

  Terms terms_;
};

std::string to_string(const Monomial& m);

}  // namespace susy::symbolic
