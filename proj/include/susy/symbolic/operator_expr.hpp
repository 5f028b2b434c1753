#pragma once

// Noncommutative differential operators in normal form
//   sum  c * z^a z*^b d_z^p d_z*^q (x) E_{row,col}
// where E_{row,col} is a 2x2 spin matrix unit (index 0 = spin up). Derivatives
// always stand to the right of multiplication operators.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "susy/symbolic/coeff.hpp"

namespace susy::symbolic {

struct OpMonomial {
  int a = 0;  // power of z
  int b = 0;  // power of z*
  int p = 0;  // power of d/dz
  int q = 0;  // power of d/dz*
  std::uint8_t row = 0;
  std::uint8_t col = 0;
  auto operator<=>(const OpMonomial&) const = default;
};

/// Spin factors. SigmaPlus maps spin down to spin up.
enum class SpinFactor { One, SigmaZ, SigmaPlus, SigmaMinus, SigmaPlusSigmaMinus, SigmaMinusSigmaPlus };

class OperatorExpr {
 public:
  using Terms = std::map<OpMonomial, CoeffExpr>;

  OperatorExpr() = default;

  static OperatorExpr identity();
  static OperatorExpr scalar(const CoeffExpr& c);
  static OperatorExpr z();
  static OperatorExpr zbar();
  static OperatorExpr dz();
  static OperatorExpr dzbar();
  static OperatorExpr spin(SpinFactor s);
  /// Single term c * monomial.
  static OperatorExpr term(const OpMonomial& m, const CoeffExpr& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator-(const OperatorExpr& a) { return CoeffExpr(-1) * a; }
  friend OperatorExpr operator*(const CoeffExpr& c, const OperatorExpr& a);
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  /// Formal d/dt of the coefficients.
  OperatorExpr time_derivative() const;

  /// Hermitian adjoint with z^dagger = z*, (d/dz)^dagger = -d/dz*.
  OperatorExpr adjoint() const;

  OperatorExpr map_coeffs(const std::function<CoeffExpr(const CoeffExpr&)>& fn) const;
  OperatorExpr reduce_wronskian() const;

  /// Restriction to one spin block (row, col), returned with spin (0, 0).
  OperatorExpr block(int row, int col) const;
  /// Places a spin-free expression (all terms on (0, 0)) into block (row, col).
  OperatorExpr placed(int row, int col) const;

  std::string to_string() const;

 private:
  void add_term(const OpMonomial& m, const CoeffExpr& c);

  Terms terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);

std::string to_string(const OpMonomial& m);

}  // namespace susy::symbolic
