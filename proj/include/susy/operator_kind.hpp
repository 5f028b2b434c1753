#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace susy {

/// Every operator the library can build symbolically or apply on a grid.
///
///   PiPlus/PiMinus          kinetic momenta pi+- = pi_x +- i pi_y
///   PiTildePlus/Minus       time-dependent momenta built from f(t)
///   QPlus/QMinus            stationary supercharges pi-+ sigma+- / sqrt2
///   QTildePlus/Minus        nonstationary supercharges (integrals of motion)
///   H                       Pauli Hamiltonian diag(pi- pi+, pi+ pi-)
///   HTilde                  {QTilde+, QTilde-} = diag(pt- pt+, pt+ pt-) / 2
///   Lz, Sz, Jz              angular momentum, spin, total
///   BTildePlus/Minus        pt+- / sqrt2
///   BPlus/BMinus            exp(+-2i Omega) bt+-, ladder integrals of motion
enum class OperatorKind {
  Identity,
  PiPlus,
  PiMinus,
  PiTildePlus,
  PiTildeMinus,
  QPlus,
  QMinus,
  QTildePlus,
  QTildeMinus,
  H,
  HTilde,
  Lz,
  Sz,
  Jz,
  BTildePlus,
  BTildeMinus,
  BPlus,
  BMinus,
};

std::string_view to_string(OperatorKind kind);
std::optional<OperatorKind> parse_operator_kind(std::string_view name);

/// Whether the operator needs the auxiliary solution f(t).
bool needs_aux(OperatorKind kind);

}  // namespace susy
