#pragma once

#include "susy/operator_kind.hpp"
#include "susy/symbolic/operator_expr.hpp"

namespace susy::symbolic {

/// Field orientation: Reversed flips the sign of B everywhere in the
/// stationary operators (used for Q+-(-B)).
enum class Orientation { Normal, Reversed };

/// Canonical expression for an operator. Momenta and ladder operators act
/// on both spin components (spin factor 1).
OperatorExpr build(OperatorKind kind, Orientation orientation = Orientation::Normal);

/// a = D + iB and its conjugate as coefficients.
CoeffExpr field_a();
CoeffExpr field_a_star();

/// Spin blocks of H: H+ = pi- pi+, H- = pi+ pi-, acting with spin factor 1.
OperatorExpr h_plus();
OperatorExpr h_minus();

/// f1 = f E1 and G = e f2 a* = (e D f + f') E1.
CoeffExpr coeff_f1();
CoeffExpr coeff_G();

}  // namespace susy::symbolic
