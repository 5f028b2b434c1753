#pragma once

// Matrix-free application of the momenta, supercharges, Hamiltonians and
// ladder operators to spinor fields on a grid. Second-order operators are
// compositions of first-order applications.

#include <cstdint>
#include <string>
#include <vector>

#include "susy/aux_ode.hpp"
#include "susy/grid.hpp"
#include "susy/operator_kind.hpp"

namespace susy {

struct Operator {
  OperatorKind kind = OperatorKind::Identity;
  /// Evaluate the field-only operators (pi+-, Q+-, H) with B -> -B.
  bool reversed_B = false;

  Operator() = default;
  Operator(OperatorKind k, bool reversed = false) : kind(k), reversed_B(reversed) {}
};

/// Throws PreconditionError if ctx.t differs from field.t, or if the
/// operator needs f and ctx has no auxiliary solution.
SpinorField apply(const Operator& op, const SpinorField& field, const TimeContext& ctx);

/// Scalar parts (acting on one component).
ScalarField apply_pi_minus(const ScalarField& u, const TimeContext& ctx, bool reversed_B = false);
ScalarField apply_pi_plus(const ScalarField& u, const TimeContext& ctx, bool reversed_B = false);
ScalarField apply_pi_tilde_minus(const ScalarField& u, const TimeContext& ctx);
ScalarField apply_pi_tilde_plus(const ScalarField& u, const TimeContext& ctx);

struct Term {
  cplx coeff;
  Operator op;
};
using Combination = std::vector<Term>;

/// sum coeff_k op_k applied to field.
SpinorField apply(const Combination& combo, const SpinorField& field, const TimeContext& ctx);

/// ||([A, B] - expected) psi|| / ||psi||.
double commutator_residual(const Operator& a, const Operator& b, const Combination& expected,
                           const SpinorField& field, const TimeContext& ctx);
/// ||({A, B} - expected) psi|| / ||psi||.
double anticommutator_residual(const Operator& a, const Operator& b, const Combination& expected,
                               const SpinorField& field, const TimeContext& ctx);

/// ||(Q~+ - exp(2i w0 t) Q+(-B)) psi|| / ||psi|| with w0 = eB. Requires a
/// constant profile with D = 0, eB > 0, and ctx built from the branch
/// f = exp(i w0 t) (c1 = 0, c2 = 1).
double q_of_minus_B_check(const SpinorField& field, const TimeContext& ctx,
                          const FieldProfile& profile);

/// Seeded probe spinors: Gaussians exp(-|z - z0|^2 / (4 w^2)) times random
/// polynomials of degree <= 2 in z, z*, independently for each component.
std::vector<SpinorField> probe_fields(const GridSpec& spec, double t, int count,
                                      std::uint64_t seed);

struct CheckRow {
  std::string identity_name;
  double t = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Grid versions of the commutation relations, superalgebra, integral-of-
/// motion algebra and adjointness, evaluated on every probe field. The
/// worst residual per identity is reported. tol_scale multiplies every
/// tolerance.
std::vector<CheckRow> standard_checks(const std::vector<SpinorField>& probes, const TimeContext& ctx,
                                      double tol_scale = 1.0);

/// CSV `identity_name,t,residual,tolerance,pass`.
std::string to_csv(const std::vector<CheckRow>& rows);

}  // namespace susy
