#pragma once

// Exact solutions |n, m, s> of the nonstationary Pauli equation: eigenstates
// of H~ built from the Gaussian ground state by repeated application of b+.

#include <memory>
#include <string>

#include "susy/aux_ode.hpp"
#include "susy/grid.hpp"

namespace susy {

struct QuantumNumbers {
  int n = 0;
  int m = 0;
  double s = 0.5;

  /// Throws PreconditionError for n < 0 or s not in {+1/2, -1/2}, and
  /// PoleError when m - n > 0 (the base state |0, m - n, s> would be singular).
  void validate() const;
  std::string to_string() const;
  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Eigenvalue n + s + 1/2 of H~.
double energy(const QuantumNumbers& qn);

/// C = [pi 2^(|m|+1) |m|!]^(-1/2).
double ground_normalization(int m);

/// |0, m, s> at time t. Throws PoleError for m > 0 and BranchError unless
/// sol is normalized to W = -2i.
SpinorField ground_state(int m, double s, const AuxSolution& sol, double t, const GridSpec& spec);

/// |n, m, s> = (b+)^n |0, m - n, s> / sqrt(n!) using grid operators.
SpinorField eigenstate(const QuantumNumbers& qn, const AuxSolution& sol, double t, const GridSpec& spec);

/// Same state with (b+)^n applied symbolically to the polynomial-times-
/// Gaussian ground state and evaluated pointwise (no spectral derivatives).
SpinorField eigenstate_via_symbolic(const QuantumNumbers& qn, const AuxSolution& sol, double t,
                                    const GridSpec& spec);

/// Immutable generator of one basis state at any time.
class EigenState {
 public:
  /// Validates qn and the Wronskian normalization; records the grid norm at
  /// the start of the solution span as a check of the closed-form C.
  EigenState(QuantumNumbers qn, std::shared_ptr<const AuxSolution> sol, GridSpec spec);

  const QuantumNumbers& qn() const { return qn_; }
  const AuxSolution& solution() const { return *sol_; }
  std::shared_ptr<const AuxSolution> solution_ptr() const { return sol_; }
  const GridSpec& grid() const { return spec_; }
  double energy() const { return susy::energy(qn_); }
  double normalization() const { return ground_normalization(qn_.m - qn_.n); }
  /// Grid norm measured at construction.
  double construction_norm() const { return construction_norm_; }

  SpinorField at(double t) const;

 private:
  QuantumNumbers qn_;
  std::shared_ptr<const AuxSolution> sol_;
  GridSpec spec_;
  double construction_norm_ = 0.0;
};

struct PauliResidual {
  double residual = 0.0;            // with step dt
  double residual_half_step = 0.0;  // with step dt / 2
  double worst() const { return std::max(residual, residual_half_step); }
};

/// ||i dpsi/dt - H psi|| / ||psi|| with dpsi/dt from the centered 5-point
/// stencil of the generator, evaluated at dt and at dt / 2. Throws
/// DomainError when t +- 2 dt leaves the solution span.
PauliResidual pauli_residual(const EigenState& state, double t, double dt = 1e-3);

/// Largest relative residual of
///   Q~+|n,m,-1/2> = sqrt(n) |n-1,m-1,+1/2>,  Q~+|n,m,+1/2> = 0,
///   Q~-|n,m,+1/2> = sqrt(n+1) |n+1,m+1,-1/2>,  Q~-|n,m,-1/2> = 0
/// for the given state.
double susy_partner_check(const QuantumNumbers& qn, const AuxSolution& sol, double t,
                          const GridSpec& spec);

/// Grid large enough for qn over [t0, t1]: side L at least
/// 8 max(2|f|) sqrt(n + |m| + 1) and such that the envelope falls below
/// 1e-13 of its peak at the boundary; N the smallest power of two resolving
/// the spectral envelope to the same level.
GridSpec recommend_grid(const QuantumNumbers& qn, const AuxSolution& sol, double t0, double t1);

}  // namespace susy
