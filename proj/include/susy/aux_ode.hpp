#pragma once

// The auxiliary oscillator f'' = -((eB)^2 + e D') f whose complex solution
// carries every time-dependent coefficient of the nonstationary supercharges,
// together with the phase Omega(t) = e * integral of B.

#include <array>
#include <complex>
#include <filesystem>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "susy/fields.hpp"

namespace susy {

/// f, f' and Omega at one instant.
struct AuxState {
  double t = 0.0;
  cplx f{1.0, 0.0};
  cplx f_dot{0.0, 1.0};
  double omega = 0.0;

  /// W = f conj(f') - conj(f) f'. Purely imaginary for any f.
  cplx wronskian() const { return f * std::conj(f_dot) - std::conj(f) * f_dot; }
};

/// Canonical initial data f = 1, f' = i, for which W = -2i exactly.
inline constexpr cplx kCanonicalF0{1.0, 0.0};
inline constexpr cplx kCanonicalF0Dot{0.0, 1.0};

/// Immutable solution of the auxiliary equation on [t_begin, t_end].
///
/// Either a numerical trajectory (adaptive Dormand-Prince 5(4) with 4th-order
/// dense output, Omega integrated as a fifth real component) or the closed
/// form f = c1 exp(-i w t) + c2 exp(i w t) for constant B and linear D.
class AuxSolution {
 public:
  struct Step {
    double t0 = 0.0;
    double h = 0.0;
    // Dense-output coefficients, state layout (Re f, Im f, Re f', Im f', Omega).
    std::array<std::array<double, 5>, 5> rcont{};
  };

  struct Numeric {
    std::vector<Step> steps;
    std::vector<AuxState> nodes;
  };

  struct Closed {
    double B = 0.0;
    double D_rate = 0.0;
    cplx c1, c2;
    cplx omega;  // sqrt((eB)^2 + e D_rate), principal branch
  };

  static AuxSolution from_numeric(FieldProfile profile, PhysicalConfig cfg, Numeric data);
  static AuxSolution from_closed(PhysicalConfig cfg, Closed data);

  AuxState at(double t) const;

  double t_begin() const;
  double t_end() const;
  bool contains(double t) const { return t >= t_begin() && t <= t_end(); }
  bool is_closed_form() const { return std::holds_alternative<Closed>(data_); }

  const FieldProfile& profile() const { return profile_; }
  const PhysicalConfig& config() const { return cfg_; }

  /// Solver nodes (including the scale factor). Empty for closed forms.
  std::vector<AuxState> nodes() const;

  /// Wronskian at t_begin (or at t = 0 for closed forms).
  cplx initial_wronskian() const;

  /// max |W(t) - W(t_begin)| over the solver nodes (zero for closed forms).
  double max_wronskian_drift() const;

  /// Positive real factor applied to f and f'.
  double scale() const { return scale_; }
  AuxSolution scaled(double factor) const;

  /// Writes `t,Re_f,Im_f,Re_fdot,Im_fdot,Omega,Re_W,Im_W`, one row per node
  /// (closed forms: `samples` uniform rows over [t0, t1]).
  void write_csv(const std::filesystem::path& path, double t0 = 0.0, double t1 = 1.0,
                 int samples = 101) const;

 private:
  AuxSolution(FieldProfile profile, PhysicalConfig cfg) : profile_(std::move(profile)), cfg_(cfg) {}

  AuxState raw_at(double t) const;

  FieldProfile profile_;
  PhysicalConfig cfg_;
  std::variant<Numeric, Closed> data_;
  double scale_ = 1.0;
};

struct SolveOptions {
  double tol = 1e-12;
  double initial_step = 0.0;  // 0: automatic
  std::size_t max_steps = 2'000'000;
};

/// Integrates the auxiliary equation from (t0, f0, f0_dot) to t1 with local
/// error per step <= tol (mixed absolute/relative). Throws PreconditionError
/// on bad arguments, DomainError if the profile does not cover [t0, t1], and
/// SolverError if step-size control fails.
AuxSolution solve(const FieldProfile& profile, const PhysicalConfig& cfg, double t0, double t1,
                  cplx f0 = kCanonicalF0, cplx f0_dot = kCanonicalF0Dot,
                  const SolveOptions& opts = {});

/// Closed form for B = const, D(t) = D_rate t. Imaginary frequencies (negative
/// (eB)^2 + e D_rate) continue to growing/decaying exponentials. Throws
/// PreconditionError when (eB)^2 + e D_rate = 0 or c1 = c2 = 0.
AuxSolution analytic_constant(const PhysicalConfig& cfg, double B, double D_rate, cplx c1,
                              cplx c2);

/// Rescales f by a positive factor so that W = -2i. Throws NormalizationError
/// for W = 0 and BranchError for Im W > 0 (the conjugate branch).
AuxSolution normalize_wronskian(const AuxSolution& sol);

/// Whether W = -2i to within `tol`.
bool is_normalized(const AuxSolution& sol, double tol = 1e-8);

/// Coefficients derived from f at one instant.
struct AuxTerms {
  double omega = 0.0;
  cplx f, f_dot;
  cplx e1;          // exp(i Omega)
  cplx f1;          // f exp(i Omega)
  cplx f2_a_star;   // f2 a* = (e D f + f') exp(i Omega) / e
  cplx wronskian;   // f conj(f') - conj(f) f'
};

/// Everything an operator needs at time t.
struct TimeContext {
  double t = 0.0;
  double e = 1.0;
  double B = 0.0;
  double D = 0.0;
  double B_dot = 0.0;
  double D_dot = 0.0;
  cplx a;
  std::optional<AuxTerms> aux;

  /// Field-only context (no auxiliary solution): enough for H, pi+-, Q+-, Lz, Sz.
  static TimeContext from_field(const FieldProfile& profile, const PhysicalConfig& cfg, double t);

  /// Residual of d f1/dt + e a* f1 - e f2 a* (exactly zero in theory).
  cplx first_system_residual() const;
};

/// Assembles the context at t. Throws DomainError if t is outside the solution.
TimeContext context_at(const AuxSolution& sol, double t);

}  // namespace susy
