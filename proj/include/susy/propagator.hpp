#pragma once

// Direct numerical integration of i dpsi/dt = H(t) psi with classical RK4 and
// matrix-free spectral application of H.

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "susy/aux_ode.hpp"
#include "susy/grid.hpp"

namespace susy {

/// Largest stable RK4 step 2 sqrt(2) / lambda_max on [t0, t1], where
/// lambda_max = (sqrt(2) k_max + |e| max|a| L / (2 sqrt 2))^2 + |e| max|B|
/// bounds the spectral radius of H on the grid.
double stability_bound(const GridSpec& spec, const FieldProfile& profile, const PhysicalConfig& cfg,
                       double t0, double t1);

/// One RK4 step from field.t to field.t + dt. Throws InstabilityError when
/// the result is not finite.
SpinorField step(const SpinorField& field, const FieldProfile& profile, const PhysicalConfig& cfg,
                 double dt);

enum class Observable { Norm, HTilde, Lz, Sz, QTildePlus, QTildeMinus, BPlusBMinus };

std::string to_string(Observable o);

struct PropagationRun {
  SpinorField initial;
  FieldProfile profile;
  PhysicalConfig cfg;
  /// Needed for H~, Q~+- and b+ b-; may be null when only norm, Lz, Sz are recorded.
  std::shared_ptr<const AuxSolution> sol;
  double t1 = 1.0;  // the run starts at initial.t
  double dt = 1e-3;
  int stride = 10;  // observables every `stride` steps (and at the end)
  std::vector<Observable> observables{Observable::Norm,   Observable::HTilde,     Observable::Lz,
                                      Observable::Sz,     Observable::QTildePlus, Observable::QTildeMinus,
                                      Observable::BPlusBMinus};
};

struct TrajectoryRow {
  double t = 0.0;
  std::map<Observable, cplx> values;  // <psi|O psi>; the norm entry holds ||psi||
};

struct PropagationResult {
  std::vector<TrajectoryRow> rows;
  SpinorField final_state;
  double dt_used = 0.0;
  std::size_t steps = 0;
  /// max_t |<O>(t) - <O>(t0)| per recorded observable.
  std::map<Observable, double> max_drift;
};

/// Integrates from initial.t to t1 in equal steps of at most dt. Throws
/// PreconditionError if dt exceeds half the stability bound.
PropagationResult run(const PropagationRun& spec);

/// CSV `t,norm,Re_Htilde,Re_Lz,Re_Sz,Re_Qp,Im_Qp,Re_Qm,Im_Qm` (missing
/// observables written as nan).
void write_trajectory_csv(const std::filesystem::path& path, const PropagationResult& result);

}  // namespace susy
