#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>

#include "susy/aux_ode.hpp"
#include "susy/grid.hpp"

namespace testing {

using susy::cplx;

inline constexpr cplx I{0.0, 1.0};

// f = exp(i B t) for a constant field (c1 = 0, c2 = 1), already normalized when B = 1.
inline std::shared_ptr<const susy::AuxSolution> landau_branch(double B = 1.0, double e = 1.0) {
  return std::make_shared<const susy::AuxSolution>(
      susy::analytic_constant(susy::PhysicalConfig{e}, B, 0.0, 0.0, 1.0));
}

inline std::shared_ptr<const susy::AuxSolution> solved(const susy::FieldProfile& profile, double t0,
                                                       double t1, double e = 1.0) {
  return std::make_shared<const susy::AuxSolution>(
      susy::normalize_wronskian(susy::solve(profile, susy::PhysicalConfig{e}, t0, t1)));
}

inline double max_abs(const susy::ScalarField& u) { return u.max_abs(); }

inline double max_abs_diff(const susy::ScalarField& a, const susy::ScalarField& b) {
  return (a - b).max_abs();
}

inline double rel_diff(const susy::SpinorField& a, const susy::SpinorField& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

inline susy::SpinorField up_only(const susy::GridSpec& g, double t, const std::function<cplx(cplx)>& fn) {
  return {susy::ScalarField::from_function(g, fn), susy::ScalarField(g), t};
}

inline susy::SpinorField down_only(const susy::GridSpec& g, double t, const std::function<cplx(cplx)>& fn) {
  return {susy::ScalarField(g), susy::ScalarField::from_function(g, fn), t};
}

}  // namespace testing
