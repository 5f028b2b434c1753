#include "susy/propagator.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "susy/errors.hpp"
#include "susy/operators.hpp"

namespace susy {

namespace {

constexpr cplx I{0.0, 1.0};

bool all_finite(const SpinorField& psi) {
  for (const ScalarField* c : {&psi.up, &psi.down}) {
    for (const auto& v : c->data()) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

// -i H(t) psi, with psi relabelled to time t.
SpinorField rhs(SpinorField psi, double t, const FieldProfile& profile, const PhysicalConfig& cfg) {
  psi.t = t;
  const TimeContext ctx = TimeContext::from_field(profile, cfg, t);
  SpinorField out = apply(Operator(OperatorKind::H), psi, ctx);
  out *= -I;
  return out;
}

}  // namespace

double stability_bound(const GridSpec& spec, const FieldProfile& profile, const PhysicalConfig& cfg,
                       double t0, double t1) {
  spec.validate();
  double b_max = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double t = t0 + (t1 - t0) * k / 200.0;
    b_max = std::max(b_max, std::abs(profile.B(t)));
  }
  const double a_max = profile.max_abs_a(t0, t1);
  const double e = std::abs(cfg.e);
  const double pi_max = std::numbers::sqrt2 * spec.k_max() + e * a_max * spec.L / (2.0 * std::numbers::sqrt2);
  const double lambda = pi_max * pi_max + e * b_max;
  return 2.0 * std::numbers::sqrt2 / lambda;
}

SpinorField step(const SpinorField& psi, const FieldProfile& profile, const PhysicalConfig& cfg, double dt) {
  const double t = psi.t;
  const SpinorField k1 = rhs(psi, t, profile, cfg);
  const SpinorField k2 = rhs(psi + (0.5 * dt) * k1, t + 0.5 * dt, profile, cfg);
  const SpinorField k3 = rhs(psi + (0.5 * dt) * k2, t + 0.5 * dt, profile, cfg);
  const SpinorField k4 = rhs(psi + dt * k3, t + dt, profile, cfg);
  SpinorField out = psi;
  out += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out.t = t + dt;
  if (!all_finite(out)) {
    std::ostringstream msg;
    msg << std::setprecision(10) << "propagation became non-finite in the step from t = " << t
        << " to t = " << t + dt << " (dt = " << dt << ")";
    throw InstabilityError(msg.str());
  }
  return out;
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::Norm: return "norm";
    case Observable::HTilde: return "Htilde";
    case Observable::Lz: return "Lz";
    case Observable::Sz: return "Sz";
    case Observable::QTildePlus: return "Qp";
    case Observable::QTildeMinus: return "Qm";
    case Observable::BPlusBMinus: return "bpbm";
  }
  return "?";
}

namespace {

TrajectoryRow observe(const SpinorField& psi, const PropagationRun& spec) {
  TrajectoryRow row;
  row.t = psi.t;
  TimeContext ctx;
  bool have_aux = false;
  if (spec.sol) {
    ctx = context_at(*spec.sol, psi.t);
    have_aux = true;
  } else {
    ctx = TimeContext::from_field(spec.profile, spec.cfg, psi.t);
  }
  auto expect = [&](OperatorKind k) { return inner(psi, apply(Operator(k), psi, ctx)); };
  for (Observable o : spec.observables) {
    const bool needs = o == Observable::HTilde || o == Observable::QTildePlus ||
                       o == Observable::QTildeMinus || o == Observable::BPlusBMinus;
    if (needs && !have_aux) {
      throw PreconditionError("observable " + to_string(o) + " needs an auxiliary solution");
    }
    switch (o) {
      case Observable::Norm: row.values[o] = psi.norm(); break;
      case Observable::HTilde: row.values[o] = expect(OperatorKind::HTilde); break;
      case Observable::Lz: row.values[o] = expect(OperatorKind::Lz); break;
      case Observable::Sz: row.values[o] = expect(OperatorKind::Sz); break;
      case Observable::QTildePlus: row.values[o] = expect(OperatorKind::QTildePlus); break;
      case Observable::QTildeMinus: row.values[o] = expect(OperatorKind::QTildeMinus); break;
      case Observable::BPlusBMinus: {
        const SpinorField bm = apply(Operator(OperatorKind::BMinus), psi, ctx);
        row.values[o] = inner(psi, apply(Operator(OperatorKind::BPlus), bm, ctx));
        break;
      }
    }
  }
  return row;
}

}  // namespace

PropagationResult run(const PropagationRun& spec) {
  spec.cfg.validate();
  const double t0 = spec.initial.t;
  if (!(spec.t1 > t0)) throw PreconditionError("propagation needs t1 > t0");
  if (!(spec.dt > 0.0)) throw PreconditionError("propagation needs dt > 0");
  if (spec.stride < 1) throw PreconditionError("observable stride must be >= 1");
  const double bound = stability_bound(spec.initial.spec(), spec.profile, spec.cfg, t0, spec.t1);
  if (spec.dt > 0.5 * bound) {
    std::ostringstream msg;
    msg << "dt = " << spec.dt << " exceeds half the RK4 stability bound " << bound
        << " for this grid and field; reduce dt or N";
    throw PreconditionError(msg.str());
  }
  const double span = spec.t1 - t0;
  const auto n = static_cast<std::size_t>(std::ceil(span / spec.dt - 1e-9));

  PropagationResult result;
  result.dt_used = span / static_cast<double>(n);
  result.steps = n;
  SpinorField psi = spec.initial;
  result.rows.push_back(observe(psi, spec));
  for (std::size_t k = 1; k <= n; ++k) {
    psi = step(psi, spec.profile, spec.cfg, result.dt_used);
    if (k == n) psi.t = spec.t1;
    if (k % static_cast<std::size_t>(spec.stride) == 0 || k == n) result.rows.push_back(observe(psi, spec));
  }
  for (Observable o : spec.observables) {
    const cplx v0 = result.rows.front().values.at(o);
    double drift = 0.0;
    for (const auto& r : result.rows) drift = std::max(drift, std::abs(r.values.at(o) - v0));
    result.max_drift[o] = drift;
  }
  result.final_state = std::move(psi);
  return result;
}

void write_trajectory_csv(const std::filesystem::path& path, const PropagationResult& result) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "t,norm,Re_Htilde,Re_Lz,Re_Sz,Re_Qp,Im_Qp,Re_Qm,Im_Qm\n" << std::setprecision(17);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : result.rows) {
    auto get = [&](Observable o) {
      auto it = r.values.find(o);
      return it == r.values.end() ? cplx(nan, nan) : it->second;
    };
    const cplx qp = get(Observable::QTildePlus), qm = get(Observable::QTildeMinus);
    out << r.t << ',' << get(Observable::Norm).real() << ',' << get(Observable::HTilde).real() << ','
        << get(Observable::Lz).real() << ',' << get(Observable::Sz).real() << ',' << qp.real() << ','
        << qp.imag() << ',' << qm.real() << ',' << qm.imag() << '\n';
  }
}

}  // namespace susy
