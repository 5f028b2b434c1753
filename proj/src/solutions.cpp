#include "susy/solutions.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "susy/errors.hpp"
#include "susy/operators.hpp"
#include "susy/symbolic/build.hpp"

namespace susy {

namespace {

constexpr cplx I{0.0, 1.0};

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

int spin_index(double s) { return s > 0 ? 0 : 1; }

void require_normalized(const AuxSolution& sol) {
  if (!is_normalized(sol, 1e-8)) {
    std::ostringstream msg;
    msg << "auxiliary solution is not normalized to W = -2i (W = " << sol.initial_wronskian()
        << "); call normalize_wronskian first";
    throw BranchError(msg.str());
  }
}

// exp((i/4) beta |z|^2) has beta = e D + f'/f.
cplx gaussian_beta(const TimeContext& ctx) { return ctx.e * ctx.D + ctx.aux->f_dot / ctx.aux->f; }

// Prefactor C f^(m-1) exp(i (m + 2s) Omega).
cplx ground_prefactor(int m, double s, const TimeContext& ctx) {
  const AuxTerms& x = *ctx.aux;
  return ground_normalization(m) * std::pow(x.f, m - 1) *
         std::polar(1.0, (m + 2.0 * s) * x.omega);
}

SpinorField place(ScalarField u, double s, double t) {
  ScalarField zero(u.spec());
  return s > 0 ? SpinorField(std::move(u), std::move(zero), t) : SpinorField(std::move(zero), std::move(u), t);
}

// Polynomial in z, z* (exponents (a, b)) multiplying exp(gamma z z*).
using Poly = std::map<std::pair<int, int>, cplx>;

Poly d_z(const Poly& p, cplx gamma) {
  Poly out;
  for (const auto& [ab, c] : p) {
    const auto [a, b] = ab;
    if (a > 0) out[{a - 1, b}] += c * static_cast<double>(a);
    out[{a, b + 1}] += c * gamma;
  }
  return out;
}

Poly d_zbar(const Poly& p, cplx gamma) {
  Poly out;
  for (const auto& [ab, c] : p) {
    const auto [a, b] = ab;
    if (b > 0) out[{a, b - 1}] += c * static_cast<double>(b);
    out[{a + 1, b}] += c * gamma;
  }
  return out;
}

Poly apply_symbolic(const symbolic::OperatorExpr& op, const Poly& p, cplx gamma,
                    const symbolic::SymbolValues& values) {
  Poly out;
  for (const auto& [mono, coeff] : op.terms()) {
    const cplx c = coeff.evaluate(values);
    Poly q = p;
    for (int k = 0; k < mono.q; ++k) q = d_zbar(q, gamma);
    for (int k = 0; k < mono.p; ++k) q = d_z(q, gamma);
    for (const auto& [ab, v] : q) out[{ab.first + mono.a, ab.second + mono.b}] += c * v;
  }
  return out;
}

}  // namespace

void QuantumNumbers::validate() const {
  if (n < 0) throw PreconditionError("quantum number n must be >= 0");
  if (s != 0.5 && s != -0.5) throw PreconditionError("spin s must be +1/2 or -1/2");
  if (m - n > 0) {
    std::ostringstream msg;
    msg << "pole condition violated: m - n = " << m - n
        << " > 0, so the base state (z*)^-(m-n) has a pole at z = 0; states need m - n <= 0"
        << " (m <= 0 for ground states)";
    throw PoleError(msg.str());
  }
}

std::string QuantumNumbers::to_string() const {
  std::ostringstream out;
  out << "(" << n << "," << m << "," << (s > 0 ? "+1/2" : "-1/2") << ")";
  return out.str();
}

double energy(const QuantumNumbers& qn) { return qn.n + qn.s + 0.5; }

double ground_normalization(int m) {
  const int k = std::abs(m);
  return 1.0 / std::sqrt(std::numbers::pi * std::ldexp(1.0, k + 1) * factorial(k));
}

SpinorField ground_state(int m, double s, const AuxSolution& sol, double t, const GridSpec& spec) {
  QuantumNumbers{0, m, s}.validate();
  require_normalized(sol);
  spec.validate();
  const TimeContext ctx = context_at(sol, t);
  const cplx pref = ground_prefactor(m, s, ctx);
  const cplx gamma = 0.25 * I * gaussian_beta(ctx);
  const int k = -m;
  ScalarField u = ScalarField::from_function(spec, [=](cplx z) {
    const cplx zb = std::conj(z);
    return pref * std::pow(zb, k) * std::exp(gamma * std::norm(z));
  });
  return place(std::move(u), s, t);
}

SpinorField eigenstate(const QuantumNumbers& qn, const AuxSolution& sol, double t, const GridSpec& spec) {
  qn.validate();
  SpinorField psi = ground_state(qn.m - qn.n, qn.s, sol, t, spec);
  if (qn.n == 0) return psi;
  const TimeContext ctx = context_at(sol, t);
  const Operator bp(OperatorKind::BPlus);
  for (int k = 0; k < qn.n; ++k) psi = apply(bp, psi, ctx);
  psi *= 1.0 / std::sqrt(factorial(qn.n));
  return psi;
}

SpinorField eigenstate_via_symbolic(const QuantumNumbers& qn, const AuxSolution& sol, double t,
                                    const GridSpec& spec) {
  qn.validate();
  require_normalized(sol);
  spec.validate();
  const TimeContext ctx = context_at(sol, t);
  const int m0 = qn.m - qn.n;
  const cplx gamma = 0.25 * I * gaussian_beta(ctx);

  symbolic::SymbolValues values;
  values.e = ctx.e;
  values.B = {ctx.B, ctx.B_dot};
  values.D = {ctx.D, ctx.D_dot};
  values.f = ctx.aux->f;
  values.f_dot = ctx.aux->f_dot;
  values.e1 = ctx.aux->e1;

  const int row = spin_index(qn.s);
  const symbolic::OperatorExpr bp = symbolic::build(OperatorKind::BPlus).block(row, row);
  Poly p{{{0, -m0}, ground_prefactor(m0, qn.s, ctx)}};
  for (int k = 0; k < qn.n; ++k) p = apply_symbolic(bp, p, gamma, values);
  const double norm = 1.0 / std::sqrt(factorial(qn.n));

  ScalarField u = ScalarField::from_function(spec, [&](cplx z) {
    const cplx zb = std::conj(z);
    cplx acc(0.0);
    for (const auto& [ab, c] : p) acc += c * std::pow(z, ab.first) * std::pow(zb, ab.second);
    return norm * acc * std::exp(gamma * std::norm(z));
  });
  return place(std::move(u), qn.s, t);
}

EigenState::EigenState(QuantumNumbers qn, std::shared_ptr<const AuxSolution> sol, GridSpec spec)
    : qn_(qn), sol_(std::move(sol)), spec_(spec) {
  if (!sol_) throw PreconditionError("eigenstate needs an auxiliary solution");
  qn_.validate();
  spec_.validate();
  require_normalized(*sol_);
  const double t0 = sol_->is_closed_form() ? 0.0 : sol_->t_begin();
  construction_norm_ = eigenstate(qn_, *sol_, t0, spec_).norm();
}

SpinorField EigenState::at(double t) const { return eigenstate(qn_, *sol_, t, spec_); }

PauliResidual pauli_residual(const EigenState& state, double t, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("residual stencil step must be positive");
  const AuxSolution& sol = state.solution();
  if (!sol.contains(t - 2.0 * dt) || !sol.contains(t + 2.0 * dt)) {
    std::ostringstream msg;
    msg << "stencil [" << t - 2.0 * dt << ", " << t + 2.0 * dt << "] leaves the solution span ["
        << sol.t_begin() << ", " << sol.t_end() << "]";
    throw DomainError(msg.str());
  }
  const SpinorField psi = state.at(t);
  const TimeContext ctx = TimeContext::from_field(sol.profile(), sol.config(), t);
  const SpinorField h_psi = apply(Operator(OperatorKind::H), psi, ctx);

  auto residual_for = [&](double h) {
    SpinorField dpsi = state.at(t - 2.0 * h);
    dpsi -= 8.0 * state.at(t - h);
    dpsi += 8.0 * state.at(t + h);
    dpsi -= state.at(t + 2.0 * h);
    dpsi *= I / (12.0 * h);
    dpsi.t = t;
    dpsi -= h_psi;
    return dpsi.norm() / psi.norm();
  };
  return {residual_for(dt), residual_for(0.5 * dt)};
}

double susy_partner_check(const QuantumNumbers& qn, const AuxSolution& sol, double t,
                          const GridSpec& spec) {
  qn.validate();
  const SpinorField psi = eigenstate(qn, sol, t, spec);
  const TimeContext ctx = context_at(sol, t);
  const double norm = psi.norm();
  const SpinorField qp = apply(Operator(OperatorKind::QTildePlus), psi, ctx);
  const SpinorField qm = apply(Operator(OperatorKind::QTildeMinus), psi, ctx);
  double worst = 0.0;
  if (qn.s > 0) {
    worst = std::max(worst, qp.norm() / norm);
    const SpinorField target =
        std::sqrt(qn.n + 1.0) * eigenstate({qn.n + 1, qn.m + 1, -0.5}, sol, t, spec);
    worst = std::max(worst, (qm - target).norm() / norm);
  } else {
    worst = std::max(worst, qm.norm() / norm);
    if (qn.n == 0) {
      worst = std::max(worst, qp.norm() / norm);
    } else {
      const SpinorField target = std::sqrt(static_cast<double>(qn.n)) *
                                 eigenstate({qn.n - 1, qn.m - 1, 0.5}, sol, t, spec);
      worst = std::max(worst, (qp - target).norm() / norm);
    }
  }
  return worst;
}

GridSpec recommend_grid(const QuantumNumbers& qn, const AuxSolution& sol, double t0, double t1) {
  qn.validate();
  if (!(t0 <= t1)) throw PreconditionError("recommend_grid needs t0 <= t1");
  const double e = sol.config().e;
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(t0 + (t1 - t0) * k / 200.0);
  for (const auto& s : sol.nodes()) {
    if (s.t >= t0 && s.t <= t1) times.push_back(s.t);
  }

  const double log_eps = std::log(1e-13);
  const int d = 2 * qn.n - qn.m;  // polynomial degree of the state
  double f_max = 0.0, k_needed = 0.0;
  // Smallest x >= peak with d log x - c x^2 - (d/2)(log(d/(2c)) - 1) < log_eps.
  auto tail = [&](double c) {
    const double peak = d > 0 ? 0.5 * d * (std::log(d / (2.0 * c)) - 1.0) : 0.0;
    double x = d > 0 ? std::sqrt(d / (2.0 * c)) : 0.0;
    const double dx = 0.01 / std::sqrt(c);
    while ((d > 0 ? d * std::log(std::max(x, 1e-300)) : 0.0) - c * x * x - peak > log_eps) x += dx;
    return x;
  };
  for (double t : times) {
    const AuxState s = sol.at(t);
    f_max = std::max(f_max, std::abs(s.f));
    const cplx beta = e * sol.profile().D(t) + s.f_dot / s.f;
    // Spectral envelope k^d exp(-k^2 Im(beta) / |beta|^2).
    k_needed = std::max(k_needed, tail(beta.imag() / std::norm(beta)));
  }
  // Spatial envelope r^d exp(-r^2 / (4 |f|^2)).
  const double r_needed = tail(1.0 / (4.0 * f_max * f_max));
  const double floor_L = 8.0 * 2.0 * f_max * std::sqrt(qn.n + std::abs(qn.m) + 1.0);
  // The outermost grid ring sits at L/2 - dx, so r_needed must fit there.
  GridSpec g;
  g.N = 16;
  for (;;) {
    g.L = std::max(floor_L, 2.0 * r_needed * g.N / (g.N - 2.0));
    if (std::numbers::pi * g.N / g.L >= k_needed) break;
    g.N *= 2;
  }
  return g;
}

}  // namespace susy
