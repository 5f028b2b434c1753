#include "susy/aux_ode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "susy/errors.hpp"

namespace susy {

namespace {

using State = std::array<double, 5>;

// Dormand-Prince 5(4) tableau with Hairer's dense-output coefficients.
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

class Rhs {
 public:
  Rhs(const FieldProfile& p, double e) : profile_(p), e_(e) {}

  State operator()(double t, const State& y) const {
    const double B = profile_.B(t);
    const double k = e_ * e_ * B * B + e_ * profile_.D_dot(t);
    return {y[2], y[3], -k * y[0], -k * y[1], e_ * B};
  }

 private:
  const FieldProfile& profile_;
  double e_;
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    for (std::size_t i = 0; i < 5; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

AuxState to_aux(double t, const State& y) {
  return AuxState{t, cplx(y[0], y[1]), cplx(y[2], y[3]), y[4]};
}

}  // namespace

AuxSolution AuxSolution::from_numeric(FieldProfile profile, PhysicalConfig cfg, Numeric data) {
  AuxSolution s(std::move(profile), cfg);
  s.data_ = std::move(data);
  return s;
}

AuxSolution AuxSolution::from_closed(PhysicalConfig cfg, Closed data) {
  AuxSolution s(FieldProfile::linear_D(data.B, data.D_rate), cfg);
  s.data_ = data;
  return s;
}

double AuxSolution::t_begin() const {
  if (const auto* n = std::get_if<Numeric>(&data_)) return n->nodes.front().t;
  return -std::numeric_limits<double>::infinity();
}

double AuxSolution::t_end() const {
  if (const auto* n = std::get_if<Numeric>(&data_)) return n->nodes.back().t;
  return std::numeric_limits<double>::infinity();
}

AuxState AuxSolution::raw_at(double t) const {
  if (!std::isfinite(t) || !contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside auxiliary solution span [" << t_begin() << ", " << t_end()
        << "]";
    throw DomainError(msg.str());
  }
  if (const auto* c = std::get_if<Closed>(&data_)) {
    const cplx i(0.0, 1.0);
    const cplx em = std::exp(-i * c->omega * t);
    const cplx ep = std::exp(i * c->omega * t);
    AuxState s;
    s.t = t;
    s.f = c->c1 * em + c->c2 * ep;
    s.f_dot = -i * c->omega * c->c1 * em + i * c->omega * c->c2 * ep;
    s.omega = cfg_.e * c->B * t;
    return s;
  }
  const auto& num = std::get<Numeric>(data_);
  const auto& steps = num.steps;
  if (steps.empty()) return num.nodes.front();
  auto it = std::upper_bound(steps.begin(), steps.end(), t,
                             [](double v, const Step& st) { return v < st.t0; });
  const Step& st = it == steps.begin() ? steps.front() : *(it - 1);
  const double theta = std::clamp((t - st.t0) / st.h, 0.0, 1.0);
  const double theta1 = 1.0 - theta;
  State y;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& r = st.rcont;
    y[i] = r[0][i] + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
  }
  return to_aux(t, y);
}

AuxState AuxSolution::at(double t) const {
  AuxState s = raw_at(t);
  s.f *= scale_;
  s.f_dot *= scale_;
  return s;
}

std::vector<AuxState> AuxSolution::nodes() const {
  std::vector<AuxState> out;
  if (const auto* n = std::get_if<Numeric>(&data_)) {
    out = n->nodes;
    for (auto& s : out) {
      s.f *= scale_;
      s.f_dot *= scale_;
    }
  }
  return out;
}

cplx AuxSolution::initial_wronskian() const {
  const double t0 = is_closed_form() ? 0.0 : t_begin();
  return at(t0).wronskian();
}

double AuxSolution::max_wronskian_drift() const {
  const auto* n = std::get_if<Numeric>(&data_);
  if (n == nullptr || n->nodes.empty()) return 0.0;
  const cplx w0 = n->nodes.front().wronskian();
  double drift = 0.0;
  for (const auto& s : n->nodes) drift = std::max(drift, std::abs(s.wronskian() - w0));
  return drift * scale_ * scale_;
}

AuxSolution AuxSolution::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw PreconditionError("auxiliary scale factor must be positive and finite");
  }
  AuxSolution out = *this;
  out.scale_ *= factor;
  return out;
}

void AuxSolution::write_csv(const std::filesystem::path& path, double t0, double t1,
                            int samples) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "t,Re_f,Im_f,Re_fdot,Im_fdot,Omega,Re_W,Im_W\n";
  out << std::setprecision(17);
  auto row = [&out](const AuxState& s) {
    const cplx w = s.wronskian();
    out << s.t << ',' << s.f.real() << ',' << s.f.imag() << ',' << s.f_dot.real() << ','
        << s.f_dot.imag() << ',' << s.omega << ',' << w.real() << ',' << w.imag() << '\n';
  };
  if (is_closed_form()) {
    const int n = std::max(samples, 2);
    for (int k = 0; k < n; ++k) row(at(t0 + (t1 - t0) * k / (n - 1)));
  } else {
    for (const auto& s : nodes()) row(s);
  }
}

AuxSolution solve(const FieldProfile& profile, const PhysicalConfig& cfg, double t0, double t1,
                  cplx f0, cplx f0_dot, const SolveOptions& opts) {
  cfg.validate();
  if (!(t0 < t1)) throw PreconditionError("solve requires t0 < t1");
  if (f0 == cplx(0.0) && f0_dot == cplx(0.0)) {
    throw PreconditionError("initial data f0 = f0_dot = 0 gives the trivial solution");
  }
  if (!(opts.tol > 0.0)) throw PreconditionError("solver tolerance must be positive");
  if (!profile.contains(t0) || !profile.contains(t1)) {
    const auto [lo, hi] = profile.domain();
    std::ostringstream msg;
    msg << "profile domain [" << lo << ", " << hi << "] does not cover [" << t0 << ", " << t1
        << "]";
    throw DomainError(msg.str());
  }

  const Rhs rhs(profile, cfg.e);
  const double tol = opts.tol;
  auto err_norm = [tol](const State& y0, const State& y1, const State& err) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      const double sc = tol + tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      acc += (err[i] / sc) * (err[i] / sc);
    }
    return std::sqrt(acc / 5.0);
  };

  AuxSolution::Numeric data;
  State y{f0.real(), f0.imag(), f0_dot.real(), f0_dot.imag(), 0.0};
  double t = t0;
  data.nodes.push_back(to_aux(t, y));

  State k1 = rhs(t, y);
  double h = opts.initial_step;
  if (!(h > 0.0)) {
    // Hairer's starting-step heuristic, simplified.
    double d0 = 0.0, d1v = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      const double sc = tol + tol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1v += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / 5.0);
    d1v = std::sqrt(d1v / 5.0);
    h = (d0 < 1e-5 || d1v < 1e-5) ? 1e-6 : 0.01 * d0 / d1v;
    h = std::min(h, std::pow(tol, 0.2));
  }
  h = std::min(h, t1 - t0);

  const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t0), std::abs(t1)) + 1e-300;
  std::size_t rejected = 0;
  while (t < t1) {
    if (data.steps.size() + rejected > opts.max_steps) {
      std::ostringstream msg;
      msg << "auxiliary ODE: exceeded " << opts.max_steps << " steps at t = " << t
          << " (last h = " << h << ")";
      throw SolverError(msg.str());
    }
    bool last = false;
    if (t + h >= t1 || t1 - (t + h) < min_step) {
      h = t1 - t;
      last = true;
    }
    const State k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State k7 = rhs(t + h, y1);

    State err;
    for (std::size_t i = 0; i < 5; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const double en = err_norm(y, y1, err);
    if (!std::isfinite(en)) {
      std::ostringstream msg;
      msg << "auxiliary ODE: non-finite error estimate at t = " << t;
      throw SolverError(msg.str());
    }
    if (en <= 1.0) {
      AuxSolution::Step st;
      st.t0 = t;
      st.h = h;
      for (std::size_t i = 0; i < 5; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        st.rcont[0][i] = y[i];
        st.rcont[1][i] = ydiff;
        st.rcont[2][i] = bspl;
        st.rcont[3][i] = ydiff - h * k7[i] - bspl;
        st.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      data.steps.push_back(st);
      t = last ? t1 : t + h;
      y = y1;
      k1 = k7;
      data.nodes.push_back(to_aux(t, y));
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++rejected;
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
      if (h < min_step) {
        std::ostringstream msg;
        msg << "auxiliary ODE: step size underflow at t = " << t << " (error norm " << en << ")";
        throw SolverError(msg.str());
      }
    }
  }
  return AuxSolution::from_numeric(profile, cfg, std::move(data));
}

AuxSolution analytic_constant(const PhysicalConfig& cfg, double B, double D_rate, cplx c1,
                              cplx c2) {
  cfg.validate();
  const double w2 = cfg.e * cfg.e * B * B + cfg.e * D_rate;
  if (w2 == 0.0) {
    throw PreconditionError(
        "(eB)^2 + e*D_rate = 0: degenerate frequency, the exponential closed form does not apply");
  }
  if (c1 == cplx(0.0) && c2 == cplx(0.0)) {
    throw PreconditionError("closed-form coefficients c1 = c2 = 0 give the trivial solution");
  }
  AuxSolution::Closed data{B, D_rate, c1, c2, std::sqrt(cplx(w2, 0.0))};
  return AuxSolution::from_closed(cfg, data);
}

AuxSolution normalize_wronskian(const AuxSolution& sol) {
  const AuxState s0 = sol.at(sol.is_closed_form() ? 0.0 : sol.t_begin());
  const cplx w = s0.wronskian();
  const double scale_ref = std::abs(s0.f) * std::abs(s0.f_dot);
  if (std::abs(w) <= 1e-14 * std::max(scale_ref, 1e-300)) {
    throw NormalizationError(
        "Wronskian vanishes: f and conj(f) are linearly dependent (f is real up to a constant "
        "phase); choose complex initial data such as f0 = 1, f0_dot = i");
  }
  if (w.imag() > 0.0) {
    std::ostringstream msg;
    msg << "Wronskian W = " << w.imag()
        << "i has the wrong sign (Im W > 0): this branch gives non-normalizable ground "
           "states; use the conjugate initial data (conj(f0), conj(f0_dot))";
    throw BranchError(msg.str());
  }
  return sol.scaled(std::sqrt(2.0 / -w.imag()));
}

bool is_normalized(const AuxSolution& sol, double tol) {
  return std::abs(sol.initial_wronskian() - cplx(0.0, -2.0)) <= tol;
}

TimeContext TimeContext::from_field(const FieldProfile& profile, const PhysicalConfig& cfg,
                                    double t) {
  const FieldSample s = sample(profile, cfg, t);
  TimeContext ctx;
  ctx.t = t;
  ctx.e = cfg.e;
  ctx.B = s.B;
  ctx.D = s.D;
  ctx.B_dot = s.B_dot;
  ctx.D_dot = s.D_dot;
  ctx.a = s.a;
  return ctx;
}

cplx TimeContext::first_system_residual() const {
  if (!aux) throw PreconditionError("context has no auxiliary solution");
  const cplx i(0.0, 1.0);
  const cplx f1_dot = (aux->f_dot + i * e * B * aux->f) * aux->e1;
  return f1_dot + e * std::conj(a) * aux->f1 - e * aux->f2_a_star;
}

TimeContext context_at(const AuxSolution& sol, double t) {
  TimeContext ctx = TimeContext::from_field(sol.profile(), sol.config(), t);
  const AuxState s = sol.at(t);
  const double e = sol.config().e;
  AuxTerms aux;
  aux.omega = s.omega;
  aux.f = s.f;
  aux.f_dot = s.f_dot;
  aux.e1 = std::polar(1.0, s.omega);
  aux.f1 = s.f * aux.e1;
  aux.f2_a_star = (e * ctx.D * s.f + s.f_dot) * aux.e1 / e;
  aux.wronskian = s.wronskian();
  ctx.aux = aux;
  return ctx;
}

}  // namespace susy
