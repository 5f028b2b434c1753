#include "susy/operators.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "susy/errors.hpp"
#include "susy/parallel.hpp"

namespace susy {

namespace {

constexpr cplx I{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// c_d * D + c_z * (z or z*) * u, with D a spectral derivative of u.
ScalarField first_order(const ScalarField& du, cplx c_d, const ScalarField& u, cplx c_mul,
                        bool use_z) {
  const GridSpec& g = u.spec();
  ScalarField out(g);
  parallel::for_rows(g.N, [&](int j) {
    for (int i = 0; i < g.N; ++i) {
      const cplx z = g.z(i, j);
      out(i, j) = c_d * du(i, j) + c_mul * (use_z ? z : std::conj(z)) * u(i, j);
    }
  });
  return out;
}

const AuxTerms& require_aux(const TimeContext& ctx) {
  if (!ctx.aux) throw PreconditionError("operator needs the auxiliary solution f(t); none in context");
  return *ctx.aux;
}

cplx a_of(const TimeContext& ctx, bool reversed) {
  return reversed ? cplx(ctx.D, -ctx.B) : ctx.a;
}

ScalarField scaled(cplx c, ScalarField u) {
  u *= c;
  return u;
}

ScalarField lz(const ScalarField& u) {
  const ScalarField dz = d_dz(u), dzb = d_dzbar(u);
  const GridSpec& g = u.spec();
  ScalarField out(g);
  parallel::for_rows(g.N, [&](int j) {
    for (int i = 0; i < g.N; ++i) {
      const cplx z = g.z(i, j);
      out(i, j) = z * dz(i, j) - std::conj(z) * dzb(i, j);
    }
  });
  return out;
}

void check_time(const SpinorField& field, const TimeContext& ctx) {
  const double tol = 1e-12 * std::max(1.0, std::abs(ctx.t));
  if (std::abs(field.t - ctx.t) > tol) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "field timestamp " << field.t << " does not match context time "
        << ctx.t;
    throw PreconditionError(msg.str());
  }
}

}  // namespace

ScalarField apply_pi_minus(const ScalarField& u, const TimeContext& ctx, bool reversed_B) {
  const cplx a = a_of(ctx, reversed_B);
  return first_order(d_dz(u), -2.0 * I, u, -0.5 * ctx.e * std::conj(a), false);
}

ScalarField apply_pi_plus(const ScalarField& u, const TimeContext& ctx, bool reversed_B) {
  const cplx a = a_of(ctx, reversed_B);
  return first_order(d_dzbar(u), -2.0 * I, u, -0.5 * ctx.e * a, true);
}

ScalarField apply_pi_tilde_minus(const ScalarField& u, const TimeContext& ctx) {
  const AuxTerms& x = require_aux(ctx);
  const cplx g = x.f_dot + ctx.e * ctx.D * x.f;
  return first_order(d_dz(u), -2.0 * I * x.f * x.e1, u, -0.5 * g * x.e1, false);
}

ScalarField apply_pi_tilde_plus(const ScalarField& u, const TimeContext& ctx) {
  const AuxTerms& x = require_aux(ctx);
  const cplx fb = std::conj(x.f);
  const cplx g = std::conj(x.f_dot) + ctx.e * ctx.D * fb;
  const cplx e1b = std::conj(x.e1);
  return first_order(d_dzbar(u), -2.0 * I * fb * e1b, u, -0.5 * g * e1b, true);
}

SpinorField apply(const Operator& op, const SpinorField& psi, const TimeContext& ctx) {
  check_time(psi, ctx);
  if (needs_aux(op.kind)) require_aux(ctx);
  const GridSpec& g = psi.spec();
  const bool rev = op.reversed_B;
  auto both = [&](auto&& fn) { return SpinorField(fn(psi.up), fn(psi.down), psi.t); };
  switch (op.kind) {
    case OperatorKind::Identity:
      return psi;
    case OperatorKind::PiPlus:
      return both([&](const ScalarField& u) { return apply_pi_plus(u, ctx, rev); });
    case OperatorKind::PiMinus:
      return both([&](const ScalarField& u) { return apply_pi_minus(u, ctx, rev); });
    case OperatorKind::PiTildePlus:
      return both([&](const ScalarField& u) { return apply_pi_tilde_plus(u, ctx); });
    case OperatorKind::PiTildeMinus:
      return both([&](const ScalarField& u) { return apply_pi_tilde_minus(u, ctx); });
    case OperatorKind::QPlus:
      return SpinorField(scaled(kInvSqrt2, apply_pi_minus(psi.down, ctx, rev)), ScalarField(g), psi.t);
    case OperatorKind::QMinus:
      return SpinorField(ScalarField(g), scaled(kInvSqrt2, apply_pi_plus(psi.up, ctx, rev)), psi.t);
    case OperatorKind::QTildePlus:
      return SpinorField(scaled(kInvSqrt2, apply_pi_tilde_minus(psi.down, ctx)), ScalarField(g), psi.t);
    case OperatorKind::QTildeMinus:
      return SpinorField(ScalarField(g), scaled(kInvSqrt2, apply_pi_tilde_plus(psi.up, ctx)), psi.t);
    case OperatorKind::H:
      return SpinorField(apply_pi_minus(apply_pi_plus(psi.up, ctx, rev), ctx, rev),
                         apply_pi_plus(apply_pi_minus(psi.down, ctx, rev), ctx, rev), psi.t);
    case OperatorKind::HTilde:
      return SpinorField(scaled(0.5, apply_pi_tilde_minus(apply_pi_tilde_plus(psi.up, ctx), ctx)),
                         scaled(0.5, apply_pi_tilde_plus(apply_pi_tilde_minus(psi.down, ctx), ctx)),
                         psi.t);
    case OperatorKind::Lz:
      return both(lz);
    case OperatorKind::Sz:
      return SpinorField(scaled(0.5, psi.up), scaled(-0.5, psi.down), psi.t);
    case OperatorKind::Jz:
      return SpinorField(lz(psi.up) + scaled(0.5, psi.up), lz(psi.down) - scaled(0.5, psi.down), psi.t);
    case OperatorKind::BTildePlus:
      return both([&](const ScalarField& u) { return scaled(kInvSqrt2, apply_pi_tilde_plus(u, ctx)); });
    case OperatorKind::BTildeMinus:
      return both([&](const ScalarField& u) { return scaled(kInvSqrt2, apply_pi_tilde_minus(u, ctx)); });
    case OperatorKind::BPlus: {
      const cplx ph = std::polar(kInvSqrt2, 2.0 * ctx.aux->omega);
      return both([&](const ScalarField& u) { return scaled(ph, apply_pi_tilde_plus(u, ctx)); });
    }
    case OperatorKind::BMinus: {
      const cplx ph = std::polar(kInvSqrt2, -2.0 * ctx.aux->omega);
      return both([&](const ScalarField& u) { return scaled(ph, apply_pi_tilde_minus(u, ctx)); });
    }
  }
  throw PreconditionError("unknown operator kind");
}

SpinorField apply(const Combination& combo, const SpinorField& psi, const TimeContext& ctx) {
  SpinorField out(psi.spec(), psi.t);
  for (const auto& [c, op] : combo) out += c * apply(op, psi, ctx);
  return out;
}

namespace {

double bracket_residual(const Operator& a, const Operator& b, double sign, const Combination& expected,
                        const SpinorField& psi, const TimeContext& ctx) {
  SpinorField r = apply(a, apply(b, psi, ctx), ctx);
  r += sign * apply(b, apply(a, psi, ctx), ctx);
  r -= apply(expected, psi, ctx);
  return r.norm() / psi.norm();
}

}  // namespace

double commutator_residual(const Operator& a, const Operator& b, const Combination& expected,
                           const SpinorField& psi, const TimeContext& ctx) {
  return bracket_residual(a, b, -1.0, expected, psi, ctx);
}

double anticommutator_residual(const Operator& a, const Operator& b, const Combination& expected,
                               const SpinorField& psi, const TimeContext& ctx) {
  return bracket_residual(a, b, 1.0, expected, psi, ctx);
}

double q_of_minus_B_check(const SpinorField& psi, const TimeContext& ctx, const FieldProfile& profile) {
  bool constant = false;
  if (const auto* c = std::get_if<ConstantField>(&profile.variant())) constant = c->D0 == 0.0;
  if (const auto* l = std::get_if<LinearDField>(&profile.variant())) constant = l->D_rate == 0.0;
  if (!constant) throw PreconditionError("Q(-B) relation needs a constant profile with D = 0");
  const AuxTerms& x = require_aux(ctx);
  const double w0 = ctx.e * ctx.B;
  if (!(w0 > 0.0)) throw PreconditionError("Q(-B) relation needs eB > 0");
  const cplx expected_f = std::polar(1.0, w0 * ctx.t);
  if (std::abs(x.f - expected_f) > 1e-8 * std::abs(expected_f) ||
      std::abs(x.f_dot - I * w0 * expected_f) > 1e-8 * w0) {
    throw PreconditionError("auxiliary solution is not the branch f = exp(i eB t)");
  }
  SpinorField r = apply(Operator(OperatorKind::QTildePlus), psi, ctx);
  r -= std::polar(1.0, 2.0 * w0 * ctx.t) * apply(Operator(OperatorKind::QPlus, true), psi, ctx);
  return r.norm() / psi.norm();
}

std::vector<SpinorField> probe_fields(const GridSpec& spec, double t, int count, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.6, 0.8);
  auto rand_c = [&] { return cplx(unit(rng), unit(rng)); };
  const double scale = spec.L / 20.0;

  auto component = [&] {
    const double w = width(rng) * scale;
    cplx z0 = rand_c();
    if (std::abs(z0) > 0.5) z0 *= 0.5 / std::abs(z0);
    // Coefficients of 1, z, z*, z^2, z z*, z*^2.
    std::array<cplx, 6> c;
    for (auto& x : c) x = rand_c();
    return ScalarField::from_function(spec, [=](cplx z) {
      const cplx u = z - z0;
      const cplx ub = std::conj(u);
      const cplx poly = c[0] + c[1] * u + c[2] * ub + c[3] * u * u + c[4] * u * ub + c[5] * ub * ub;
      return poly * std::exp(-std::norm(u) / (4.0 * w * w));
    });
  };

  std::vector<SpinorField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    ScalarField up = component();
    ScalarField dn = component();
    out.emplace_back(std::move(up), std::move(dn), t);
  }
  return out;
}

std::vector<CheckRow> standard_checks(const std::vector<SpinorField>& probes, const TimeContext& ctx,
                                      double tol_scale) {
  using K = OperatorKind;
  const Operator id(K::Identity), pp(K::PiPlus), pm(K::PiMinus), tp(K::PiTildePlus),
      tm(K::PiTildeMinus), qtp(K::QTildePlus), qtm(K::QTildeMinus), ht(K::HTilde), lz_op(K::Lz),
      sz(K::Sz), jz(K::Jz), bp(K::BPlus), bm(K::BMinus);

  std::vector<CheckRow> rows;
  auto record = [&](const std::string& name, double tol, auto&& residual_of) {
    double worst = 0.0;
    for (const auto& psi : probes) worst = std::max(worst, residual_of(psi));
    const double scaled_tol = tol * tol_scale;
    rows.push_back({name, ctx.t, worst, scaled_tol, worst <= scaled_tol});
  };
  auto comm = [&](const std::string& name, double tol, Operator a, Operator b, Combination expected) {
    record(name, tol, [&](const SpinorField& psi) { return commutator_residual(a, b, expected, psi, ctx); });
  };
  auto anti = [&](const std::string& name, double tol, Operator a, Operator b, Combination expected) {
    record(name, tol,
           [&](const SpinorField& psi) { return anticommutator_residual(a, b, expected, psi, ctx); });
  };

  const double e = ctx.e;
  comm("momentum_commutator", 1e-9, pm, pp, {{-2.0 * e * ctx.B, id}});
  anti("stationary_Qplus_nilpotent", 1e-10, Operator(K::QPlus), Operator(K::QPlus), {});

  if (ctx.aux) {
    const AuxTerms& x = *ctx.aux;
    const cplx G = e * x.f2_a_star;
    anti("Qtilde_plus_nilpotent", 1e-10, qtp, qtp, {});
    anti("Qtilde_minus_nilpotent", 1e-10, qtm, qtm, {});
    anti("superalgebra", 1e-8, qtp, qtm, {{1.0, ht}});
    comm("tilde_momentum_commutator", 1e-9, tm, tp, {{I * x.wronskian, id}});
    comm("mixed_commutator_tilde_minus", 1e-9, tm, pp, {{I * (e * ctx.a * x.f1 - G), id}});
    comm("mixed_commutator_tilde_plus", 1e-9, pm, tp,
         {{-I * (e * std::conj(ctx.a) * std::conj(x.f1) - std::conj(G)), id}});
    comm("minus_momenta_commute", 1e-9, pm, tm, {});
    comm("plus_momenta_commute", 1e-9, pp, tp, {});
    comm("tilde_plus_Lz", 1e-9, tp, lz_op, {{-1.0, tp}});
    comm("tilde_minus_Lz", 1e-9, tm, lz_op, {{1.0, tm}});
    comm("Qtilde_plus_Lz", 1e-9, qtp, lz_op, {{1.0, qtp}});
    comm("Qtilde_minus_Lz", 1e-9, qtm, lz_op, {{-1.0, qtm}});
    comm("Qtilde_plus_Sz", 1e-9, qtp, sz, {{-1.0, qtp}});
    comm("Qtilde_minus_Sz", 1e-9, qtm, sz, {{1.0, qtm}});
    comm("Lz_commutes_Htilde", 1e-8, lz_op, ht, {});
    comm("Sz_commutes_Htilde", 1e-8, sz, ht, {});
    comm("Sz_commutes_Lz", 1e-9, sz, lz_op, {});
    comm("Jz_commutes_Qtilde_plus", 1e-9, jz, qtp, {});
    comm("Jz_commutes_Qtilde_minus", 1e-9, jz, qtm, {});
    comm("Jz_commutes_Htilde", 1e-8, jz, ht, {});
    comm("ladder_commutator", 1e-9, bm, bp, {{1.0, id}});
    comm("bplus_Lz", 1e-9, bp, lz_op, {{-1.0, bp}});
    comm("bminus_Lz", 1e-9, bm, lz_op, {{1.0, bm}});

    // <pi~+ a | b> = <a | pi~- b> over consecutive probe pairs.
    double worst = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const SpinorField& a = probes[k];
      const SpinorField& b = probes[(k + 1) % probes.size()];
      const cplx lhs = inner(apply(tp, a, ctx), b);
      const cplx rhs = inner(a, apply(tm, b, ctx));
      worst = std::max(worst, std::abs(lhs - rhs) / (a.norm() * b.norm()));
    }
    rows.push_back({"adjoint_pi_tilde", ctx.t, worst, 1e-9 * tol_scale, worst <= 1e-9 * tol_scale});
  }
  return rows;
}

std::string to_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream out;
  out << "identity_name,t,residual,tolerance,pass\n";
  out << std::setprecision(6);
  for (const auto& r : rows) {
    out << r.identity_name << ',' << r.t << ',' << std::scientific << r.residual << ',' << r.tolerance
        << std::defaultfloat << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace susy
