#include "susy/symbolic/suite.hpp"

#include <json.hpp>

#include <sstream>

#include "susy/symbolic/build.hpp"

namespace susy::symbolic {

namespace {

using C = CoeffExpr;
using O = OperatorExpr;
using K = OperatorKind;

O bld(K k) { return build(k); }
O scalar(const C& c) { return O::scalar(c); }
C i_unit() { return C::i(); }

// i dA/dt + [A, H]
O motion(const O& a, const O& h) { return i_unit() * a.time_derivative() + commutator(a, h); }

}  // namespace

std::vector<Identity> identity_list() {
  const O pm = bld(K::PiMinus), pp = bld(K::PiPlus);
  const O tm = bld(K::PiTildeMinus), tp = bld(K::PiTildePlus);
  const O qp = bld(K::QPlus), qm = bld(K::QMinus);
  const O qtp = bld(K::QTildePlus), qtm = bld(K::QTildeMinus);
  const O h = bld(K::H), ht = bld(K::HTilde);
  const O lz = bld(K::Lz), sz = bld(K::Sz), jz = bld(K::Jz);
  const O btp = bld(K::BTildePlus), btm = bld(K::BTildeMinus);
  const O bp = bld(K::BPlus), bm = bld(K::BMinus);
  const O hp = h_plus(), hm = h_minus();
  const O one = O::identity();
  const O sp = O::spin(SpinFactor::SigmaPlus), sm = O::spin(SpinFactor::SigmaMinus);
  const O spsm = O::spin(SpinFactor::SigmaPlusSigmaMinus);

  const C e = C::e(), B = C::B();
  const C a = field_a(), a_star = field_a_star();
  const C f1 = coeff_f1(), G = coeff_G();
  const C wr = C::f() * C::fbar(1) - C::fbar() * C::f(1);

  // I = exp(-2i Omega) pi~-, the integral of motion hidden in pi~-.
  const O I = C::E1(-2) * tm;
  const O I_dag = I.adjoint();

  std::vector<Identity> out;
  auto add = [&out](std::string name, std::string statement, O residual) {
    out.push_back({std::move(name), std::move(statement), std::move(residual)});
  };

  // Stationary structure (holds pointwise in t for any B(t), D(t)).
  add("stationary_Qplus_nilpotent", "Q+ Q+ = 0", qp * qp);
  add("stationary_Qminus_nilpotent", "Q- Q- = 0", qm * qm);
  add("stationary_Qplus_commutes_H", "[Q+, H] = 0", commutator(qp, h));
  add("stationary_Qminus_commutes_H", "[Q-, H] = 0", commutator(qm, h));
  add("stationary_superalgebra", "2 {Q+, Q-} - H = 0", C(2) * anticommutator(qp, qm) - h);
  add("stationary_blocks", "H - (pi- pi+ P_up + pi+ pi- P_dn) = 0",
      h - hp * O::spin(SpinFactor::SigmaPlusSigmaMinus) - hm * O::spin(SpinFactor::SigmaMinusSigmaPlus));

  // Commutators of the kinetic momenta.
  add("momentum_commutator", "[pi-, pi+] + 2eB = 0", commutator(pm, pp) + scalar(C(2) * e * B));
  add("momentum_commutator_via_a", "[pi-, pi+] - ie(a - a*) = 0",
      commutator(pm, pp) - scalar(i_unit() * e * (a - a_star)));
  add("tilde_momentum_commutator_general", "[pi~-, pi~+] - i(f1 G* - f1* G) = 0",
      commutator(tm, tp) - scalar(i_unit() * (f1 * G.conj() - f1.conj() * G)));
  add("mixed_commutator_tilde_minus", "[pi~-, pi+] - i(e a f1 - G) = 0",
      commutator(tm, pp) - scalar(i_unit() * (e * a * f1 - G)));
  add("mixed_commutator_tilde_plus", "[pi-, pi~+] + i(e a* f1* - G*) = 0",
      commutator(pm, tp) + scalar(i_unit() * (e * a_star * f1.conj() - G.conj())));
  add("minus_momenta_commute", "[pi-, pi~-] = 0", commutator(pm, tm));
  add("plus_momenta_commute", "[pi+, pi~+] = 0", commutator(pp, tp));

  // Evolution equations for pi~.
  add("tilde_minus_evolution", "i d(pi~-)/dt + pi~- H- - H+ pi~- = 0",
      i_unit() * tm.time_derivative() + tm * hm - hp * tm);
  add("tilde_plus_evolution", "i d(pi~+)/dt + pi~+ H+ - H- pi~+ = 0",
      i_unit() * tp.time_derivative() + tp * hp - hm * tp);
  add("block_difference", "H+ - H- + 2eB = 0", hp - hm + scalar(C(2) * e * B));
  add("block_difference_is_commutator", "H+ - H- - [pi-, pi+] = 0", hp - hm - commutator(pm, pp));
  add("tilde_minus_commutator_form", "i d(pi~-)/dt + [pi~-, H-] + 2eB pi~- = 0",
      i_unit() * tm.time_derivative() + commutator(tm, hm) + (C(2) * e * B) * tm);
  add("I_integral_of_H_minus", "i dI/dt + [I, H-] = 0", motion(I, hm));
  add("I_integral_of_H_plus", "i dI/dt + [I, H+] = 0", motion(I, hp));
  add("I_integral_of_H", "i dI/dt + [I, H] = 0", motion(I, h));
  add("I_adjoint_integral_of_H", "i dI+/dt + [I+, H] = 0", motion(I_dag, h));
  add("tilde_plus_from_I_adjoint", "pi~+ - exp(-2i Omega) I+ = 0", tp - C::E1(-2) * I_dag);

  // The f1, f2 system under the substitution through f.
  add("f_system_first", "d f1/dt + e a* f1 - e f2 a* = 0",
      scalar(f1.derivative() + e * a_star * f1 - G));
  add("f_system_second", "d(e f2 a*)/dt + e^2 a a* f1 - e a (e f2 a*) = 0",
      scalar(G.derivative() + e * e * a * a_star * f1 - e * a * G));
  add("auxiliary_equation_closure", "f'' + ((eB)^2 + eD') f = 0",
      scalar(C::f().derivative().derivative() + (e * e * B * B + e * C::D(1)) * C::f()));

  // Nonstationary supercharges are integrals of motion.
  add("Qtilde_plus_integral_of_motion", "i dQ~+/dt + [Q~+, H] = 0", motion(qtp, h));
  add("Qtilde_minus_integral_of_motion", "i dQ~-/dt + [Q~-, H] = 0", motion(qtm, h));

  // Superalgebra.
  add("Qtilde_plus_nilpotent", "{Q~+, Q~+} = 0", anticommutator(qtp, qtp));
  add("Qtilde_minus_nilpotent", "{Q~-, Q~-} = 0", anticommutator(qtm, qtm));
  add("superalgebra", "{Q~+, Q~-} - H~ = 0", anticommutator(qtp, qtm) - ht);
  add("Htilde_integral_of_motion", "i dH~/dt + [H~, H] = 0", motion(ht, h));
  add("Lz_integral_of_motion", "i dLz/dt + [Lz, H] = 0", motion(lz, h));
  add("Sz_integral_of_motion", "i dSz/dt + [Sz, H] = 0", motion(sz, h));

  // Extension by Lz, Sz.
  add("tilde_plus_Lz", "[pi~+, Lz] + pi~+ = 0", commutator(tp, lz) + tp);
  add("tilde_minus_Lz", "[pi~-, Lz] - pi~- = 0", commutator(tm, lz) - tm);
  add("Qtilde_plus_Lz", "[Q~+, Lz] - Q~+ = 0", commutator(qtp, lz) - qtp);
  add("Qtilde_minus_Lz", "[Q~-, Lz] + Q~- = 0", commutator(qtm, lz) + qtm);
  add("Qtilde_plus_Sz", "[Q~+, Sz] + Q~+ = 0", commutator(qtp, sz) + qtp);
  add("Qtilde_minus_Sz", "[Q~-, Sz] - Q~- = 0", commutator(qtm, sz) - qtm);
  add("Lz_commutes_Htilde", "[Lz, H~] = 0", commutator(lz, ht));
  add("Sz_commutes_Htilde", "[Sz, H~] = 0", commutator(sz, ht));
  add("Sz_commutes_Lz", "[Sz, Lz] = 0", commutator(sz, lz));
  add("Jz_commutes_Qtilde_plus", "[Jz, Q~+] = 0", commutator(jz, qtp));
  add("Jz_commutes_Qtilde_minus", "[Jz, Q~-] = 0", commutator(jz, qtm));
  add("Jz_commutes_Htilde", "[Jz, H~] = 0", commutator(jz, ht));
  add("Jz_commutes_Lz", "[Jz, Lz] = 0", commutator(jz, lz));
  add("Jz_commutes_Sz", "[Jz, Sz] = 0", commutator(jz, sz));

  // Wronskian form of [pi~-, pi~+] and its normalization.
  add("tilde_commutator_wronskian", "[pi~-, pi~+] - i(f f*' - f* f') = 0",
      commutator(tm, tp) - scalar(i_unit() * wr));
  add("tilde_commutator_normalized", "[pi~-, pi~+] - 2 = 0  (W = -2i)",
      (commutator(tm, tp) - C(2) * one).reduce_wronskian());
  add("btilde_commutator", "[b~-, b~+] - 1 = 0  (W = -2i)",
      (commutator(btm, btp) - one).reduce_wronskian());

  // Ladder integrals of motion.
  add("bplus_definition", "b+ - exp(2i Omega) b~+ = 0", bp - C::E1(2) * btp);
  add("bminus_definition", "b- - exp(-2i Omega) b~- = 0", bm - C::E1(-2) * btm);
  add("bplus_integral_of_motion", "i db+/dt + [b+, H] = 0", motion(bp, h));
  add("bminus_integral_of_motion", "i db-/dt + [b-, H] = 0", motion(bm, h));
  add("ladder_commutator", "[b-, b+] - 1 = 0  (W = -2i)", (commutator(bm, bp) - one).reduce_wronskian());
  add("bplus_Lz", "[b+, Lz] + b+ = 0", commutator(bp, lz) + bp);
  add("bminus_Lz", "[b-, Lz] - b- = 0", commutator(bm, lz) - bm);

  // H~ in ladder form.
  add("Htilde_ladder_form", "H~ - b~+ b~- - s+ s- = 0  (W = -2i)",
      (ht - btp * btm - spsm).reduce_wronskian());
  add("Htilde_spin_form", "H~ - b~+ b~- - Sz - 1/2 = 0  (W = -2i)",
      (ht - btp * btm - sz - C::rational(1, 2) * one).reduce_wronskian());
  add("Htilde_integral_ladder_form", "H~ - b+ b- - Sz - 1/2 = 0  (W = -2i)",
      (ht - bp * bm - sz - C::rational(1, 2) * one).reduce_wronskian());

  // Supercharges in ladder notation.
  add("Qtilde_plus_ladder", "Q~+ - b~- s+ = 0", qtp - btm * sp);
  add("Qtilde_minus_ladder", "Q~- - b~+ s- = 0", qtm - btp * sm);
  add("Qtilde_plus_integral_ladder", "Q~+ - exp(2i Omega) b- s+ = 0", qtp - C::E1(2) * (bm * sp));
  add("Qtilde_minus_integral_ladder", "Q~- - exp(-2i Omega) b+ s- = 0", qtm - C::E1(-2) * (bp * sm));

  // Hermitian structure.
  add("adjoint_pi", "(pi-)^dagger - pi+ = 0", pm.adjoint() - pp);
  add("adjoint_pi_tilde", "(pi~-)^dagger - pi~+ = 0", tm.adjoint() - tp);
  add("adjoint_Qtilde", "(Q~+)^dagger - Q~- = 0", qtp.adjoint() - qtm);
  add("adjoint_H", "H^dagger - H = 0", h.adjoint() - h);
  add("adjoint_Htilde", "H~^dagger - H~ = 0", ht.adjoint() - ht);
  add("adjoint_Lz", "Lz^dagger - Lz = 0", lz.adjoint() - lz);
  add("adjoint_bminus", "(b-)^dagger - b+ = 0", bm.adjoint() - bp);
  return out;
}

std::vector<IdentityResult> verify_suite() {
  std::vector<IdentityResult> results;
  for (auto& id : identity_list()) {
    IdentityResult r;
    r.name = id.name;
    r.statement = id.statement;
    r.surviving_terms = id.residual.term_count();
    r.passed = id.residual.is_zero();
    if (!r.passed) r.residual = id.residual.to_string();
    results.push_back(std::move(r));
  }
  return results;
}

std::string to_json_lines(const std::vector<IdentityResult>& results) {
  std::string out;
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["status"] = r.passed ? "pass" : "fail";
    j["surviving_terms"] = r.surviving_terms;
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_text_report(const std::vector<IdentityResult>& results) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.statement << "]";
    if (!r.passed) out << "  surviving terms: " << r.surviving_terms << "\n    " << r.residual;
    out << "\n";
    if (r.passed) ++passed;
  }
  out << passed << "/" << results.size() << " identities reduce to zero\n";
  return out.str();
}

}  // namespace susy::symbolic
