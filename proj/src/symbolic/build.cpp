#include "susy/symbolic/build.hpp"

namespace susy::symbolic {

namespace {

using C = CoeffExpr;
using O = OperatorExpr;

C minus_2i() { return C(GaussianRational(Rational(0), Rational(-2))); }
C half() { return C::rational(1, 2); }

C b_coeff(Orientation o) { return o == Orientation::Normal ? C::B() : -C::B(); }

O pi_minus(Orientation o) {
  const C a_star = C::D() - C::i() * b_coeff(o);
  return minus_2i() * O::dz() - (half() * C::e() * a_star) * O::zbar();
}

O pi_plus(Orientation o) {
  const C a = C::D() + C::i() * b_coeff(o);
  return minus_2i() * O::dzbar() - (half() * C::e() * a) * O::z();
}

O pi_tilde_minus() {
  const C g = C::f(1) + C::e() * C::D() * C::f();
  return C::E1(1) * (minus_2i() * C::f() * O::dz() - (half() * g) * O::zbar());
}

O pi_tilde_plus() {
  const C g = C::fbar(1) + C::e() * C::D() * C::fbar();
  return C::E1(-1) * (minus_2i() * C::fbar() * O::dzbar() - (half() * g) * O::z());
}

O sp() { return O::spin(SpinFactor::SigmaPlus); }
O sm() { return O::spin(SpinFactor::SigmaMinus); }
O p_up() { return O::spin(SpinFactor::SigmaPlusSigmaMinus); }
O p_dn() { return O::spin(SpinFactor::SigmaMinusSigmaPlus); }

}  // namespace

C field_a() { return C::D() + C::i() * C::B(); }
C field_a_star() { return C::D() - C::i() * C::B(); }

O h_plus() { return pi_minus(Orientation::Normal) * pi_plus(Orientation::Normal); }
O h_minus() { return pi_plus(Orientation::Normal) * pi_minus(Orientation::Normal); }

C coeff_f1() { return C::f() * C::E1(1); }
C coeff_G() { return (C::e() * C::D() * C::f() + C::f(1)) * C::E1(1); }

O build(OperatorKind kind, Orientation o) {
  switch (kind) {
    case OperatorKind::Identity: return O::identity();
    case OperatorKind::PiPlus: return pi_plus(o);
    case OperatorKind::PiMinus: return pi_minus(o);
    case OperatorKind::PiTildePlus: return pi_tilde_plus();
    case OperatorKind::PiTildeMinus: return pi_tilde_minus();
    case OperatorKind::QPlus: return C::inv_sqrt2() * (pi_minus(o) * sp());
    case OperatorKind::QMinus: return C::inv_sqrt2() * (pi_plus(o) * sm());
    case OperatorKind::QTildePlus: return C::inv_sqrt2() * (pi_tilde_minus() * sp());
    case OperatorKind::QTildeMinus: return C::inv_sqrt2() * (pi_tilde_plus() * sm());
    case OperatorKind::H: {
      const O pm = pi_minus(o), pp = pi_plus(o);
      return pm * pp * p_up() + pp * pm * p_dn();
    }
    case OperatorKind::HTilde: {
      const O tm = pi_tilde_minus(), tp = pi_tilde_plus();
      return half() * (tm * tp * p_up() + tp * tm * p_dn());
    }
    case OperatorKind::Lz: return O::z() * O::dz() - O::zbar() * O::dzbar();
    case OperatorKind::Sz: return half() * O::spin(SpinFactor::SigmaZ);
    case OperatorKind::Jz: return build(OperatorKind::Lz) + build(OperatorKind::Sz);
    case OperatorKind::BTildePlus: return C::inv_sqrt2() * pi_tilde_plus();
    case OperatorKind::BTildeMinus: return C::inv_sqrt2() * pi_tilde_minus();
    case OperatorKind::BPlus: return (C::E1(2) * C::inv_sqrt2()) * pi_tilde_plus();
    case OperatorKind::BMinus: return (C::E1(-2) * C::inv_sqrt2()) * pi_tilde_minus();
  }
  return {};
}

}  // namespace susy::symbolic
