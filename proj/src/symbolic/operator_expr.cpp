#include "susy/symbolic/operator_expr.hpp"

#include "susy/errors.hpp"

namespace susy::symbolic {

namespace {

// n (n-1) ... (n-k+1)
Rational falling(int n, int k) {
  Rational r(1);
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

Rational choose(int n, int k) { return falling(n, k) / falling(k, k); }

}  // namespace

OperatorExpr OperatorExpr::term(const OpMonomial& m, const CoeffExpr& c) {
  if (m.row > 1 || m.col > 1 || m.a < 0 || m.b < 0 || m.p < 0 || m.q < 0) {
    throw Error("symbolic: malformed operator monomial");
  }
  OperatorExpr out;
  out.add_term(m, c);
  return out;
}

OperatorExpr OperatorExpr::identity() { return spin(SpinFactor::One); }

OperatorExpr OperatorExpr::scalar(const CoeffExpr& c) { return c * identity(); }

OperatorExpr OperatorExpr::z() { return term({1, 0, 0, 0, 0, 0}, 1) + term({1, 0, 0, 0, 1, 1}, 1); }
OperatorExpr OperatorExpr::zbar() { return term({0, 1, 0, 0, 0, 0}, 1) + term({0, 1, 0, 0, 1, 1}, 1); }
OperatorExpr OperatorExpr::dz() { return term({0, 0, 1, 0, 0, 0}, 1) + term({0, 0, 1, 0, 1, 1}, 1); }
OperatorExpr OperatorExpr::dzbar() { return term({0, 0, 0, 1, 0, 0}, 1) + term({0, 0, 0, 1, 1, 1}, 1); }

OperatorExpr OperatorExpr::spin(SpinFactor s) {
  const OpMonomial up{0, 0, 0, 0, 0, 0}, dn{0, 0, 0, 0, 1, 1};
  switch (s) {
    case SpinFactor::One: return term(up, 1) + term(dn, 1);
    case SpinFactor::SigmaZ: return term(up, 1) + term(dn, -1);
    case SpinFactor::SigmaPlus: return term({0, 0, 0, 0, 0, 1}, 1);
    case SpinFactor::SigmaMinus: return term({0, 0, 0, 0, 1, 0}, 1);
    case SpinFactor::SigmaPlusSigmaMinus: return term(up, 1);
    case SpinFactor::SigmaMinusSigmaPlus: return term(dn, 1);
  }
  return {};
}

void OperatorExpr::add_term(const OpMonomial& m, const CoeffExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

OperatorExpr operator*(const CoeffExpr& c, const OperatorExpr& a) {
  OperatorExpr out;
  if (c.is_zero()) return out;
  for (const auto& [m, x] : a.terms_) out.add_term(m, c * x);
  return out;
}

OperatorExpr operator*(const OperatorExpr& lhs, const OperatorExpr& rhs) {
  OperatorExpr out;
  for (const auto& [m1, c1] : lhs.terms_) {
    for (const auto& [m2, c2] : rhs.terms_) {
      if (m1.col != m2.row) continue;
      const CoeffExpr c = c1 * c2;
      if (c.is_zero()) continue;
      // d_z^p z^c = sum_j C(p, j) c!/(c-j)! z^(c-j) d_z^(p-j), same for the conjugate pair.
      for (int j = 0; j <= std::min(m1.p, m2.a); ++j) {
        const Rational wj = choose(m1.p, j) * falling(m2.a, j);
        for (int l = 0; l <= std::min(m1.q, m2.b); ++l) {
          const Rational w = wj * choose(m1.q, l) * falling(m2.b, l);
          OpMonomial m{m1.a + m2.a - j, m1.b + m2.b - l, m1.p - j + m2.p, m1.q - l + m2.q, m1.row,
                       m2.col};
          out.add_term(m, CoeffExpr(GaussianRational(w)) * c);
        }
      }
    }
  }
  return out;
}

OperatorExpr OperatorExpr::map_coeffs(const std::function<CoeffExpr(const CoeffExpr&)>& fn) const {
  OperatorExpr out;
  for (const auto& [m, c] : terms_) out.add_term(m, fn(c));
  return out;
}

OperatorExpr OperatorExpr::time_derivative() const {
  return map_coeffs([](const CoeffExpr& c) { return c.derivative(); });
}

OperatorExpr OperatorExpr::reduce_wronskian() const {
  return map_coeffs([](const CoeffExpr& c) { return c.reduce_wronskian(); });
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr out;
  auto power = [](const OperatorExpr& x, int k) {
    OperatorExpr r = identity();
    for (int j = 0; j < k; ++j) r = r * x;
    return r;
  };
  for (const auto& [m, c] : terms_) {
    // (c z^a z*^b dz^p dz*^q E_rc)^dagger = conj(c) (-dz*)^p (-dz)^q z*^a z^b E_cr
    const int sign = ((m.p + m.q) % 2 == 0) ? 1 : -1;
    OperatorExpr t = power(dzbar(), m.p) * power(dz(), m.q) * power(zbar(), m.a) * power(z(), m.b);
    OperatorExpr spin_part = term({0, 0, 0, 0, m.col, m.row}, 1);
    out += (CoeffExpr(sign) * c.conj()) * (t * spin_part);
  }
  return out;
}

OperatorExpr OperatorExpr::block(int row, int col) const {
  OperatorExpr out;
  for (const auto& [m, c] : terms_) {
    if (m.row != row || m.col != col) continue;
    OpMonomial k = m;
    k.row = k.col = 0;
    out.add_term(k, c);
  }
  return out;
}

OperatorExpr OperatorExpr::placed(int row, int col) const {
  OperatorExpr out;
  for (const auto& [m, c] : terms_) {
    if (m.row != 0 || m.col != 0) throw Error("symbolic: placed() expects a (0,0) block");
    OpMonomial k = m;
    k.row = static_cast<std::uint8_t>(row);
    k.col = static_cast<std::uint8_t>(col);
    out.add_term(k, c);
  }
  return out;
}

std::string to_string(const OpMonomial& m) {
  std::string out;
  auto append = [&out](const std::string& name, int k) {
    if (k == 0) return;
    if (!out.empty()) out += " ";
    out += k == 1 ? name : name + "^" + std::to_string(k);
  };
  append("z", m.a);
  append("z*", m.b);
  append("dz", m.p);
  append("dz*", m.q);
  if (!out.empty()) out += " ";
  out += "E" + std::to_string(m.row) + std::to_string(m.col);
  return out;
}

std::string OperatorExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += "\n + ";
    out += "(" + c.to_string() + ") " + symbolic::to_string(m);
  }
  return out;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b + b * a; }

}  // namespace susy::symbolic
