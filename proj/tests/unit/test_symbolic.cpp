#include <doctest.h>

#include <json.hpp>

#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "susy/symbolic/build.hpp"
#include "susy/symbolic/suite.hpp"

using namespace susy;
using namespace susy::symbolic;
using cplx = std::complex<double>;

namespace {

const CoeffExpr kI = CoeffExpr::i();
const CoeffExpr kHalf = CoeffExpr::rational(1, 2);

CoeffExpr random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-3, 3), pick(0, 6);
  CoeffExpr c = GaussianRational(small(rng), small(rng));
  const std::vector<CoeffExpr> atoms{CoeffExpr::e(), CoeffExpr::B(), CoeffExpr::D(1), CoeffExpr::f(),
                                     CoeffExpr::fbar(1), CoeffExpr::E1(1), CoeffExpr::E1(-1)};
  for (int k = 0; k < 2; ++k) c += CoeffExpr(GaussianRational(small(rng), 0)) * atoms[pick(rng) % atoms.size()];
  return c;
}

OperatorExpr random_op(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 2), bit(0, 1);
  OperatorExpr out;
  for (int k = 0; k < 3; ++k) {
    OpMonomial m{deg(rng), deg(rng), deg(rng), deg(rng), static_cast<std::uint8_t>(bit(rng)),
                 static_cast<std::uint8_t>(bit(rng))};
    out += OperatorExpr::term(m, random_coeff(rng));
  }
  return out;
}

OperatorExpr sigma_plus() { return OperatorExpr::spin(SpinFactor::SigmaPlus); }

}  // namespace

TEST_SUITE("symbolic") {

TEST_CASE("pi- in normal form") {
  // -2i d_z - (e/2)(D - iB) z*
  const OperatorExpr expected = CoeffExpr(GaussianRational(0, -2)) * OperatorExpr::dz() -
                                (kHalf * CoeffExpr::e() * (CoeffExpr::D() - kI * CoeffExpr::B())) *
                                    OperatorExpr::zbar();
  CHECK(build(OperatorKind::PiMinus) == expected);
}

TEST_CASE("Lz in normal form") {
  const OperatorExpr expected =
      OperatorExpr::z() * OperatorExpr::dz() - OperatorExpr::zbar() * OperatorExpr::dzbar();
  CHECK(build(OperatorKind::Lz) == expected);
}

TEST_CASE("Q~+ in normal form") {
  const CoeffExpr f = CoeffExpr::f(), f1 = CoeffExpr::f(1);
  const OperatorExpr pt = CoeffExpr(GaussianRational(0, -2)) * f * OperatorExpr::dz() -
                          (kHalf * (f1 + CoeffExpr::e() * CoeffExpr::D() * f)) * OperatorExpr::zbar();
  const OperatorExpr expected = (CoeffExpr::inv_sqrt2() * CoeffExpr::E1()) * (pt * sigma_plus());
  CHECK(build(OperatorKind::QTildePlus) == expected);
}

TEST_CASE("sigma+ maps spin down to spin up") {
  const auto sp = sigma_plus();
  REQUIRE(sp.term_count() == 1);
  CHECK(sp.terms().begin()->first.row == 0);
  CHECK(sp.terms().begin()->first.col == 1);
  const auto sz = OperatorExpr::spin(SpinFactor::SigmaZ);
  CHECK(sz == OperatorExpr::spin(SpinFactor::SigmaPlusSigmaMinus) - OperatorExpr::spin(SpinFactor::SigmaMinusSigmaPlus));
  CHECK((sp * sp).is_zero());
  CHECK(sp * OperatorExpr::spin(SpinFactor::SigmaMinus) + OperatorExpr::spin(SpinFactor::SigmaMinus) * sp ==
        OperatorExpr::identity());
}

TEST_CASE("[pi-, pi+] = -2 e B") {
  const auto c = commutator(build(OperatorKind::PiMinus), build(OperatorKind::PiPlus));
  CHECK(c == OperatorExpr::scalar(CoeffExpr(-2) * CoeffExpr::e() * CoeffExpr::B()));
}

TEST_CASE("Q~+ squares to zero") {
  const auto q = build(OperatorKind::QTildePlus);
  CHECK(anticommutator(q, q).is_zero());
  const auto qm = build(OperatorKind::QTildeMinus);
  CHECK(anticommutator(qm, qm).is_zero());
}

TEST_CASE("[pi~-, pi~+] is the Wronskian") {
  const auto c = commutator(build(OperatorKind::PiTildeMinus), build(OperatorKind::PiTildePlus));
  const CoeffExpr w = CoeffExpr::f() * CoeffExpr::fbar(1) - CoeffExpr::fbar() * CoeffExpr::f(1);
  CHECK(c == OperatorExpr::scalar(kI * w));
  CHECK(c.reduce_wronskian() == OperatorExpr::scalar(CoeffExpr(2)));
}

TEST_CASE("time derivative rules") {
  CHECK(CoeffExpr::E1().derivative() == kI * CoeffExpr::e() * CoeffExpr::B() * CoeffExpr::E1());
  const CoeffExpr e = CoeffExpr::e();
  CHECK(CoeffExpr::f(1).derivative() ==
        -((e * e * CoeffExpr::B() * CoeffExpr::B() + e * CoeffExpr::D(1)) * CoeffExpr::f()));
  const OperatorExpr expected =
      -(kHalf * e * (CoeffExpr::D(1) - kI * CoeffExpr::B(1))) * OperatorExpr::zbar();
  CHECK(build(OperatorKind::PiMinus).time_derivative() == expected);
  // B' and D'' stay opaque.
  CHECK(CoeffExpr::B(1).derivative() == CoeffExpr::B(2));
  CHECK(CoeffExpr::D(1).derivative() == CoeffExpr::D(2));
}

TEST_CASE("E1 times its conjugate is one") {
  CHECK(CoeffExpr::E1() * CoeffExpr::E1().conj() == CoeffExpr(1));
  CHECK(CoeffExpr::sqrt2() * CoeffExpr::sqrt2() == CoeffExpr(2));
  CHECK(CoeffExpr::sqrt2() * CoeffExpr::inv_sqrt2() == CoeffExpr(1));
}

TEST_CASE("identity suite reduces to zero") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = verify_suite();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
  CHECK(results.size() >= 14);
  std::set<std::string> names;
  for (const auto& r : results) {
    CHECK_MESSAGE(r.passed, r.name << ": " << r.residual);
    CHECK(r.surviving_terms == 0);
    names.insert(r.name);
  }
  CHECK(names.size() == results.size());
  for (const char* n : {"stationary_superalgebra", "momentum_commutator", "tilde_minus_evolution",
                        "block_difference", "f_system_first", "f_system_second", "superalgebra",
                        "ladder_commutator", "Htilde_ladder_form", "Qtilde_plus_integral_of_motion"}) {
    CHECK_MESSAGE(names.count(n) == 1, n);
  }
}

TEST_CASE("machine-readable report") {
  const auto results = verify_suite();
  std::istringstream in(to_json_lines(results));
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("status") == "pass");
    CHECK(j.at("surviving_terms") == 0);
    CHECK(j.at("name").is_string());
    ++rows;
  }
  CHECK(rows == results.size());
  const std::string text = to_text_report(results);
  CHECK(text.find(std::to_string(results.size()) + "/" + std::to_string(results.size()) +
                  " identities reduce to zero") != std::string::npos);
}

TEST_CASE("surviving terms are reported") {
  // A deliberately wrong identity: [pi-, pi+] + 2eB + 1.
  Identity wrong{"wrong", "", commutator(build(OperatorKind::PiMinus), build(OperatorKind::PiPlus)) +
                                  OperatorExpr::scalar(CoeffExpr(2) * CoeffExpr::e() * CoeffExpr::B()) +
                                  OperatorExpr::identity()};
  CHECK(wrong.residual.term_count() == 2);  // one per spin block
  CHECK_FALSE(wrong.residual.to_string().empty());
}

TEST_CASE("multiplication is associative") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const auto a = random_op(rng), b = random_op(rng), c = random_op(rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("time derivative obeys the product rule") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 40; ++k) {
    const auto a = random_op(rng), b = random_op(rng);
    CHECK((a * b).time_derivative() == a.time_derivative() * b + a * b.time_derivative());
  }
  for (int k = 0; k < 40; ++k) {
    const auto a = random_coeff(rng), b = random_coeff(rng);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
}

TEST_CASE("adjoint is an involutive anti-automorphism") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    const auto a = random_op(rng), b = random_op(rng);
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
    CHECK(a.adjoint().adjoint() == a);
  }
  CHECK(build(OperatorKind::PiTildeMinus).adjoint() == build(OperatorKind::PiTildePlus));
  CHECK(build(OperatorKind::PiMinus).adjoint() == build(OperatorKind::PiPlus));
  CHECK(build(OperatorKind::QTildePlus).adjoint() == build(OperatorKind::QTildeMinus));
}

TEST_CASE("coefficient conjugation is an involution") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_coeff(rng), b = random_coeff(rng);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("numerical evaluation of coefficients") {
  SymbolValues v;
  v.e = 2.0;
  v.B = {0.5};
  v.D = {0.25, 1.0};
  v.f = {0.3, 0.4};
  v.f_dot = {-1.0, 2.0};
  v.e1 = std::polar(1.0, 0.7);
  const CoeffExpr c = CoeffExpr::e() * CoeffExpr::D() * CoeffExpr::f() + CoeffExpr::f(1);
  const cplx expected = 2.0 * 0.25 * cplx(0.3, 0.4) + cplx(-1.0, 2.0);
  CHECK(std::abs(c.evaluate(v) - expected) < 1e-15);
  CHECK(std::abs(CoeffExpr::fbar().evaluate(v) - cplx(0.3, -0.4)) < 1e-15);
  CHECK(std::abs(CoeffExpr::E1(-2).evaluate(v) - std::polar(1.0, -1.4)) < 1e-15);
}

TEST_CASE("tilde commutator fixes the relative sign") {
  // f1 = f E1, G = e f2 a*: i(f1 conj(G) - conj(f1) G) holds, the + combination does not.
  const auto c = commutator(build(OperatorKind::PiTildeMinus), build(OperatorKind::PiTildePlus));
  const CoeffExpr f1 = coeff_f1(), G = coeff_G();
  const auto minus_form = OperatorExpr::scalar(kI * (f1 * G.conj() - f1.conj() * G));
  const auto plus_form = OperatorExpr::scalar(kI * (f1 * G.conj() + f1.conj() * G));
  CHECK((c - minus_form).is_zero());
  CHECK_FALSE((c - plus_form).is_zero());
}

TEST_CASE("half-scaled Hamiltonian breaks the evolution identity") {
  // i d(pi~-)/dt + pi~- H- - H+ pi~- with H+ = pi- pi+, H- = pi+ pi-.
  const auto pt = build(OperatorKind::PiTildeMinus);
  const auto residual = [&](const CoeffExpr& scale) {
    return (kI * pt.time_derivative() + scale * (pt * h_minus()) - scale * (h_plus() * pt));
  };
  CHECK(residual(CoeffExpr(1)).is_zero());
  CHECK_FALSE(residual(kHalf).is_zero());
}

TEST_CASE("stationary superalgebra") {
  const auto qp = build(OperatorKind::QPlus), qm = build(OperatorKind::QMinus);
  CHECK((CoeffExpr(2) * anticommutator(qp, qm) - build(OperatorKind::H)).is_zero());
  CHECK(anticommutator(qp, qp).is_zero());
}

TEST_CASE("reversed field flips B") {
  const auto a = build(OperatorKind::PiMinus, Orientation::Reversed);
  const auto b = build(OperatorKind::PiMinus).map_coeffs([](const CoeffExpr& c) {
    // Substitute B -> -B term by term.
    CoeffExpr out;
    for (const auto& [m, v] : c.terms()) {
      int sign = 1;
      for (const auto& [s, p] : m.factors) {
        if (s.base == Base::B && p % 2 == 1) sign = -sign;
      }
      out += CoeffExpr::monomial(m, sign > 0 ? v : -v);
    }
    return out;
  });
  CHECK(a == b);
}

}  // TEST_SUITE
