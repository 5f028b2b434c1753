#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "susy/errors.hpp"

using namespace susy;
using testing::I;

namespace {

// Closed form c1 exp(-i w t) + c2 exp(i w t) and its derivative.
struct Oscillator {
  cplx c1, c2;
  double w;
  cplx f(double t) const { return c1 * std::exp(-I * w * t) + c2 * std::exp(I * w * t); }
  cplx df(double t) const { return -I * w * c1 * std::exp(-I * w * t) + I * w * c2 * std::exp(I * w * t); }
};

double max_error(const AuxSolution& sol, const Oscillator& o, double t0, double t1) {
  double err = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = t0 + (t1 - t0) * k / 1000.0;
    const AuxState s = sol.at(t);
    err = std::max({err, std::abs(s.f - o.f(t)), std::abs(s.f_dot - o.df(t))});
  }
  return err;
}

}  // namespace

TEST_SUITE("aux_ode") {

TEST_CASE("constant field gives exp(i t)") {
  const auto sol = solve(FieldProfile::constant(1.0, 0.0), PhysicalConfig{1.0}, 0.0, 10.0);
  CHECK(max_error(sol, {0.0, 1.0, 1.0}, 0.0, 10.0) <= 1e-9);
  // Omega = e B t.
  CHECK(sol.at(7.5).omega == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("zero field keeps f constant") {
  const auto sol = solve(FieldProfile::constant(0.0, 0.0), PhysicalConfig{1.0}, 0.0, 5.0, 1.0, 0.0);
  for (double t : {0.0, 1.0, 2.5, 5.0}) {
    CHECK(std::abs(sol.at(t).f - 1.0) < 1e-14);
    CHECK(std::abs(sol.at(t).f_dot) < 1e-14);
  }
}

TEST_CASE("linear_D field matches the two-exponential closed form") {
  const double w = std::numbers::sqrt2;
  const Oscillator o{(1.0 - 1.0 / w) / 2.0, (1.0 + 1.0 / w) / 2.0, w};
  CHECK(std::abs(o.f(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(o.df(0.0) - I) < 1e-15);
  const auto sol = solve(FieldProfile::linear_D(1.0, 1.0), PhysicalConfig{1.0}, 0.0, 10.0);
  CHECK(max_error(sol, o, 0.0, 10.0) <= 1e-9);
}

TEST_CASE("analytic constant branches") {
  const PhysicalConfig cfg{1.0};
  const auto a = analytic_constant(cfg, 1.0, 0.0, 0.0, 1.0);
  CHECK(a.is_closed_form());
  for (double t : {0.0, 0.7, 3.0}) {
    CHECK(std::abs(a.at(t).f - std::exp(I * t)) < 1e-14);
    CHECK(std::abs(a.at(t).wronskian() - cplx(0, -2)) < 1e-14);
  }

  const auto b = analytic_constant(cfg, 1.0, 1.0, 0.3, 0.8);
  // f'' = -w^2 f with w^2 = 2.
  for (double t : {0.2, 1.0}) {
    const double h = 1e-3;
    const cplx f2 = (b.at(t + h).f - 2.0 * b.at(t).f + b.at(t - h).f) / (h * h);
    CHECK(std::abs(f2 + 2.0 * b.at(t).f) < 1e-5);
  }

  const auto c = analytic_constant(cfg, 1.0, 0.0, 1.0, 0.0);
  CHECK(std::abs(c.initial_wronskian() - cplx(0, 2)) < 1e-14);
  CHECK_THROWS_AS(normalize_wronskian(c), BranchError);

  CHECK_THROWS_AS(analytic_constant(cfg, 0.0, 0.0, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(analytic_constant(cfg, 1.0, 0.0, 0.0, 0.0), PreconditionError);
}

TEST_CASE("hyperbolic continuation for negative omega squared") {
  // (eB)^2 + e D' = 1 - 2 = -1: f'' = f.
  const auto s = analytic_constant(PhysicalConfig{1.0}, 1.0, -2.0, 1.0, 0.5);
  const double h = 1e-3;
  for (double t : {0.1, 0.9}) {
    const cplx f2 = (s.at(t + h).f - 2.0 * s.at(t).f + s.at(t - h).f) / (h * h);
    CHECK(std::abs(f2 - s.at(t).f) < 1e-5);
  }
}

TEST_CASE("normalize_wronskian examples") {
  const PhysicalConfig cfg{1.0};
  const auto doubled = analytic_constant(cfg, 1.0, 0.0, 0.0, 2.0);
  CHECK(std::abs(doubled.initial_wronskian() - cplx(0, -8)) < 1e-13);
  const auto n = normalize_wronskian(doubled);
  CHECK(std::abs(n.at(1.1).f - std::exp(I * 1.1)) < 1e-13);
  CHECK(is_normalized(n));

  const auto flat = solve(FieldProfile::constant(0.0, 0.0), cfg, 0.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(normalize_wronskian(flat), NormalizationError);

  const auto canon = solve(FieldProfile::constant(1.0, 0.0), cfg, 0.0, 1.0);
  CHECK(canon.initial_wronskian() == cplx(0, -2));
  const auto same = normalize_wronskian(canon);
  CHECK(same.at(0.5).f == canon.at(0.5).f);
}

TEST_CASE("context_at examples") {
  const auto sol = testing::landau_branch();
  const TimeContext c0 = context_at(*sol, 0.0);
  REQUIRE(c0.aux);
  CHECK(std::abs(c0.aux->f1 - 1.0) < 1e-15);
  CHECK(std::abs(c0.aux->f2_a_star - I) < 1e-15);
  const TimeContext cpi = context_at(*sol, std::numbers::pi);
  CHECK(cpi.aux->omega == doctest::Approx(std::numbers::pi));
  CHECK(std::abs(cpi.aux->f1 - 1.0) < 1e-14);

  const auto free = solve(FieldProfile::constant(0.0, 0.0), PhysicalConfig{1.0}, 0.0, 1.0, 1.0, 0.0);
  const TimeContext cf = context_at(free, 0.5);
  CHECK(std::abs(cf.aux->f1 - 1.0) < 1e-14);
  CHECK(std::abs(cf.aux->f2_a_star) < 1e-14);

  CHECK_THROWS_AS(context_at(free, 1.5), DomainError);
}

TEST_CASE("Wronskian drift on sinusoidal profiles") {
  const PhysicalConfig cfg{1.0};
  const double tol = 1e-12;
  for (auto [Bm, Ba, w, Dm, Da] : {std::array{1.0, 0.5, 1.0, 0.0, 0.0}, std::array{1.5, 0.8, 2.0, 0.2, 0.4},
                                   std::array{0.7, 0.3, 0.5, -0.3, 0.6}}) {
    SolveOptions opts;
    opts.tol = tol;
    const auto sol = solve(FieldProfile::sinusoidal(Bm, Ba, w, Dm, Da), cfg, 0.0, 10.0, kCanonicalF0,
                           kCanonicalF0Dot, opts);
    CHECK(sol.max_wronskian_drift() <= 100.0 * tol);
  }
}

TEST_CASE("normalized f has Im(f'/f) |f|^2 = 1") {
  const auto sol = testing::solved(FieldProfile::sinusoidal(1.0, 0.5, 1.0, 0.2, 0.3), 0.0, 6.0);
  for (const auto& s : sol->nodes()) {
    CHECK(std::abs(s.f) > 0.0);
    CHECK((s.f_dot / s.f).imag() * std::norm(s.f) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("numeric and closed form agree") {
  const PhysicalConfig cfg{1.0};
  const double tol = 1e-12;
  SolveOptions opts;
  opts.tol = tol;
  for (double rate : {0.0, 1.0, 3.0}) {
    const auto closed = analytic_constant(cfg, 1.0, rate, 0.4, 0.9);
    const AuxState s0 = closed.at(0.0);
    const auto num = solve(FieldProfile::linear_D(1.0, rate), cfg, 0.0, 3.0, s0.f, s0.f_dot, opts);
    double err = 0.0;
    for (int k = 0; k <= 300; ++k) {
      const double t = 0.01 * k;
      err = std::max(err, std::abs(num.at(t).f - closed.at(t).f));
    }
    CHECK(err <= 100.0 * tol);
  }
}

TEST_CASE("first equation of the f1/f2 system holds at every node") {
  const auto sol = testing::solved(FieldProfile::sinusoidal(1.0, 0.5, 1.3, 0.1, 0.4), 0.0, 5.0);
  for (const auto& s : sol->nodes()) {
    CHECK(std::abs(context_at(*sol, s.t).first_system_residual()) <= 1e-10);
  }
}

TEST_CASE("solver preconditions") {
  const PhysicalConfig cfg{1.0};
  const auto p = FieldProfile::constant(1.0, 0.0);
  CHECK_THROWS_AS(solve(p, cfg, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(solve(p, cfg, 0.0, 1.0, 0.0, 0.0), PreconditionError);
  const FieldProfile tab = TabulatedField({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
  CHECK_THROWS_AS(solve(tab, cfg, 0.0, 3.0), DomainError);
}

TEST_CASE("trajectory csv") {
  const auto sol = solve(FieldProfile::constant(1.0, 0.0), PhysicalConfig{1.0}, 0.0, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "susy_aux.csv";
  sol.write_csv(path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,Re_f,Im_f,Re_fdot,Im_fdot,Omega,Re_W,Im_W");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == sol.nodes().size());
  std::filesystem::remove(path);
}

}  // TEST_SUITE
