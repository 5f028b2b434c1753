#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "helpers.hpp"
#include "susy/errors.hpp"
#include "susy/propagator.hpp"
#include "susy/solutions.hpp"

using namespace susy;
using testing::I;

TEST_SUITE("propagator") {

TEST_CASE("static zero mode stays put") {
  const auto profile = FieldProfile::constant(1.0, 0.0);
  const PhysicalConfig cfg{1.0};
  const GridSpec g{64, 24.0};
  const auto psi0 = ground_state(0, 0.5, *testing::landau_branch(), 0.0, g);
  CHECK(1e-3 <= 0.5 * stability_bound(g, profile, cfg, 0.0, 1.0));
  SpinorField psi = psi0;
  for (int k = 0; k < 1000; ++k) psi = step(psi, profile, cfg, 1e-3);
  CHECK(psi.t == doctest::Approx(1.0));
  CHECK((psi - psi0).norm() <= 1e-9);
}

TEST_CASE("free Gaussian spreads as in closed form") {
  // i psi_t = -Laplacian psi: exp(-r^2/4) -> (1/(1 + i t)) exp(-r^2 / (4 (1 + i t))).
  const auto profile = FieldProfile::constant(0.0, 0.0);
  const PhysicalConfig cfg{1.0};
  const GridSpec g{64, 24.0};
  auto exact = [&](double t) {
    const cplx s = 1.0 + I * t;
    return testing::up_only(g, t, [s](cplx z) { return std::exp(-std::norm(z) / (4.0 * s)) / s; });
  };
  SpinorField psi = exact(0.0);
  const double n0 = psi.norm();
  for (int k = 0; k < 500; ++k) psi = step(psi, profile, cfg, 1e-3);
  CHECK((psi - exact(0.5)).norm() / n0 <= 1e-6);
}

TEST_CASE("norm drift over 1000 steps") {
  const auto sol = testing::solved(FieldProfile::sinusoidal(1.0, 0.5, 1.0, 0.2, 0.3), 0.0, 1.0);
  const QuantumNumbers qn{1, -1, -0.5};
  const GridSpec g{64, 24.0};
  PropagationRun spec;
  spec.initial = eigenstate(qn, *sol, 0.0, g);
  spec.profile = sol->profile();
  spec.cfg = sol->config();
  spec.t1 = 1.0;
  spec.dt = 1e-3;
  spec.stride = 100;
  spec.observables = {Observable::Norm, Observable::Lz, Observable::Sz};
  const auto result = run(spec);
  CHECK(result.steps == 1000);
  CHECK(result.rows.size() == 11);
  CHECK(result.max_drift.at(Observable::Norm) <= 1e-8);
  CHECK(result.max_drift.at(Observable::Lz) <= 1e-8);
  CHECK(std::abs(result.rows.back().values.at(Observable::Lz) + 1.0) <= 1e-8);
}

TEST_CASE("eigenstate follows the generated solution") {
  const auto sol = testing::solved(FieldProfile::sinusoidal(1.0, 0.5, 1.0, 0.0, 0.0), 0.0, 0.5);
  const QuantumNumbers qn{1, 0, -0.5};
  const GridSpec g = recommend_grid(qn, *sol, 0.0, 0.5);
  const EigenState st(qn, sol, g);
  auto error_for = [&](double dt) {
    PropagationRun spec;
    spec.initial = st.at(0.0);
    spec.profile = sol->profile();
    spec.cfg = sol->config();
    spec.sol = sol;
    spec.t1 = 0.5;
    spec.dt = dt;
    spec.stride = 1000;
    spec.observables = {Observable::Norm};
    return (run(spec).final_state - st.at(0.5)).norm();
  };
  const double coarse = error_for(2e-3), fine = error_for(1e-3);
  CHECK(coarse <= 1e-6);
  CHECK(coarse / fine > 10.0);
}

TEST_CASE("integrals of motion along a superposition") {
  const std::vector<FieldProfile> profiles{FieldProfile::constant(1.0, 0.4), FieldProfile::linear_D(1.0, 0.3),
                                           FieldProfile::sinusoidal(1.0, 0.5, 1.0, 0.2, 0.3)};
  const std::vector<QuantumNumbers> qns{{1, 0, -0.5}, {0, -1, 0.5}, {2, -1, 0.5}};
  const std::vector<cplx> coeffs{{0.6, 0.1}, {-0.2, 0.5}, {0.3, -0.45}};
  for (const auto& p : profiles) {
    const auto sol = testing::solved(p, 0.0, 0.3);
    GridSpec g{16, 0.0};
    for (const auto& q : qns) {
      const auto r = recommend_grid(q, *sol, 0.0, 0.3);
      g.N = std::max(g.N, r.N);
      g.L = std::max(g.L, r.L);
    }
    SpinorField psi(g, 0.0);
    for (std::size_t k = 0; k < qns.size(); ++k) psi += coeffs[k] * eigenstate(qns[k], *sol, 0.0, g);
    PropagationRun spec;
    spec.initial = psi;
    spec.profile = p;
    spec.cfg = sol->config();
    spec.sol = sol;
    spec.t1 = 0.3;
    spec.dt = std::min(1e-3, 0.4 * stability_bound(g, p, spec.cfg, 0.0, 0.3));
    spec.stride = 30;
    const auto result = run(spec);
    CHECK(std::abs(result.rows.front().values.at(Observable::QTildePlus)) > 1e-2);
    for (auto o : {Observable::QTildePlus, Observable::QTildeMinus, Observable::HTilde, Observable::BPlusBMinus}) {
      CHECK_MESSAGE(result.max_drift.at(o) <= 1e-6, to_string(o));
    }
    CHECK(result.max_drift.at(Observable::Lz) <= 1e-8);
    CHECK(result.max_drift.at(Observable::Norm) <= 1e-8);
  }
}

TEST_CASE("run refuses steps beyond half the stability bound") {
  const auto profile = FieldProfile::constant(1.0, 0.0);
  const GridSpec g{128, 20.0};
  PropagationRun spec;
  spec.initial = SpinorField(g, 0.0);
  spec.profile = profile;
  spec.observables = {Observable::Norm};
  const double bound = stability_bound(g, profile, spec.cfg, 0.0, 1.0);
  spec.dt = 0.6 * bound;
  spec.t1 = 4 * spec.dt;
  CHECK_THROWS_AS(run(spec), PreconditionError);
  spec.dt = 0.45 * bound;
  spec.t1 = 4 * spec.dt;
  CHECK_NOTHROW(run(spec));
}

TEST_CASE("stability bound shrinks with resolution") {
  const auto p = FieldProfile::constant(1.0, 0.0);
  const PhysicalConfig cfg{1.0};
  const double a = stability_bound({64, 20.0}, p, cfg, 0.0, 1.0);
  const double b = stability_bound({128, 20.0}, p, cfg, 0.0, 1.0);
  CHECK(b < a);
  CHECK(b > a / 8.0);
}

TEST_CASE("non-finite states are reported") {
  const GridSpec g{16, 8.0};
  SpinorField psi(g, 0.3);
  psi.up(3, 4) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(step(psi, FieldProfile::constant(1.0, 0.0), PhysicalConfig{1.0}, 1e-3), InstabilityError);
}

TEST_CASE("aux-dependent observables need a solution") {
  PropagationRun spec;
  spec.initial = SpinorField(GridSpec{16, 8.0}, 0.0);
  spec.t1 = 0.01;
  spec.dt = 1e-3;
  CHECK_THROWS_AS(run(spec), PreconditionError);
}

TEST_CASE("trajectory csv") {
  const auto sol = testing::landau_branch();
  const GridSpec g{32, 16.0};
  PropagationRun spec;
  spec.initial = ground_state(0, -0.5, *sol, 0.0, g);
  spec.profile = FieldProfile::constant(1.0, 0.0);
  spec.sol = sol;
  spec.t1 = 0.05;
  spec.dt = 1e-3;
  spec.stride = 10;
  const auto result = run(spec);
  const auto path = std::filesystem::temp_directory_path() / "susy_traj.csv";
  write_trajectory_csv(path, result);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,norm,Re_Htilde,Re_Lz,Re_Sz,Re_Qp,Im_Qp,Re_Qm,Im_Qm");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
