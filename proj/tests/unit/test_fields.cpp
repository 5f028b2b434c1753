#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "susy/errors.hpp"
#include "susy/fields.hpp"

using namespace susy;

TEST_SUITE("fields") {

TEST_CASE("constant profile sample") {
  const auto s = sample(FieldProfile::constant(1.0, 0.0), PhysicalConfig{1.0}, 7.0);
  CHECK(s.B == 1.0);
  CHECK(s.D == 0.0);
  CHECK(s.a == cplx(0.0, 1.0));
}

TEST_CASE("linear_D profile sample") {
  const auto s = sample(FieldProfile::linear_D(1.0, 1.0), PhysicalConfig{1.0}, 2.0);
  CHECK(s.B == 1.0);
  CHECK(s.D == 2.0);
  CHECK(s.D_dot == 1.0);
  CHECK(s.a == cplx(2.0, 1.0));
}

TEST_CASE("sinusoidal induced electric field at a probe point") {
  // A = a z / 2 with z = i: E = -dA/dt = (B'/2, -D'/2); B'(0) = 0.5.
  const auto s = sample(FieldProfile::sinusoidal(1.0, 0.5, 1.0, 0.0, 0.0), PhysicalConfig{1.0}, 0.0,
                        std::make_pair(0.0, 1.0));
  CHECK(s.E_x == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(s.E_y) < 1e-15);
}

TEST_CASE("vector potential examples") {
  const PhysicalConfig cfg{1.0};
  CHECK(std::abs(vector_potential(FieldProfile::constant(2.0, 0.0), cfg, 0.0, 1.0) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(vector_potential(FieldProfile::constant(0.0, 2.0), cfg, 0.0, cplx(0, 1)) - cplx(0, 1)) <
        1e-15);
  CHECK(std::abs(vector_potential(FieldProfile::linear_D(1.0, 3.0), cfg, 1.0, cplx(1, 1)) - cplx(1, 2)) <
        1e-15);
}

TEST_CASE("a carries B and D exactly for every kind") {
  const PhysicalConfig cfg{1.0};
  const std::vector<FieldProfile> profiles{
      FieldProfile::constant(1.3, -0.2), FieldProfile::linear_D(0.7, 0.4),
      FieldProfile::sinusoidal(1.0, 0.5, 2.0, 0.3, 0.1),
      TabulatedField({0.0, 0.5, 1.0, 1.5, 2.0}, {1.0, 1.1, 1.3, 1.2, 1.0}, {0.0, 0.1, 0.0, -0.1, 0.0})};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto& p : profiles) {
    for (int k = 0; k < 50; ++k) {
      const double t = u(rng);
      const auto s = sample(p, cfg, t);
      CHECK(s.a.imag() == s.B);
      CHECK(s.a.real() == s.D);
      CHECK(s.a - std::conj(s.a) == cplx(0.0, 2.0 * s.B));
      CHECK(s.a + std::conj(s.a) == cplx(2.0 * s.D, 0.0));
    }
  }
}

TEST_CASE("electric field equals minus the time derivative of A") {
  const PhysicalConfig cfg{1.0};
  const std::vector<FieldProfile> profiles{FieldProfile::linear_D(0.7, 0.4),
                                           FieldProfile::sinusoidal(1.0, 0.5, 2.0, 0.3, 0.2)};
  const double h = 1e-4;
  for (const auto& p : profiles) {
    for (double t : {0.1, 0.9, 1.7}) {
      for (auto [x, y] : {std::pair{0.3, -1.1}, std::pair{2.0, 0.5}}) {
        const auto s = sample(p, cfg, t, std::make_pair(x, y));
        const cplx z{x, y};
        // Fourth-order central difference.
        const cplx dA = (-vector_potential(p, cfg, t + 2 * h, z) + 8.0 * vector_potential(p, cfg, t + h, z) -
                         8.0 * vector_potential(p, cfg, t - h, z) + vector_potential(p, cfg, t - 2 * h, z)) /
                        (12.0 * h);
        CHECK(s.E_x == doctest::Approx(-dA.real()).epsilon(1e-9));
        CHECK(s.E_y == doctest::Approx(-dA.imag()).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("analytic derivatives") {
  const auto p = FieldProfile::sinusoidal(1.0, 0.5, 2.0, 0.3, 0.2);
  for (double t : {0.0, 0.4, 3.0}) {
    CHECK(p.B_dot(t) == doctest::Approx(0.5 * 2.0 * std::cos(2.0 * t)));
    CHECK(p.D_dot(t) == doctest::Approx(0.2 * 2.0 * std::cos(2.0 * t)));
  }
}

TEST_CASE("tabulated profile reproduces its nodes") {
  const std::vector<double> t{0.0, 0.3, 0.7, 1.0, 1.6, 2.0};
  const std::vector<double> B{1.0, 1.2, 0.9, 1.4, 1.1, 1.0};
  const std::vector<double> D{0.0, -0.3, 0.2, 0.5, 0.0, 0.1};
  const FieldProfile p = TabulatedField(t, B, D);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(p.B(t[k]) == B[k]);
    CHECK(p.D(t[k]) == D[k]);
  }
  CHECK(p.domain() == std::pair{0.0, 2.0});
  CHECK_THROWS_AS(p.B(2.5), DomainError);
  CHECK_THROWS_AS(sample(p, PhysicalConfig{1.0}, -0.1), DomainError);
}

TEST_CASE("tabulated D' is fourth-order accurate") {
  auto err_for = [](int nodes) {
    std::vector<double> t, B, D;
    for (int k = 0; k < nodes; ++k) {
      const double tk = 2.0 * k / (nodes - 1);
      t.push_back(tk);
      B.push_back(1.0);
      D.push_back(std::sin(tk));
    }
    const FieldProfile p = TabulatedField(t, B, D);
    double err = 0.0;
    for (int k = 0; k < nodes; ++k) err = std::max(err, std::abs(p.D_dot(t[k]) - std::cos(t[k])));
    return err;
  };
  const double e1 = err_for(41), e2 = err_for(81);
  CHECK(e1 < 1e-5);
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("tabulated validation and csv") {
  CHECK_THROWS_AS(TabulatedField({0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(TabulatedField({0.0}, {1.0}, {0.0}), ConfigError);
  CHECK_THROWS_AS(TabulatedField({0.0, 1.0}, {1.0}, {0.0, 0.0}), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "susy_fields_table.csv";
  {
    std::ofstream f(path);
    f << "t,B,D\n0,1,0\n0.5,1.5,0.25\n1,2,0.5\n";
  }
  const FieldProfile p = TabulatedField::from_csv(path);
  CHECK(p.B(0.5) == 1.5);
  CHECK(p.D(1.0) == 0.5);
  {
    std::ofstream f(path);
    f << "time,B,D\n0,1,0\n1,1,0\n";
  }
  CHECK_THROWS_AS(TabulatedField::from_csv(path), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("charge must be non-zero") {
  CHECK_THROWS_AS(PhysicalConfig{0.0}.validate(), ConfigError);
  CHECK_NOTHROW(PhysicalConfig{-1.0}.validate());
}

}  // TEST_SUITE
