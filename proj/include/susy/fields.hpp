#pragma once

// Axially symmetric, spatially uniform field profiles B(t), D(t) and the
// symmetric-gauge vector potential A = a(t) z / 2 with a = D + iB.

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace susy {

using cplx = std::complex<double>;

/// Physical constants. Units: hbar = 1, 2m = 1 (see README); the charge e is
/// a signed free parameter.
struct PhysicalConfig {
  double e = 1.0;

  /// Throws ConfigError if e == 0.
  void validate() const;
};

enum class ProfileKind { Constant, LinearD, Sinusoidal, Tabulated };

std::string to_string(ProfileKind kind);

struct ConstantField {
  double B0 = 1.0;
  double D0 = 0.0;
};

/// B(t) = B0, D(t) = D_rate * t.
struct LinearDField {
  double B0 = 1.0;
  double D_rate = 0.0;
};

/// B(t) = B_mean + B_amp sin(omega t), D(t) = D_mean + D_amp sin(omega t).
struct SinusoidalField {
  double B_mean = 1.0;
  double B_amp = 0.0;
  double omega = 1.0;
  double D_mean = 0.0;
  double D_amp = 0.0;
};

/// Piecewise cubic Hermite interpolation of sampled (t, B, D).
///
/// Node slopes come from 4th-order finite differences (5-point Lagrange
/// stencils, centered in the interior and one-sided near the ends), so
/// D'(t) at a node is the finite-difference estimate and between nodes it is
/// the derivative of the interpolant.
class TabulatedField {
 public:
  /// Throws ConfigError unless t is strictly increasing with >= 2 samples
  /// and all three columns have equal length.
  TabulatedField(std::vector<double> t, std::vector<double> B, std::vector<double> D);

  /// Reads a CSV with header `t,B,D`.
  static TabulatedField from_csv(const std::filesystem::path& path);

  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  std::span<const double> times() const { return t_; }
  std::span<const double> B_samples() const { return B_; }
  std::span<const double> D_samples() const { return D_; }

  /// Value and derivative of B at t. Throws DomainError outside the table.
  std::pair<double, double> B_at(double t) const;
  std::pair<double, double> D_at(double t) const;

 private:
  std::pair<double, double> hermite(std::span<const double> y, std::span<const double> dy,
                                    double t) const;

  std::vector<double> t_, B_, D_;
  std::vector<double> dB_, dD_;
};

class FieldProfile {
 public:
  using Variant = std::variant<ConstantField, LinearDField, SinusoidalField, TabulatedField>;

  FieldProfile() : FieldProfile(ConstantField{}) {}
  FieldProfile(ConstantField f) : v_(f) {}
  FieldProfile(LinearDField f) : v_(f) {}
  FieldProfile(SinusoidalField f) : v_(f) {}
  FieldProfile(TabulatedField f) : v_(std::move(f)) {}

  static FieldProfile constant(double B0, double D0) { return ConstantField{B0, D0}; }
  static FieldProfile linear_D(double B0, double D_rate) { return LinearDField{B0, D_rate}; }
  static FieldProfile sinusoidal(double B_mean, double B_amp, double omega, double D_mean,
                                 double D_amp) {
    return SinusoidalField{B_mean, B_amp, omega, D_mean, D_amp};
  }

  ProfileKind kind() const;
  const Variant& variant() const { return v_; }

  /// Closed interval on which the profile is defined (infinite for analytic kinds).
  std::pair<double, double> domain() const;
  bool contains(double t) const;

  double B(double t) const;
  double D(double t) const;
  double B_dot(double t) const;
  double D_dot(double t) const;

  /// Largest |a(t)| = sqrt(B^2 + D^2) over [t0, t1], sampled.
  double max_abs_a(double t0, double t1) const;

 private:
  void check_domain(double t) const;

  Variant v_;
};

struct FieldSample {
  double t = 0.0;
  double B = 0.0;
  double D = 0.0;
  double B_dot = 0.0;
  double D_dot = 0.0;
  cplx a{0.0, 0.0};
  // Induced electric field at the probe point (zero when no probe was given).
  double E_x = 0.0;
  double E_y = 0.0;
};

/// Field quantities at time t, with the electric field evaluated at `probe`
/// (x, y) when supplied. Throws DomainError outside the profile's domain.
FieldSample sample(const FieldProfile& profile, const PhysicalConfig& cfg, double t,
                   std::optional<std::pair<double, double>> probe = std::nullopt);

/// Complex vector potential A = A_x + i A_y = a(t) z / 2.
cplx vector_potential(const FieldProfile& profile, const PhysicalConfig& cfg, double t, cplx z);

}  // namespace susy
