#pragma once

// Uniform periodic square grids, scalar and two-component spinor fields, and
// Fourier spectral derivatives d/dz = (d/dx - i d/dy)/2, d/dz* = (d/dx + i d/dy)/2.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace susy {

using cplx = std::complex<double>;

/// N x N points on [-L/2, L/2)^2. N is a power of two, at least 16.
struct GridSpec {
  int N = 64;
  double L = 20.0;

  void validate() const;
  double dx() const { return L / N; }
  double coord(int i) const { return -0.5 * L + i * dx(); }
  cplx z(int i, int j) const { return {coord(i), coord(j)}; }
  std::size_t size() const { return static_cast<std::size_t>(N) * static_cast<std::size_t>(N); }
  /// Largest resolved wavenumber pi N / L.
  double k_max() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Complex values on a grid, stored row-major: value(i, j) = data[j * N + i]
/// with i the x index and j the y index.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridSpec spec);
  ScalarField(GridSpec spec, std::vector<cplx> data);

  /// Samples fn(z) at every grid point (rows evaluated in parallel).
  static ScalarField from_function(GridSpec spec, const std::function<cplx(cplx)>& fn);

  const GridSpec& spec() const { return spec_; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }
  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * spec_.N + i]; }
  cplx operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * spec_.N + i]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(cplx c);

  /// Pointwise multiplication by z or conj(z).
  ScalarField times_z() const;
  ScalarField times_zbar() const;

  /// sum |psi|^2 dx^2.
  double norm_squared() const;
  double max_abs() const;
  /// Largest |value| on the outermost ring of grid points.
  double boundary_max_abs() const;

 private:
  void check_same(const ScalarField& o) const;

  GridSpec spec_;
  std::vector<cplx> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(cplx c, ScalarField a);

/// Spectral d/dz. Exact for band-limited periodic data; the Nyquist mode is dropped.
ScalarField d_dz(const ScalarField& psi);
/// Spectral d/dz*.
ScalarField d_dzbar(const ScalarField& psi);

/// Two-component wavefunction (spin up, spin down) at time t.
struct SpinorField {
  ScalarField up;
  ScalarField down;
  double t = 0.0;

  SpinorField() = default;
  SpinorField(GridSpec spec, double time);
  SpinorField(ScalarField u, ScalarField d, double time);

  const GridSpec& spec() const { return up.spec(); }

  SpinorField& operator+=(const SpinorField& o);
  SpinorField& operator-=(const SpinorField& o);
  SpinorField& operator*=(cplx c);

  double norm() const;
  double boundary_max_abs() const;
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(cplx c, SpinorField a);

/// <a|b> = sum (conj(a_up) b_up + conj(a_dn) b_dn) dx^2. Throws
/// PreconditionError when the grids differ.
cplx inner(const SpinorField& a, const SpinorField& b);

/// Norm evaluated from Fourier coefficients (Parseval).
double fourier_norm(const SpinorField& psi);

/// Binary snapshot: N (int64 LE), L (float64), t (float64), then N*N
/// (re, im) float64 pairs for the up component, then for the down component.
void write_snapshot(const std::filesystem::path& path, const SpinorField& psi);
SpinorField read_snapshot(const std::filesystem::path& path);

/// CSV `x,y,Re_up,Im_up,Re_dn,Im_dn`, one row per grid point.
void write_field_csv(const std::filesystem::path& path, const SpinorField& psi);

}  // namespace susy
