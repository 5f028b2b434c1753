#include "susy/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "susy/errors.hpp"
#include "susy/parallel.hpp"

namespace susy {

void GridSpec::validate() const {
  if (N < 16 || !std::has_single_bit(static_cast<unsigned>(N))) {
    throw ConfigError("grid N must be a power of two >= 16 (got " + std::to_string(N) + ")");
  }
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("grid L must be positive");
}

double GridSpec::k_max() const { return std::numbers::pi * N / L; }

namespace {

// FFTW plans for one grid size. Planning is not thread-safe, execution on
// fresh arrays through the new-array interface is.
class FftPlan {
 public:
  explicit FftPlan(int n) : n_(n) {
    std::vector<cplx> scratch(static_cast<std::size_t>(n) * n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  void forward(std::vector<cplx>& data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(forward_, p, p);
  }
  void backward(std::vector<cplx>& data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(backward_, p, p);
  }

 private:
  int n_;
  fftw_plan forward_;
  fftw_plan backward_;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const FftPlan& plan_for(int n) {
  static std::map<int, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

// Integer wavenumber index for FFT bin i, with the Nyquist bin flagged.
inline int wave_index(int i, int n) { return i < n / 2 ? i : i - n; }

enum class Wirtinger { Z, ZBar };

ScalarField wirtinger_derivative(const ScalarField& psi, Wirtinger which) {
  const GridSpec& g = psi.spec();
  const int n = g.N;
  std::vector<cplx> buf(psi.data().begin(), psi.data().end());
  const FftPlan& plan = plan_for(n);
  plan.forward(buf);
  const double dk = 2.0 * std::numbers::pi / g.L;
  const double inv = 1.0 / (static_cast<double>(n) * n);
  const cplx i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const int jy = wave_index(j, n);
    const double ky = jy * dk;
    for (int i = 0; i < n; ++i) {
      const int ix = wave_index(i, n);
      cplx& v = buf[static_cast<std::size_t>(j) * n + i];
      if (ix == -n / 2 || jy == -n / 2) {
        v = 0.0;
        continue;
      }
      const double kx = ix * dk;
      // d/dx -> i kx, d/dy -> i ky.
      const cplx symbol = which == Wirtinger::Z ? 0.5 * (i_unit * kx + ky) : 0.5 * (i_unit * kx - ky);
      v *= symbol * inv;
    }
  }
  plan.backward(buf);
  return ScalarField(g, std::move(buf));
}

}  // namespace

ScalarField::ScalarField(GridSpec spec) : spec_(spec), data_(spec.size(), cplx(0.0)) {
  spec_.validate();
}

ScalarField::ScalarField(GridSpec spec, std::vector<cplx> data) : spec_(spec), data_(std::move(data)) {
  spec_.validate();
  if (data_.size() != spec_.size()) throw PreconditionError("field data size does not match grid");
}

ScalarField ScalarField::from_function(GridSpec spec, const std::function<cplx(cplx)>& fn) {
  ScalarField out(spec);
  parallel::for_rows(spec.N, [&](int j) {
    for (int i = 0; i < spec.N; ++i) out(i, j) = fn(spec.z(i, j));
  });
  return out;
}

void ScalarField::check_same(const ScalarField& o) const {
  if (!(spec_ == o.spec_)) throw PreconditionError("fields live on different grids");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  check_same(o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  check_same(o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(cplx c) {
  for (auto& v : data_) v *= c;
  return *this;
}

ScalarField ScalarField::times_z() const {
  ScalarField out(*this);
  for (int j = 0; j < spec_.N; ++j)
    for (int i = 0; i < spec_.N; ++i) out(i, j) *= spec_.z(i, j);
  return out;
}

ScalarField ScalarField::times_zbar() const {
  ScalarField out(*this);
  for (int j = 0; j < spec_.N; ++j)
    for (int i = 0; i < spec_.N; ++i) out(i, j) *= std::conj(spec_.z(i, j));
  return out;
}

double ScalarField::norm_squared() const {
  double acc = 0.0;
  for (const auto& v : data_) acc += std::norm(v);
  return acc * spec_.dx() * spec_.dx();
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::boundary_max_abs() const {
  const int n = spec_.N;
  double m = 0.0;
  for (int k = 0; k < n; ++k) {
    m = std::max({m, std::abs((*this)(k, 0)), std::abs((*this)(k, n - 1)), std::abs((*this)(0, k)),
                  std::abs((*this)(n - 1, k))});
  }
  return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(cplx c, ScalarField a) { return a *= c; }

ScalarField d_dz(const ScalarField& psi) { return wirtinger_derivative(psi, Wirtinger::Z); }
ScalarField d_dzbar(const ScalarField& psi) { return wirtinger_derivative(psi, Wirtinger::ZBar); }

SpinorField::SpinorField(GridSpec spec, double time) : up(spec), down(spec), t(time) {}

SpinorField::SpinorField(ScalarField u, ScalarField d, double time)
    : up(std::move(u)), down(std::move(d)), t(time) {
  if (!(up.spec() == down.spec())) throw PreconditionError("spinor components on different grids");
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
  up += o.up;
  down += o.down;
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& o) {
  up -= o.up;
  down -= o.down;
  return *this;
}

SpinorField& SpinorField::operator*=(cplx c) {
  up *= c;
  down *= c;
  return *this;
}

double SpinorField::norm() const { return std::sqrt(up.norm_squared() + down.norm_squared()); }

double SpinorField::boundary_max_abs() const {
  return std::max(up.boundary_max_abs(), down.boundary_max_abs());
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(cplx c, SpinorField a) { return a *= c; }

cplx inner(const SpinorField& a, const SpinorField& b) {
  if (!(a.spec() == b.spec())) throw PreconditionError("inner product of fields on different grids");
  cplx acc(0.0);
  const auto au = a.up.data(), ad = a.down.data(), bu = b.up.data(), bd = b.down.data();
  for (std::size_t k = 0; k < au.size(); ++k) {
    acc += std::conj(au[k]) * bu[k] + std::conj(ad[k]) * bd[k];
  }
  const double dx = a.spec().dx();
  return acc * dx * dx;
}

double fourier_norm(const SpinorField& psi) {
  const GridSpec& g = psi.spec();
  const FftPlan& plan = plan_for(g.N);
  double acc = 0.0;
  for (const ScalarField* c : {&psi.up, &psi.down}) {
    std::vector<cplx> buf(c->data().begin(), c->data().end());
    plan.forward(buf);
    for (const auto& v : buf) acc += std::norm(v);
  }
  const double n2 = static_cast<double>(g.N) * g.N;
  return std::sqrt(acc / n2 * g.dx() * g.dx());
}

namespace {

template <class T>
void put(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "snapshot format is little-endian");
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError("truncated field snapshot");
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpinorField& psi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  put<std::int64_t>(out, psi.spec().N);
  put<double>(out, psi.spec().L);
  put<double>(out, psi.t);
  for (const ScalarField* c : {&psi.up, &psi.down}) {
    for (const auto& v : c->data()) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
}

SpinorField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  GridSpec g;
  g.N = static_cast<int>(get<std::int64_t>(in));
  g.L = get<double>(in);
  const double t = get<double>(in);
  g.validate();
  SpinorField psi(g, t);
  for (ScalarField* c : {&psi.up, &psi.down}) {
    for (auto& v : c->data()) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      v = cplx(re, im);
    }
  }
  return psi;
}

void write_field_csv(const std::filesystem::path& path, const SpinorField& psi) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "x,y,Re_up,Im_up,Re_dn,Im_dn\n" << std::setprecision(17);
  const GridSpec& g = psi.spec();
  for (int j = 0; j < g.N; ++j) {
    for (int i = 0; i < g.N; ++i) {
      const cplx u = psi.up(i, j), d = psi.down(i, j);
      out << g.coord(i) << ',' << g.coord(j) << ',' << u.real() << ',' << u.imag() << ','
          << d.real() << ',' << d.imag() << '\n';
    }
  }
}

}  // namespace susy
