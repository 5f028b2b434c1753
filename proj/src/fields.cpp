#include "susy/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "susy/errors.hpp"

namespace susy {

void PhysicalConfig::validate() const {
  if (e == 0.0 || !std::isfinite(e)) {
    throw ConfigError("physical.e must be a finite non-zero charge");
  }
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Constant: return "constant";
    case ProfileKind::LinearD: return "linear_D";
    case ProfileKind::Sinusoidal: return "sinusoidal";
    case ProfileKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

namespace {

// Derivative at xs[i] of the Lagrange polynomial through the points
// xs[first .. first+count).
double lagrange_slope(std::span<const double> xs, std::span<const double> ys, std::size_t i,
                      std::size_t first, std::size_t count) {
  const double xi = xs[i];
  double slope = 0.0;
  for (std::size_t j = first; j < first + count; ++j) {
    double w = 0.0;
    if (j == i) {
      for (std::size_t k = first; k < first + count; ++k) {
        if (k != i) w += 1.0 / (xi - xs[k]);
      }
    } else {
      double num = 1.0;
      double den = 1.0;
      for (std::size_t k = first; k < first + count; ++k) {
        if (k == j) continue;
        den *= xs[j] - xs[k];
        if (k != i) num *= xi - xs[k];
      }
      w = num / den;
    }
    slope += w * ys[j];
  }
  return slope;
}

std::vector<double> node_slopes(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Center the stencil on i where possible, shift it inward at the ends.
    std::size_t first = i >= width / 2 ? i - width / 2 : 0;
    first = std::min(first, n - width);
    out[i] = lagrange_slope(t, y, i, first, width);
  }
  return out;
}

}  // namespace

TabulatedField::TabulatedField(std::vector<double> t, std::vector<double> B,
                               std::vector<double> D)
    : t_(std::move(t)), B_(std::move(B)), D_(std::move(D)) {
  if (t_.size() < 2) throw ConfigError("tabulated profile needs at least two samples");
  if (B_.size() != t_.size() || D_.size() != t_.size()) {
    throw ConfigError("tabulated profile columns t, B, D differ in length");
  }
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(B_[i]) || !std::isfinite(D_[i])) {
      throw ConfigError("tabulated profile contains non-finite values");
    }
    if (i > 0 && !(t_[i] > t_[i - 1])) {
      throw ConfigError("tabulated profile times must be strictly increasing");
    }
  }
  dB_ = node_slopes(t_, B_);
  dD_ = node_slopes(t_, D_);
}

TabulatedField TabulatedField::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field table: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty field table: " + path.string());
  line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
  if (line != "t,B,D") {
    throw ConfigError("field table must start with header 't,B,D': " + path.string());
  }
  std::vector<double> t, B, D;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double tv, bv, dv;
    if (!(ss >> tv >> bv >> dv)) {
      throw ConfigError("malformed row " + std::to_string(row) + " in " + path.string());
    }
    t.push_back(tv);
    B.push_back(bv);
    D.push_back(dv);
  }
  return TabulatedField(std::move(t), std::move(B), std::move(D));
}

std::pair<double, double> TabulatedField::hermite(std::span<const double> y,
                                                  std::span<const double> dy, double t) const {
  if (!(t >= t_.front() && t <= t_.back())) {
    std::ostringstream msg;
    msg << "t = " << t << " outside tabulated range [" << t_.front() << ", " << t_.back() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t k = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  k = std::min(k, t_.size() - 2);
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double value = h00 * y[k] + h10 * h * dy[k] + h01 * y[k + 1] + h11 * h * dy[k + 1];
  const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
  const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
  const double deriv = (d00 * y[k] + d01 * y[k + 1]) / h + d10 * dy[k] + d11 * dy[k + 1];
  return {value, deriv};
}

std::pair<double, double> TabulatedField::B_at(double t) const { return hermite(B_, dB_, t); }
std::pair<double, double> TabulatedField::D_at(double t) const { return hermite(D_, dD_, t); }

ProfileKind FieldProfile::kind() const {
  return static_cast<ProfileKind>(v_.index());
}

std::pair<double, double> FieldProfile::domain() const {
  if (const auto* tab = std::get_if<TabulatedField>(&v_)) {
    return {tab->t_begin(), tab->t_end()};
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

bool FieldProfile::contains(double t) const {
  const auto [lo, hi] = domain();
  return t >= lo && t <= hi;
}

void FieldProfile::check_domain(double t) const {
  if (!std::isfinite(t)) throw DomainError("non-finite time");
  if (!contains(t)) {
    const auto [lo, hi] = domain();
    std::ostringstream msg;
    msg << "t = " << t << " outside profile domain [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

double FieldProfile::B(double t) const {
  check_domain(t);
  return std::visit(overloaded{
                        [](const ConstantField& f) { return f.B0; },
                        [](const LinearDField& f) { return f.B0; },
                        [t](const SinusoidalField& f) { return f.B_mean + f.B_amp * std::sin(f.omega * t); },
                        [t](const TabulatedField& f) { return f.B_at(t).first; },
                    },
                    v_);
}

double FieldProfile::D(double t) const {
  check_domain(t);
  return std::visit(overloaded{
                        [](const ConstantField& f) { return f.D0; },
                        [t](const LinearDField& f) { return f.D_rate * t; },
                        [t](const SinusoidalField& f) { return f.D_mean + f.D_amp * std::sin(f.omega * t); },
                        [t](const TabulatedField& f) { return f.D_at(t).first; },
                    },
                    v_);
}

double FieldProfile::B_dot(double t) const {
  check_domain(t);
  return std::visit(overloaded{
                        [](const ConstantField&) { return 0.0; },
                        [](const LinearDField&) { return 0.0; },
                        [t](const SinusoidalField& f) { return f.B_amp * f.omega * std::cos(f.omega * t); },
                        [t](const TabulatedField& f) { return f.B_at(t).second; },
                    },
                    v_);
}

double FieldProfile::D_dot(double t) const {
  check_domain(t);
  return std::visit(overloaded{
                        [](const ConstantField&) { return 0.0; },
                        [](const LinearDField& f) { return f.D_rate; },
                        [t](const SinusoidalField& f) { return f.D_amp * f.omega * std::cos(f.omega * t); },
                        [t](const TabulatedField& f) { return f.D_at(t).second; },
                    },
                    v_);
}

double FieldProfile::max_abs_a(double t0, double t1) const {
  if (t1 < t0) std::swap(t0, t1);
  constexpr int samples = 512;
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t0 + (t1 - t0) * i / samples;
    best = std::max(best, std::hypot(B(t), D(t)));
  }
  if (const auto* tab = std::get_if<TabulatedField>(&v_)) {
    for (std::size_t i = 0; i < tab->times().size(); ++i) {
      const double t = tab->times()[i];
      if (t >= t0 && t <= t1) best = std::max(best, std::hypot(tab->B_samples()[i], tab->D_samples()[i]));
    }
  }
  return best;
}

FieldSample sample(const FieldProfile& profile, const PhysicalConfig& cfg, double t,
                   std::optional<std::pair<double, double>> probe) {
  cfg.validate();
  FieldSample s;
  s.t = t;
  s.B = profile.B(t);
  s.D = profile.D(t);
  s.B_dot = profile.B_dot(t);
  s.D_dot = profile.D_dot(t);
  s.a = cplx(s.D, s.B);
  if (probe) {
    const auto [x, y] = *probe;
    s.E_x = 0.5 * s.B_dot * y - 0.5 * s.D_dot * x;
    s.E_y = -0.5 * s.B_dot * x - 0.5 * s.D_dot * y;
  }
  return s;
}

cplx vector_potential(const FieldProfile& profile, const PhysicalConfig& cfg, double t, cplx z) {
  cfg.validate();
  return 0.5 * cplx(profile.D(t), profile.B(t)) * z;
}

}  // namespace susy
