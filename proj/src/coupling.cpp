#include "flyq/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flyq/errors.hpp"

namespace flyq {

namespace {

constexpr double kWindow = 8.0;  // waists

// Earliest t >= 0 with x(t) = x, or NaN if never reached.
double time_at(const Trajectory& path, double x) {
  if (const auto* f = std::get_if<FreeFall>(&path)) {
    if (x < f->x0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(2.0 * (x - f->x0) / f->g);
  }
  const auto& u = std::get<Uniform>(path);
  if (x < u.x0) return std::numeric_limits<double>::quiet_NaN();
  return (x - u.x0) / u.velocity;
}

}  // namespace

double hermite(int order, double y) {
  if (order < 0) throw InvalidDimension("hermite: negative order");
  if (order == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * y;
  for (int p = 1; p < order; ++p) {
    const double next = 2.0 * y * cur - 2.0 * p * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_roots(int order) {
  if (order <= 0) return {};
  // Golub-Welsch: roots are eigenvalues of the Jacobi matrix of the
  // recurrence, off-diagonals sqrt(k/2).
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) j(k - 1, k) = j(k, k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(j, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& w = solver.eigenvalues();
  return {w.data(), w.data() + w.size()};
}

double position(const Trajectory& path, double t) {
  if (const auto* f = std::get_if<FreeFall>(&path)) return f->x0 + 0.5 * f->g * t * t;
  const auto& u = std::get<Uniform>(path);
  return u.x0 + u.velocity * t;
}

CouplingProfile CouplingProfile::hermite_gauss(double omega0, ModeGeometry mode, Trajectory path) {
  if (!(omega0 > 0.0)) throw InvalidDimension("coupling: Omega0 must be > 0");
  if (!(mode.waist > 0.0)) throw InvalidDimension("coupling: waist must be > 0");
  if (mode.u < 0) throw InvalidDimension("coupling: mode index u must be >= 0");
  if (mode.v != 0) throw InvalidDimension("coupling: only v = 0 modes are supported (y = 0 motion)");
  if (const auto* f = std::get_if<FreeFall>(&path)) {
    if (!(f->x0 < 0.0)) throw InvalidDimension("coupling: x0 must be < 0");
    if (!(f->g > 0.0)) throw InvalidDimension("coupling: g must be > 0");
  } else {
    const auto& u = std::get<Uniform>(path);
    if (!(u.x0 < 0.0)) throw InvalidDimension("coupling: x0 must be < 0");
    if (!(u.velocity > 0.0)) throw InvalidDimension("coupling: V must be > 0");
  }
  CouplingProfile p;
  p.omega0_ = omega0;
  p.mode_ = mode;
  p.path_ = path;
  p.norm_ = 1.0 / std::sqrt(std::pow(2.0, mode.u) * std::tgamma(mode.u + 1.0));
  return p;
}

CouplingProfile CouplingProfile::flat(double rate) {
  if (!(rate >= 0.0)) throw InvalidDimension("coupling: flat rate must be >= 0");
  CouplingProfile p;
  p.omega0_ = rate;
  p.flat_ = true;
  return p;
}

double CouplingProfile::omega(double t) const {
  if (flat_) return omega0_;
  const double s = position(path_, t) / mode_.waist;
  if (std::abs(s) > kWindow) return 0.0;
  return omega0_ * norm_ * std::abs(hermite(mode_.u, M_SQRT2 * s)) * std::exp(-s * s);
}

double CouplingProfile::max_rate() const {
  if (flat_) return omega0_;
  const double lo = std::max(position(path_, 0.0) / mode_.waist, -kWindow);
  const double hi = kWindow;
  auto f = [this](double s) { return norm_ * std::abs(hermite(mode_.u, M_SQRT2 * s)) * std::exp(-s * s); };
  constexpr int kSamples = 16000;
  double best_s = lo;
  double best = f(lo);
  const double h = (hi - lo) / kSamples;
  for (int k = 1; k <= kSamples; ++k) {
    const double s = lo + k * h;
    if (f(s) > best) {
      best = f(s);
      best_s = s;
    }
  }
  // Golden-section refinement inside the bracketing cell.
  double a = std::max(lo, best_s - h);
  double b = std::min(hi, best_s + h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return omega0_ * std::max(best, f(0.5 * (a + b)));
}

double CouplingProfile::exit_time() const {
  if (flat_) return std::numeric_limits<double>::infinity();
  return time_at(path_, kWindow * mode_.waist);
}

std::vector<double> CouplingProfile::breakpoints() const {
  std::vector<double> out;
  if (flat_) return out;
  const double w = mode_.waist;
  const double entry = time_at(path_, -kWindow * w);
  if (std::isfinite(entry) && entry > 0.0) out.push_back(entry);
  for (double r : hermite_roots(mode_.u)) {
    const double t = time_at(path_, r * w / M_SQRT2);
    if (std::isfinite(t) && t > 0.0) out.push_back(t);
  }
  out.push_back(exit_time());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double CouplingProfile::integrate(double a, double b) const {
  if (b <= a) return 0.0;
  if (flat_) return omega0_ * (b - a);
  const double stop = std::min(b, exit_time());
  if (stop <= a) return 0.0;
  std::vector<double> cuts{a};
  for (double t : breakpoints()) {
    if (t > a && t < stop) cuts.push_back(t);
  }
  cuts.push_back(stop);
  using boost::math::quadrature::gauss_kronrod;
  auto f = [this](double t) { return omega(t); };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    total += gauss_kronrod<double, 31>::integrate(f, cuts[k], cuts[k + 1], 15, 1e-10);
  }
  return total;
}

double CouplingProfile::pulse_area(double t) const {
  if (t < 0.0) throw InvalidDimension("pulse_area: t must be >= 0");
  return integrate(0.0, t);
}

std::vector<double> CouplingProfile::pulse_areas(const std::vector<double>& times) const {
  std::vector<double> out;
  out.reserve(times.size());
  double prev_t = 0.0;
  double acc = 0.0;
  for (double t : times) {
    if (t < prev_t) throw InvalidDimension("pulse_areas: times must be ascending and >= 0");
    acc += integrate(prev_t, t);
    out.push_back(acc);
    prev_t = t;
  }
  return out;
}

}  // namespace flyq
