#include "flyq/unitary_dynamics.hpp"

#include <cmath>
#include <string>

#include "flyq/errors.hpp"

namespace flyq {

namespace {

const cplx kI(0.0, 1.0);

// ln(x^n / n!)
double log_power_over_factorial(double x, int n) { return n * std::log(x) - std::lgamma(n + 1.0); }

}  // namespace

void require_no_leakage(const StateVector& state, JCPair pair) {
  const SpaceLayout& layout = state.layout();
  const std::size_t q = layout.position(pair.qubit);
  const std::size_t c = layout.position(pair.cavity);
  const int top = layout.factor(c).dim - 1;
  double pop = 0.0;
  for (Index i = 0; i < layout.total_dim(); ++i) {
    if (layout.digit(i, q) == 1 && layout.digit(i, c) == top) pop += std::norm(state[i]);
  }
  if (pop > 1e-10) {
    throw TruncationError("population " + std::to_string(pop) + " in |1, d-1> of " +
                              std::string(role_name(pair.cavity)) + " would leak out of the truncated space",
                          top + 2);
  }
}

const SpaceLayout& two_qubit_layout() {
  static const SpaceLayout layout{{Role::Qubit1, 2}, {Role::Qubit2, 2}};
  return layout;
}

StateVector jc_rotate(const StateVector& state, JCPair pair, double mu) {
  require_no_leakage(state, pair);
  Vector v = state.amplitudes();
  for (const LadderPair& p : ladder_pairs(state.layout(), pair.qubit, pair.cavity)) {
    const double angle = mu * p.amplitude;
    const double c = std::cos(angle);
    const cplx s = -kI * std::sin(angle);
    const cplx g = v[p.ground];
    const cplx e = v[p.excited];
    v[p.ground] = c * g + s * e;
    v[p.excited] = c * e + s * g;
  }
  return StateVector(state.layout(), std::move(v));
}

StateVector ode_propagate(const StateVector& state, JCPair pair, const CouplingProfile& profile, double t_final,
                          double tol) {
  if (!(tol > 0.0)) throw InvalidDimension("ode_propagate: tol must be > 0");
  require_no_leakage(state, pair);
  const auto pairs = ladder_pairs(state.layout(), pair.qubit, pair.cavity);
  auto rhs = [&](double t, const Vector& y, Vector& dy) {
    const double omega = profile.omega(t);
    dy.setZero();
    if (omega == 0.0) return;
    const cplx f = -kI * omega;
    for (const LadderPair& p : pairs) {
      dy[p.ground] += f * p.amplitude * y[p.excited];
      dy[p.excited] += f * p.amplitude * y[p.ground];
    }
  };
  DormandPrince solver(rhs, OdeOptions{tol, tol});
  solver.reset(0.0, state.amplitudes());
  for (double stop : profile.breakpoints()) {
    if (stop >= t_final) break;
    solver.advance_to(stop);
    solver.reset(stop, solver.y());
  }
  solver.advance_to(t_final);
  return StateVector(state.layout(), solver.y());
}

StateVector with_ground_qubits(const StateVector& cavities) {
  std::vector<Factor> factors{{Role::Qubit1, 2}, {Role::Qubit2, 2}};
  const auto& rest = cavities.layout().factors();
  factors.insert(factors.end(), rest.begin(), rest.end());
  SpaceLayout layout(std::move(factors));
  Vector v = Vector::Zero(layout.total_dim());
  v.head(cavities.amplitudes().size()) = cavities.amplitudes();
  return StateVector(std::move(layout), std::move(v));
}

UnitaryProtocol::UnitaryProtocol(const DrivingResource& resource, const CavityLoad& load)
    : initial_(with_ground_qubits(purified_cavities(resource, load))) {}

StateVector UnitaryProtocol::joint_state(double mu1, double mu2) const {
  return jc_rotate(jc_rotate(initial_, kPair1A, mu1), kPair2B, mu2);
}

DensityOperator UnitaryProtocol::qubits(double mu1, double mu2) const {
  return reduced_state(joint_state(mu1, mu2), {Role::Qubit1, Role::Qubit2});
}

DensityOperator evolve_protocol(const DrivingResource& resource, const CavityLoad& load,
                                const CouplingProfile& profile1, const CouplingProfile& profile2, double t) {
  if (t < 0.0) throw InvalidDimension("evolve_protocol: t must be >= 0");
  const UnitaryProtocol protocol(resource, load);
  return protocol.qubits(profile1.pulse_area(t), profile2.pulse_area(t));
}

DensityOperator noon1_closed_form(double transmittivity, double mu) {
  const CavityLoad load(transmittivity);
  const double ts = load.transmittivity() * std::pow(std::sin(mu), 2);
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0 - ts;
  rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5 * ts;
  return DensityOperator(two_qubit_layout(), std::move(rho));
}

int ecs_series_cutoff(double alpha) {
  const double a2 = alpha * alpha;
  int s = 1;
  while (s < a2 || std::exp(-a2 + log_power_over_factorial(a2, s)) >= 1e-14) ++s;
  return s;
}

DensityOperator ecs_closed_form(double alpha, double transmittivity, double mu, int cutoff) {
  if (!(alpha > 0.0)) throw InvalidDimension("ecs_closed_form: alpha must be > 0");
  const CavityLoad load(transmittivity);
  const double t = load.transmittivity();
  const double r = load.reflectivity();
  const double a2 = alpha * alpha;
  if (cutoff == 0) cutoff = ecs_series_cutoff(alpha);
  const double tail = std::exp(-a2 + log_power_over_factorial(a2, cutoff));
  if (cutoff < a2 || tail >= 1e-12) {
    throw TruncationError("ecs_closed_form: series cutoff " + std::to_string(cutoff) + " leaves tail " +
                              std::to_string(tail),
                          ecs_series_cutoff(alpha));
  }
  const double nt2 = std::pow(ecs_normalization(alpha), 2) * std::exp(-a2);

  // Weight C(n,m) R^m T^{n-m}; pow(0, 0) = 1 covers T or R = 0.
  auto binomial_weight = [&](int n, int m) {
    const double lb = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
    return std::exp(lb) * std::pow(r, m) * std::pow(t, n - m);
  };

  double a_sum = 0.0;
  for (int n = 1; n <= cutoff; ++n) {
    double inner = 0.0;
    for (int m = 0; m < n; ++m) inner += binomial_weight(n, m) * std::pow(std::sin(mu * std::sqrt(n - m)), 2);
    a_sum += std::exp(log_power_over_factorial(a2, n)) * inner;
  }
  const double a = nt2 * a_sum;
  const double b = nt2 * t * a2 * std::pow(std::sin(mu), 2);

  double c_sum = 2.0 * std::sqrt(t) * alpha * std::sin(mu);
  for (int s = 1; s <= cutoff; ++s) {
    for (int m = 0; m <= s; ++m) {
      const double log_mag = (2 * s + 1) * std::log(alpha) - std::lgamma(m + 1.0) -
                             0.5 * (std::lgamma(s + 2.0 - m) + std::lgamma(s + 1.0 - m));
      const double coeff = std::exp(log_mag) * std::pow(r, m) * std::pow(t, s - m + 0.5);
      c_sum += coeff * std::sin(mu * std::sqrt(s - m + 1.0)) * std::cos(mu * std::sqrt(static_cast<double>(s - m)));
    }
  }
  const cplx c = -kI * nt2 * c_sum;

  // Ascending order: |00>, |01>, |10>, |11>.
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0 - 2.0 * a;
  rho(1, 1) = rho(2, 2) = a;
  rho(1, 2) = rho(2, 1) = b;
  rho(1, 0) = rho(2, 0) = c;
  rho(0, 1) = rho(0, 2) = std::conj(c);
  return DensityOperator(two_qubit_layout(), std::move(rho));
}

}  // namespace flyq
