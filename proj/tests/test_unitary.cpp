#include <doctest.h>

#include <random>

#include "flyq/errors.hpp"
#include "flyq/measures.hpp"
#include "flyq/ode.hpp"
#include "flyq/unitary_dynamics.hpp"
#include "oracles.hpp"

using namespace flyq;

namespace {

const SpaceLayout kQubitCavity{{Role::Qubit1, 2}, {Role::CavityA, 4}};

StateVector basis_state(int q, int n) {
  const int digits[] = {q, n};
  return StateVector::basis(kQubitCavity, digits);
}

CouplingProfile fig2a_profile(double omega0 = 5.9e3) {
  return CouplingProfile::hermite_gauss(omega0, ModeGeometry{2, 0, 10e-6}, FreeFall{-40e-6, 9.82});
}

double excitations(const StateVector& psi) {
  const SpaceLayout& l = psi.layout();
  Eigen::VectorXd n = Eigen::VectorXd::Zero(l.total_dim());
  for (Role r : {Role::CavityA, Role::CavityB}) {
    if (l.contains(r)) n += occupation(l, r);
  }
  for (Role q : {Role::Qubit1, Role::Qubit2}) {
    if (!l.contains(q)) continue;
    for (Index i = 0; i < l.total_dim(); ++i) n[i] += l.digit(i, l.position(q));
  }
  return (psi.amplitudes().cwiseAbs2().array() * n.array()).sum();
}

}  // namespace

TEST_CASE("jc_rotate examples") {
  const StateVector a = jc_rotate(basis_state(0, 1), kPair1A, M_PI / 2);
  CHECK(std::abs(a[1 * 4 + 0] - cplx(0, -1)) < 1e-15);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-15));

  const StateVector b = jc_rotate(basis_state(0, 1), kPair1A, M_PI);
  CHECK(std::abs(b[0 * 4 + 1] + 1.0) < 1e-15);

  const StateVector c = jc_rotate(basis_state(0, 2), kPair1A, 0.37);
  CHECK(std::abs(c[0 * 4 + 2] - std::cos(0.37 * std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(c[1 * 4 + 1] - cplx(0, -std::sin(0.37 * std::sqrt(2.0)))) < 1e-15);

  const StateVector vac = jc_rotate(basis_state(0, 0), kPair1A, 1.3);
  CHECK(std::abs(vac[0] - 1.0) == 0.0);

  CHECK_THROWS_AS(jc_rotate(basis_state(1, 3), kPair1A, 0.1), TruncationError);
}

TEST_CASE("ODE propagator agrees with the closed-form rotation") {
  const CouplingProfile zero = CouplingProfile::flat(0.0);
  const StateVector s = basis_state(0, 2);
  CHECK((ode_propagate(s, kPair1A, zero, 1.0, 1e-10).amplitudes() - s.amplitudes()).norm() == 0.0);

  const double rate = 2.0;
  const double t = (M_PI / 2) / rate;
  const StateVector flat = ode_propagate(s, kPair1A, CouplingProfile::flat(rate), t, 1e-11);
  CHECK((flat.amplitudes() - jc_rotate(s, kPair1A, M_PI / 2).amplitudes()).norm() < 1e-9);

  const CouplingProfile p = fig2a_profile();
  Vector v = Vector::Zero(8);
  v[0 * 4 + 2] = 0.6;
  v[0 * 4 + 1] = cplx(0.0, 0.8);
  const StateVector mixed(kQubitCavity, v);
  const StateVector ode = ode_propagate(mixed, kPair1A, p, p.exit_time(), 1e-11);
  const StateVector rot = jc_rotate(mixed, kPair1A, p.total_pulse_area());
  CHECK((ode.amplitudes() - rot.amplitudes()).norm() < 1e-8);
  CHECK(ode.norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("evolve_protocol") {
  const CouplingProfile p = fig2a_profile();
  const DensityOperator start = evolve_protocol(DrivingResource::noon(1), CavityLoad(0.9), p, p, 0.0);
  CHECK(std::abs(start(0, 0) - 1.0) < 1e-14);

  const UnitaryProtocol noon1(DrivingResource::noon(1), CavityLoad(0.9));
  const Matrix descending = to_descending_order(noon1.qubits(M_PI / 2, M_PI / 2).matrix());
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = expected(2, 2) = expected(1, 2) = expected(2, 1) = 0.45;
  expected(3, 3) = 0.1;
  CHECK(oracle::max_abs(descending - expected) < 1e-14);

  const UnitaryProtocol noon2(DrivingResource::noon(2), CavityLoad(0.9));
  for (double mu : {0.3, 1.1, 2.9}) {
    const Matrix m = noon2.qubits(mu, mu).matrix();
    CHECK(oracle::max_abs(m - Matrix(m.diagonal().asDiagonal())) == 0.0);
  }
}

TEST_CASE("single-photon closed form") {
  const DensityOperator zero = noon1_closed_form(0.9, 0.0);
  CHECK(std::abs(zero(0, 0) - 1.0) == 0.0);
  CHECK(noon1_closed_form(0.9, M_PI / 2)(0, 0).real() == doctest::Approx(0.1).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double t = u(rng);
    const double mu = 4.0 * u(rng);
    const UnitaryProtocol proto(DrivingResource::noon(1), CavityLoad(t));
    CHECK(oracle::max_abs(proto.qubits(mu, mu).matrix() - noon1_closed_form(t, mu).matrix()) < 1e-12);
  }
}

TEST_CASE("ECS closed form") {
  const DensityOperator zero = ecs_closed_form(1.0, 0.9, 0.0);
  CHECK(std::abs(zero(0, 0) - 1.0) < 1e-15);
  CHECK(oracle::max_abs(zero.matrix() - Matrix(zero.matrix().diagonal().asDiagonal())) == 0.0);

  const double nt2 = std::exp(-1.0) / (2.0 * (1.0 + std::exp(-1.0)));
  CHECK(nt2 == doctest::Approx(0.134470).epsilon(1e-5));
  const DensityOperator at = ecs_closed_form(1.0, 0.9, M_PI / 2);
  CHECK(at(1, 2).real() == doctest::Approx(nt2 * 0.9).epsilon(1e-13));
  CHECK(at(1, 2).real() == doctest::Approx(0.121023).epsilon(1e-5));

  for (double alpha : {0.5, 1.1}) {
    const UnitaryProtocol proto(DrivingResource::ecs(alpha), CavityLoad(0.9));
    for (double mu : {0.7, M_PI / 2}) {
      const DensityOperator cf = ecs_closed_form(alpha, 0.9, mu);
      CHECK(cf.is_physical());
      CHECK(oracle::max_abs(proto.qubits(mu, mu).matrix() - cf.matrix()) < 1e-9);
    }
  }
  CHECK_THROWS_AS(ecs_closed_form(2.0, 0.9, 1.0, 3), TruncationError);
  CHECK(ecs_series_cutoff(1.0) >= 1);
}

TEST_CASE("excitation number is conserved") {
  const UnitaryProtocol proto(DrivingResource::ecs(1.1), CavityLoad(0.9));
  const double n0 = excitations(proto.initial_state());
  for (double mu : {0.4, 1.9, 5.0}) {
    const StateVector s = proto.joint_state(mu, 0.8 * mu);
    CHECK(std::abs(s.norm() - 1.0) < 1e-9);
    CHECK(std::abs(excitations(s) - n0) < 1e-10);
  }
}

TEST_CASE("evolving before or after tracing the external modes agrees") {
  const CavityLoad load(0.9);
  const double alpha = 0.8;
  const DrivingResource ecs = DrivingResource::ecs(alpha, 12);
  const StateVector joint = with_ground_qubits(load_joint(ecs.state(), load));
  const double mu1 = 1.3, mu2 = 0.6;
  const StateVector full = jc_rotate(jc_rotate(joint, kPair1A, mu1), kPair2B, mu2);
  const DensityOperator via_full = reduced_state(full, {Role::Qubit1, Role::Qubit2});
  const DensityOperator via_purified = UnitaryProtocol(ecs, load).qubits(mu1, mu2);
  CHECK(oracle::max_abs(via_full.matrix() - via_purified.matrix()) < 1e-12);

  // Linearity: the ECS is a superposition of NOON components c_n (|n0> + |0n>).
  const int d = ecs.truncation();
  const double n_alpha = ecs_normalization(alpha);
  Vector sum = Vector::Zero(full.amplitudes().size());
  for (int n = 0; n < d; ++n) {
    const double c = n_alpha * std::exp(-alpha * alpha / 2 + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
    Vector comp = Vector::Zero(d * d);
    comp[n * d] += c;
    comp[n] += c;
    const StateVector part = with_ground_qubits(load_joint(StateVector(ecs.state().layout(), comp), load));
    sum += jc_rotate(jc_rotate(part, kPair1A, mu1), kPair2B, mu2).amplitudes();
  }
  CHECK((sum - full.amplitudes()).norm() < 1e-13);
}

TEST_CASE("NOON resources beyond one photon never entangle the qubits") {
  for (int n : {2, 3, 4}) {
    const UnitaryProtocol proto(DrivingResource::noon(n), CavityLoad(0.9));
    for (int k = 0; k < 25; ++k) {
      const double mu = 0.25 * k;
      CHECK(negativity(proto.qubits(mu, mu)) == 0.0);
    }
  }
}

TEST_CASE("integrator recovers after a stop a rounding error past the previous one") {
  DormandPrince ode([](double, const Vector& y, Vector& dy) { dy = cplx(0.0, -1.0) * y; }, OdeOptions{1e-10, 1e-10});
  Vector y0(1);
  y0[0] = 1.0;
  ode.reset(0.0, y0);
  ode.advance_to(0.027);
  ode.advance_to(std::nextafter(0.027, 1.0));
  ode.advance_to(2.0);
  CHECK(std::abs(ode.y()[0] - std::exp(cplx(0.0, -2.0))) < 1e-8);
  CHECK(ode.accepted_steps() < 500);
}
