#include <doctest.h>

#include "flyq/errors.hpp"
#include "flyq/resources.hpp"
#include "oracles.hpp"

using namespace flyq;

namespace {

double total_photons(const DensityOperator& rho, Role a, Role b) {
  const Eigen::VectorXd n = occupation(rho.layout(), a) + occupation(rho.layout(), b);
  return (rho.matrix().diagonal().real().array() * n.array()).sum();
}

}  // namespace

TEST_CASE("make_noon") {
  const StateVector s = make_noon(1, 4);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s[1 * 4 + 0] - h) < 1e-15);
  CHECK(std::abs(s[0 * 4 + 1] - h) < 1e-15);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));

  const StateVector vac = make_noon(0, 2);
  CHECK(std::abs(vac[0] - 1.0) < 1e-15);
  CHECK(vac.norm() == doctest::Approx(1.0));

  const StateVector n3 = make_noon(3, 6);
  CHECK(n3.norm() == doctest::Approx(1.0).epsilon(1e-15));
  for (Index i = 0; i < n3.amplitudes().size(); ++i) {
    const bool support = i == 3 * 6 || i == 3;
    CHECK((std::abs(n3[i]) > 0.0) == support);
  }
  CHECK_THROWS_AS(make_noon(3, 3), TruncationError);
  CHECK_THROWS_AS(DrivingResource::noon(2, 2), TruncationError);
  CHECK(DrivingResource::noon(3).truncation() == 4);
}

TEST_CASE("make_ecs") {
  const StateVector tiny = make_ecs(1e-8, 4);
  CHECK(std::abs(tiny[0] - 1.0) < 1e-7);
  CHECK(make_ecs(1.1, 18).norm() == doctest::Approx(1.0).epsilon(1e-9));

  const StateVector s = make_ecs(1.0, 16);
  const double n1 = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-1.0)));
  CHECK(ecs_normalization(1.0) == doctest::Approx(n1).epsilon(1e-15));
  CHECK(std::abs(s[1 * 16 + 0] - n1 * std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(s[0 * 16 + 2] - n1 * std::exp(-0.5) / std::sqrt(2.0)) < 1e-15);

  CHECK_THROWS_AS(make_ecs(2.0, 5), TruncationError);
  try {
    make_ecs(2.0, 5);
  } catch (const TruncationError& e) {
    CHECK(e.required() == coherent_min_truncation(2.0));
  }
  CHECK(coherent_min_truncation(1.1) <= 18);
  CHECK(coherent_tail(1.1, coherent_min_truncation(1.1)) < 1e-10);
}

TEST_CASE("coherent tail against direct sum") {
  for (double alpha : {0.3, 1.0, 2.5}) {
    for (int d : {3, 8, 15}) {
      double head = 0.0;
      double term = std::exp(-alpha * alpha);
      for (int n = 0; n < d; ++n) {
        head += term;
        term *= alpha * alpha / (n + 1);
      }
      CHECK(coherent_tail(alpha, d) == doctest::Approx(1.0 - head).epsilon(1e-6));
    }
  }
}

TEST_CASE("beam splitter loading, NOON N=1") {
  const DensityOperator rho = load_cavities(DrivingResource::noon(1), CavityLoad(0.9));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.1;
  expected(1, 1) = expected(2, 2) = expected(1, 2) = expected(2, 1) = 0.45;
  CHECK(oracle::max_abs(rho.matrix() - expected) < 1e-15);
  CHECK(rho.is_physical());
}

TEST_CASE("beam splitter limits") {
  for (const DrivingResource& r : {DrivingResource::noon(2), DrivingResource::ecs(0.8)}) {
    const DensityOperator full = load_cavities(r, CavityLoad(1.0));
    const Matrix pure = DensityOperator::from_pure(r.state()).matrix();
    CHECK(oracle::max_abs(full.matrix() - pure) < 1e-11);
    const DensityOperator none = load_cavities(r, CavityLoad(0.0));
    CHECK(std::abs(none(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(none.matrix().trace() - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(CavityLoad(1.5), InvalidDimension);
}

TEST_CASE("NOON closed form") {
  const DensityOperator n2 = noon_cavity_closed_form(2, 0.9, 3);
  CHECK(n2(2 * 3 + 0, 2 * 3 + 0).real() == doctest::Approx(0.405).epsilon(1e-14));
  CHECK(n2(2 * 3 + 0, 0 * 3 + 2).real() == doctest::Approx(0.405).epsilon(1e-14));

  const DensityOperator n1 = noon_cavity_closed_form(1, 1.0, 2);
  CHECK(std::abs(n1(1, 2) - 0.5) < 1e-15);
  CHECK(std::abs(n1(0, 0)) < 1e-15);

  for (int n = 1; n <= 4; ++n) {
    for (double t : {0.3, 0.9}) {
      const DensityOperator loaded = load_cavities(DrivingResource::noon(n), CavityLoad(t));
      const DensityOperator closed = noon_cavity_closed_form(n, t, n + 1);
      CHECK(oracle::max_abs(loaded.matrix() - closed.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("ECS closed form") {
  const DensityOperator pure = ecs_cavity_closed_form(1.1, 1.0, 18);
  CHECK(oracle::max_abs(pure.matrix() - DensityOperator::from_pure(make_ecs(1.1, 18)).matrix()) < 1e-12);

  // Agreement improves with the cutoff as the truncated tails shrink.
  const DensityOperator loaded = load_cavities(DrivingResource::ecs(1.1, 26), CavityLoad(0.9));
  CHECK(oracle::max_abs(loaded.matrix() - ecs_cavity_closed_form(1.1, 0.9, 26).matrix()) < 1e-12);

  // Cross coherence |1,0><0,1| carries exp(-R alpha^2) relative to the diagonal branch.
  const DensityOperator c = ecs_cavity_closed_form(1.0, 0.9, 16);
  CHECK(std::abs(c(1 * 16 + 0, 0 * 16 + 1) / c(1 * 16 + 0, 1 * 16 + 0) - std::exp(-0.1)) < 1e-12);
}

TEST_CASE("photon bookkeeping through the beam splitters") {
  for (const DrivingResource& r : {DrivingResource::noon(3), DrivingResource::ecs(1.1)}) {
    const double n_in = total_photons(DensityOperator::from_pure(r.state()), Role::ExternalA, Role::ExternalB);
    for (double t : {0.0, 0.35, 0.9, 1.0}) {
      const DensityOperator rho = load_cavities(r, CavityLoad(t));
      CHECK(rho.is_physical());
      CHECK(std::abs(total_photons(rho, Role::CavityA, Role::CavityB) - t * n_in) < 1e-10);
    }
  }
}

TEST_CASE("purifications reproduce the cavity state") {
  const CavityLoad load(0.9);
  for (const DrivingResource& r : {DrivingResource::noon(2), DrivingResource::ecs(0.9)}) {
    const DensityOperator rho = load_cavities(r, load);
    const StateVector p1 = purified_cavities(r, load);
    const StateVector p2 = purify(rho);
    CHECK(p1.layout().factor(2).role == Role::Purifier);
    CHECK(oracle::max_abs(reduced_state(p1, {Role::CavityA, Role::CavityB}).matrix() - rho.matrix()) < 1e-13);
    CHECK(oracle::max_abs(reduced_state(p2, {Role::CavityA, Role::CavityB}).matrix() - rho.matrix()) < 1e-12);
  }
  // Two coherent branches: rank 2 once truncation residue is cut off.
  CHECK(purify(load_cavities(DrivingResource::ecs(1.1), load), 1e-10).layout().dim(Role::Purifier) == 2);
}
