#include <doctest.h>

#include <random>

#include "flyq/errors.hpp"
#include "flyq/measures.hpp"
#include "flyq/trajectories.hpp"
#include "oracles.hpp"

using namespace flyq;

namespace {

CouplingProfile fig2a_profile() {
  return CouplingProfile::hermite_gauss(5.9e3, ModeGeometry{2, 0, 10e-6}, FreeFall{-40e-6, 9.82});
}

StateVector noon1_initial() {
  return with_ground_qubits(purify(load_cavities(DrivingResource::noon(1), CavityLoad(0.9))));
}

std::vector<double> grid(double t_end, int n) {
  std::vector<double> t;
  for (int k = 0; k <= n; ++k) t.push_back(t_end * k / n);
  return t;
}

// sigma_+ (x) k + h.c. on (qubit, mode) inside Q1 (x) Q2 (x) A(d) (x) B(d).
Matrix jc_generator(int qubit, int d) {
  Matrix sp = Matrix::Zero(2, 2);
  sp(1, 0) = 1.0;
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix id = Matrix::Identity(d, d);
  const Matrix k = oracle::lowering(d);
  const Matrix x = qubit == 0
                       ? oracle::kron(oracle::kron(oracle::kron(sp, i2), k), id)
                       : oracle::kron(oracle::kron(oracle::kron(i2, sp), id), k);
  return x + x.adjoint();
}

}  // namespace

TEST_CASE("trajectory seeds") {
  CHECK(trajectory_seed(1, 0) == trajectory_seed(1, 0));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(2, 0));
}

TEST_CASE("no damping reproduces the unitary evolution") {
  const CouplingProfile p = fig2a_profile();
  const std::vector<DrivenPair> pairs{{kPair1A, p}, {kPair2B, p}};
  JumpConfig cfg{0.0, 3, 9, 1e-10, grid(p.exit_time(), 20)};
  const EnsembleEstimate est = run_ensemble(noon1_initial(), pairs, cfg);
  const std::vector<double> mu = p.pulse_areas(cfg.sample_times);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    CHECK(oracle::max_abs(est.mean_rho[k] - noon1_closed_form(0.9, mu[k]).matrix()) < 1e-8);
    CHECK(est.negativity_stderr[k] < 1e-12);
    CHECK(est.mean_jumps[k] == 0.0);
  }
  const TrajectoryResult one = run_trajectory(noon1_initial(), pairs, cfg, 1);
  CHECK(one.jumps.empty());
}

TEST_CASE("vacuum stays put") {
  const SpaceLayout l{{Role::Qubit1, 2}, {Role::Qubit2, 2}, {Role::CavityA, 3}, {Role::CavityB, 3}};
  const int digits[] = {0, 0, 0, 0};
  const StateVector vac = StateVector::basis(l, digits);
  const std::vector<DrivenPair> pairs{{kPair1A, CouplingProfile::flat(2.0)}, {kPair2B, CouplingProfile::flat(2.0)}};
  const TrajectoryResult r = run_trajectory(vac, pairs, JumpConfig{5.0, 1, 0, 1e-9, grid(3.0, 6)}, 4);
  CHECK(r.jumps.empty());
  for (const auto& s : r.samples) CHECK((s.amplitudes() - vac.amplitudes()).norm() < 1e-14);
}

TEST_CASE("determinism and thread independence") {
  const CouplingProfile p = fig2a_profile();
  const std::vector<DrivenPair> pairs{{kPair1A, p}, {kPair2B, p}};
  JumpConfig cfg{p.max_rate() / 5.0, 24, 77, 1e-9, grid(p.exit_time(), 8)};

  const TrajectoryResult a = run_trajectory(noon1_initial(), pairs, cfg, 1234);
  const TrajectoryResult b = run_trajectory(noon1_initial(), pairs, cfg, 1234);
  CHECK(a.jumps == b.jumps);
  for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].amplitudes() == b.samples[k].amplitudes());

  const EnsembleEstimate e1 = run_ensemble(noon1_initial(), pairs, cfg, 1);
  const EnsembleEstimate e3 = run_ensemble(noon1_initial(), pairs, cfg, 3);
  CHECK(e1.negativity == e3.negativity);
  CHECK(e1.negativity_stderr == e3.negativity_stderr);
  CHECK(e1.mean_jumps == e3.mean_jumps);
  for (std::size_t k = 0; k < e1.mean_rho.size(); ++k) {
    CHECK(e1.mean_rho[k] == e3.mean_rho[k]);
    CHECK(std::abs(e1.mean_rho[k].trace() - 1.0) < 1e-9);
    CHECK(e1.negativity_stderr[k] >= 0.0);
  }
  CHECK(e1.mean_jumps.back() > 0.0);

  JumpConfig single = cfg;
  single.n_traj = 1;
  const EnsembleEstimate s1 = run_ensemble(noon1_initial(), pairs, single);
  const EnsembleEstimate s2 = run_ensemble(noon1_initial(), pairs, single);
  CHECK(s1.negativity == s2.negativity);
}

TEST_CASE("jump times of a decaying mode are exponential with rate 2 Gamma") {
  const SpaceLayout l{{Role::Qubit1, 2}, {Role::CavityA, 2}};
  const int digits[] = {0, 1};
  const StateVector one = StateVector::basis(l, digits);
  const std::vector<DrivenPair> pairs{{kPair1A, CouplingProfile::flat(0.0)}};
  const double gamma = 1.0;
  const JumpConfig cfg{gamma, 1, 0, 1e-10, {25.0}};
  std::vector<double> times;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const TrajectoryResult r = run_trajectory(one, pairs, cfg, trajectory_seed(2024, i));
    REQUIRE(r.jumps.size() == 1);
    CHECK(r.jumps[0].cavity == Role::CavityA);
    times.push_back(r.jumps[0].time);
  }
  const double d = oracle::ks_statistic(times, [&](double t) { return 1.0 - std::exp(-2.0 * gamma * t); });
  CHECK(oracle::ks_pvalue(d, times.size()) > 0.01);
}

TEST_CASE("no-jump evolution never raises the excitation number") {
  const CouplingProfile p = fig2a_profile();
  const std::vector<DrivenPair> pairs{{kPair1A, p}, {kPair2B, p}};
  const StateVector init = with_ground_qubits(purify(load_cavities(DrivingResource::noon(2), CavityLoad(0.9))));
  JumpConfig cfg{p.max_rate() / 3.0, 1, 0, 1e-10, grid(p.exit_time(), 200)};
  const SpaceLayout& l = init.layout();
  Eigen::VectorXd n = occupation(l, Role::CavityA) + occupation(l, Role::CavityB);
  for (Index i = 0; i < l.total_dim(); ++i) n[i] += l.digit(i, 0) + l.digit(i, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TrajectoryResult r = run_trajectory(init, pairs, cfg, seed);
    auto exc = [&](const StateVector& s) { return (s.amplitudes().cwiseAbs2().array() * n.array()).sum(); };
    for (std::size_t k = 1; k < r.samples.size(); ++k) {
      const bool jumped = std::any_of(r.jumps.begin(), r.jumps.end(), [&](const JumpRecord& j) {
        return j.time > cfg.sample_times[k - 1] && j.time <= cfg.sample_times[k];
      });
      if (!jumped) CHECK(exc(r.samples[k]) <= exc(r.samples[k - 1]) + 1e-9);
    }
  }
}

TEST_CASE("ensemble mean converges to the Lindblad solution") {
  const int d = 3;
  const double omega = 1.0;
  const double gamma = 0.3;
  const SpaceLayout l{{Role::Qubit1, 2}, {Role::Qubit2, 2}, {Role::CavityA, d}, {Role::CavityB, d}};
  Vector v = Vector::Zero(l.total_dim());
  v[2 * d] = v[2] = 1.0 / std::sqrt(2.0);  // qubits in |00>, cavities (|20> + |02>)/sqrt(2)
  const StateVector init(l, v);

  const std::vector<DrivenPair> pairs{{kPair1A, CouplingProfile::flat(omega)}, {kPair2B, CouplingProfile::flat(omega)}};
  const std::vector<double> times{0.7, 2.0};
  const JumpConfig cfg{gamma, 1, 0, 1e-10, times};

  const Matrix h = omega * (jc_generator(0, d) + jc_generator(1, d));
  const Matrix id2 = Matrix::Identity(2, 2), idd = Matrix::Identity(d, d);
  const Matrix ka = oracle::kron(oracle::kron(oracle::kron(id2, id2), oracle::lowering(d)), idd);
  const Matrix kb = oracle::kron(oracle::kron(oracle::kron(id2, id2), idd), oracle::lowering(d));
  const Matrix lv = oracle::liouvillian(h, {std::sqrt(2.0 * gamma) * ka, std::sqrt(2.0 * gamma) * kb});

  const int n_traj = 5000;
  std::vector<std::vector<Vector>> states(times.size());
  for (int i = 0; i < n_traj; ++i) {
    const TrajectoryResult r = run_trajectory(init, pairs, cfg, trajectory_seed(99, i));
    for (std::size_t k = 0; k < times.size(); ++k) states[k].push_back(r.samples[k].amplitudes());
  }
  auto mean_of = [&](std::size_t k, const std::vector<int>& pick) {
    Matrix m = Matrix::Zero(l.total_dim(), l.total_dim());
    for (int i : pick) m.noalias() += states[k][i] * states[k][i].adjoint();
    return Matrix(m / static_cast<double>(pick.size()));
  };
  std::vector<int> all(n_traj);
  for (int i = 0; i < n_traj; ++i) all[i] = i;

  const Matrix rho0 = init.amplitudes() * init.amplitudes().adjoint();
  Vector vec0(rho0.size());
  for (Index i = 0; i < rho0.rows(); ++i)
    for (Index j = 0; j < rho0.cols(); ++j) vec0[i * rho0.cols() + j] = rho0(i, j);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, n_traj - 1);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Vector vt = oracle::expm_action(lv, vec0, times[k]);
    Matrix exact(rho0.rows(), rho0.cols());
    for (Index i = 0; i < exact.rows(); ++i)
      for (Index j = 0; j < exact.cols(); ++j) exact(i, j) = vt[i * exact.cols() + j];
    CHECK(std::abs(exact.trace() - 1.0) < 1e-10);

    const Matrix mean = mean_of(k, all);
    double sq = 0.0;
    constexpr int kResamples = 40;
    for (int b = 0; b < kResamples; ++b) {
      std::vector<int> idx(n_traj);
      for (int& i : idx) i = pick(rng);
      const double td = oracle::trace_distance(mean_of(k, idx), mean);
      sq += td * td;
    }
    const double se = std::sqrt(sq / kResamples);
    const double td = oracle::trace_distance(mean, exact);
    INFO("t = " << times[k] << " trace distance " << td << " standard error " << se);
    CHECK(td < 3.0 * se);
  }
}

TEST_CASE("damping lowers the transferred entanglement") {
  const CouplingProfile p = fig2a_profile();
  const std::vector<DrivenPair> pairs{{kPair1A, p}, {kPair2B, p}};
  JumpConfig cfg{p.max_rate() / 20.0, 200, 3, 1e-9, {p.exit_time()}};
  const EnsembleEstimate est = run_ensemble(noon1_initial(), pairs, cfg);
  const double lossless = negativity(noon1_closed_form(0.9, p.total_pulse_area()));
  CHECK(est.negativity.back() > 0.0);
  CHECK(est.negativity.back() < lossless);
}

TEST_CASE("invalid trajectory inputs") {
  const std::vector<DrivenPair> pairs{{kPair1A, CouplingProfile::flat(1.0)}};
  const StateVector init = noon1_initial();
  CHECK_THROWS_AS(run_trajectory(init, pairs, JumpConfig{-1.0, 1, 0, 1e-9, {1.0}}, 0), InvalidDimension);
  CHECK_THROWS_AS(run_trajectory(init, pairs, JumpConfig{1.0, 1, 0, 1e-9, {}}, 0), InvalidDimension);
  CHECK_THROWS_AS(run_trajectory(init, pairs, JumpConfig{1.0, 1, 0, 1e-9, {2.0, 1.0}}, 0), InvalidDimension);
  CHECK_THROWS_AS(run_ensemble(init, pairs, JumpConfig{1.0, 0, 0, 1e-9, {1.0}}), InvalidDimension);
}
