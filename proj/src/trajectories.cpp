#include "flyq/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "flyq/errors.hpp"
#include "flyq/measures.hpp"
#include "flyq/ode.hpp"

namespace flyq {

namespace {

const cplx kI(0.0, 1.0);

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1), identical on every platform for a given engine state.
double uniform_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

struct DampedCavity {
  Role role;
  Index stride;
  Eigen::VectorXd occupation;
};

Eigen::Matrix4cd qubit_block(const StateVector& psi) {
  const SpaceLayout& layout = psi.layout();
  if (layout.size() >= 2 && layout.factor(0).role == Role::Qubit1 && layout.factor(1).role == Role::Qubit2) {
    const Index rest = layout.total_dim() / 4;
    const Eigen::Map<const Eigen::Matrix<cplx, 4, Eigen::Dynamic, Eigen::RowMajor>> amp(psi.amplitudes().data(), 4,
                                                                                       rest);
    return (amp * amp.adjoint()) / psi.amplitudes().squaredNorm();
  }
  return reduced_state(psi, {Role::Qubit1, Role::Qubit2}).matrix();
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

TrajectoryResult run_trajectory(const StateVector& initial, std::span<const DrivenPair> pairs,
                                const JumpConfig& config, std::uint64_t seed) {
  const SpaceLayout& layout = initial.layout();
  if (!(config.gamma >= 0.0)) throw InvalidDimension("run_trajectory: gamma must be >= 0");
  if (!(config.tol > 0.0)) throw InvalidDimension("run_trajectory: tol must be > 0");
  if (std::abs(initial.norm() - 1.0) > 1e-9) throw InvalidDimension("run_trajectory: initial state not normalized");
  if (config.sample_times.empty()) throw InvalidDimension("run_trajectory: no sample times");
  for (std::size_t k = 0; k < config.sample_times.size(); ++k) {
    if (config.sample_times[k] < 0.0 || (k > 0 && config.sample_times[k] <= config.sample_times[k - 1])) {
      throw InvalidDimension("run_trajectory: sample times must be strictly ascending and >= 0");
    }
  }

  std::vector<std::vector<LadderPair>> ladders;
  std::vector<DampedCavity> cavities;
  for (const DrivenPair& dp : pairs) {
    require_no_leakage(initial, dp.pair);
    ladders.push_back(ladder_pairs(layout, dp.pair.qubit, dp.pair.cavity));
    const bool seen = std::any_of(cavities.begin(), cavities.end(),
                                  [&](const DampedCavity& c) { return c.role == dp.pair.cavity; });
    if (!seen) {
      cavities.push_back(
          {dp.pair.cavity, layout.stride(layout.position(dp.pair.cavity)), occupation(layout, dp.pair.cavity)});
    }
  }
  Eigen::VectorXd damping = Eigen::VectorXd::Zero(layout.total_dim());
  for (const DampedCavity& c : cavities) damping += config.gamma * c.occupation;

  auto rhs = [&](double t, const Vector& y, Vector& dy) {
    dy = -(damping.cast<cplx>().array() * y.array()).matrix();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const double omega = pairs[j].profile.omega(t);
      if (omega == 0.0) continue;
      const cplx f = -kI * omega;
      for (const LadderPair& p : ladders[j]) {
        dy[p.ground] += f * p.amplitude * y[p.excited];
        dy[p.excited] += f * p.amplitude * y[p.ground];
      }
    }
  };

  const double t_end = config.sample_times.back();
  std::set<double> stop_set(config.sample_times.begin(), config.sample_times.end());
  for (const DrivenPair& dp : pairs) {
    for (double b : dp.profile.breakpoints()) {
      if (b > 0.0 && b < t_end) stop_set.insert(b);
    }
  }
  const std::set<double> samples(config.sample_times.begin(), config.sample_times.end());
  const double time_tol = 1e-10 * std::max(t_end, 1e-300);

  std::mt19937_64 rng(seed);
  double threshold = uniform_open(rng);

  TrajectoryResult result;
  DormandPrince solver(rhs, OdeOptions{config.tol, config.tol});
  solver.reset(0.0, initial.amplitudes());

  for (double stop : stop_set) {
    while (solver.t() < stop) {
      solver.step(stop);
      if (solver.y().squaredNorm() >= threshold) continue;

      // Locate the crossing ||psi(t*)||^2 = threshold inside the last step.
      double lo = solver.t_prev();
      double hi = solver.t();
      while (hi - lo > time_tol) {
        const double mid = 0.5 * (lo + hi);
        if (solver.dense(mid).squaredNorm() >= threshold) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double t_jump = hi;
      solver.reset(solver.t_prev(), solver.y_prev());
      solver.advance_to(t_jump);
      const Vector& psi = solver.y();

      std::vector<double> weights;
      double total = 0.0;
      for (const DampedCavity& c : cavities) {
        const double w = (c.occupation.array() * psi.cwiseAbs2().array()).sum();
        weights.push_back(w);
        total += w;
      }
      if (total <= 0.0) {
        // Numerical drift without photons to lose; move the threshold on.
        threshold = uniform_open(rng);
        solver.reset(t_jump, psi);
        continue;
      }
      const double pick = uniform_open(rng) * total;
      std::size_t which = 0;
      for (double acc = weights[0]; acc < pick && which + 1 < weights.size(); acc += weights[++which]) {
      }
      const DampedCavity& c = cavities[which];
      Vector jumped = Vector::Zero(psi.size());
      for (Index i = 0; i < psi.size(); ++i) {
        const double n = c.occupation[i];
        if (n > 0.0) jumped[i - c.stride] = std::sqrt(n) * psi[i];
      }
      jumped /= jumped.norm();
      result.jumps.push_back({t_jump, c.role});
      threshold = uniform_open(rng);
      solver.reset(t_jump, std::move(jumped));
    }
    if (samples.count(stop)) {
      result.samples.emplace_back(layout, solver.y() / solver.y().norm());
    }
  }
  return result;
}

EnsembleEstimate run_ensemble(const StateVector& initial, std::span<const DrivenPair> pairs,
                              const JumpConfig& config, int threads) {
  if (config.n_traj < 1) throw InvalidDimension("run_ensemble: n_traj must be >= 1");
  const std::size_t n = static_cast<std::size_t>(config.n_traj);
  const std::size_t ns = config.sample_times.size();

  std::vector<std::vector<Eigen::Matrix4cd>> rho(n);
  std::vector<std::vector<int>> jumps(n);

  auto work = [&](std::size_t index) {
    const TrajectoryResult r = run_trajectory(initial, pairs, config, trajectory_seed(config.master_seed, index));
    rho[index].reserve(ns);
    jumps[index].assign(ns, 0);
    for (std::size_t s = 0; s < ns; ++s) {
      rho[index].push_back(qubit_block(r.samples[s]));
      for (const JumpRecord& j : r.jumps) {
        if (j.time <= config.sample_times[s]) ++jumps[index][s];
      }
    }
  };

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) work(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EnsembleEstimate est;
  est.times = config.sample_times;
  std::vector<Eigen::Matrix4cd> mean(ns, Eigen::Matrix4cd::Zero());
  for (std::size_t s = 0; s < ns; ++s) {
    double jump_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mean[s] += rho[i][s];
      jump_sum += jumps[i][s];
    }
    mean[s] /= static_cast<double>(n);
    est.mean_rho.emplace_back(mean[s]);
    est.negativity.push_back(negativity(Matrix(mean[s])));
    est.mean_jumps.push_back(jump_sum / static_cast<double>(n));
  }

  // Bootstrap the negativity of the mean state.
  est.negativity_stderr.assign(ns, 0.0);
  if (n >= 2) {
    std::mt19937_64 rng(splitmix64(config.master_seed ^ 0xb0075742a9ULL));
    std::vector<std::vector<double>> draws(ns, std::vector<double>(kBootstrapResamples));
    std::vector<std::size_t> pick(n);
    for (int b = 0; b < kBootstrapResamples; ++b) {
      for (auto& p : pick) p = static_cast<std::size_t>(rng() % n);
      for (std::size_t s = 0; s < ns; ++s) {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        for (std::size_t p : pick) m += rho[p][s];
        m /= static_cast<double>(n);
        draws[s][b] = negativity(Matrix(m));
      }
    }
    // Two-pass variance; the one-pass form cancels badly when the draws agree.
    const double nb = kBootstrapResamples;
    for (std::size_t s = 0; s < ns; ++s) {
      double mean_v = 0.0;
      for (double v : draws[s]) mean_v += v;
      mean_v /= nb;
      double var = 0.0;
      for (double v : draws[s]) var += (v - mean_v) * (v - mean_v);
      est.negativity_stderr[s] = std::sqrt(var / (nb - 1.0));
    }
  }
  return est;
}

}  // namespace flyq
