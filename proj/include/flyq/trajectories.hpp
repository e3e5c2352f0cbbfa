#pragma once

// Quantum-jump unraveling of cavity damping during the atoms' transit.
//
// Between jumps the state follows i d/dt psi = H_eff(t) psi with
//   H_eff = sum_j Omega_j(t) X_j - i Gamma k_j^dagger k_j,
// so ||psi||^2 decays. A jump fires when ||psi||^2 falls to a uniform
// threshold drawn beforehand (waiting-time algorithm); the crossing time is
// located by bisection on the integrator's dense output. With this
// non-Hermitian term, <n> of a freely decaying cavity falls at rate 2 Gamma.

#include <cstdint>
#include <span>
#include <vector>

#include "flyq/coupling.hpp"
#include "flyq/hilbert.hpp"
#include "flyq/unitary_dynamics.hpp"

namespace flyq {

struct DrivenPair {
  JCPair pair;
  CouplingProfile profile;
};

struct JumpConfig {
  double gamma = 0.0;  // cavity damping rate (rad/s), same for every cavity
  int n_traj = 1;
  std::uint64_t master_seed = 0;
  double tol = 1e-9;  // integrator rtol = atol
  std::vector<double> sample_times;  // ascending, >= 0
};

struct JumpRecord {
  double time;
  Role cavity;

  bool operator==(const JumpRecord&) const = default;
};

struct TrajectoryResult {
  std::vector<StateVector> samples;  // normalized, one per sample time
  std::vector<JumpRecord> jumps;
};

/// Per-trajectory seed derived from the master seed and trajectory index.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

/// One deterministic quantum-jump trajectory. Every cavity named in `pairs`
/// is damped. Throws StiffnessError or TruncationError.
TrajectoryResult run_trajectory(const StateVector& initial, std::span<const DrivenPair> pairs,
                                const JumpConfig& config, std::uint64_t seed);

struct EnsembleEstimate {
  std::vector<double> times;
  std::vector<Matrix> mean_rho;  // two-qubit, ascending basis order
  std::vector<double> negativity;  // of the mean state
  std::vector<double> negativity_stderr;  // bootstrap over trajectories
  std::vector<double> mean_jumps;  // jumps up to each sample time
};

/// Runs config.n_traj trajectories (optionally on `threads` workers; 0 = all
/// hardware threads) and averages the reduced two-qubit states. Negativity
/// is taken on the ensemble-mean state; its standard error comes from 200
/// bootstrap resamples of the trajectories. Output is independent of the
/// thread count.
EnsembleEstimate run_ensemble(const StateVector& initial, std::span<const DrivenPair> pairs,
                              const JumpConfig& config, int threads = 1);

inline constexpr int kBootstrapResamples = 200;

}  // namespace flyq
