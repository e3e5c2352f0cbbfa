#pragma once

// Lossless qubit-cavity evolution.
//
// Each qubit j couples to its cavity through H_j(t) = Omega_j(t) X_j with the
// fixed generator X_j = sigma_+ k_j + sigma_- k_j^dagger. Since H_j commutes
// with itself at all times, U_j(t) = exp(-i mu_j(t) X_j) with pulse area
// mu_j(t). jc_rotate applies that closed form; ode_propagate integrates the
// Schroedinger equation directly and serves as its oracle.

#include "flyq/coupling.hpp"
#include "flyq/hilbert.hpp"
#include "flyq/ode.hpp"
#include "flyq/resources.hpp"

namespace flyq {

struct JCPair {
  Role qubit;
  Role cavity;
};

inline constexpr JCPair kPair1A{Role::Qubit1, Role::CavityA};
inline constexpr JCPair kPair2B{Role::Qubit2, Role::CavityB};

/// Throws TruncationError if |1, d-1> of the pair (whose partner |0, d> is
/// outside the space) carries more than 1e-10 population.
void require_no_leakage(const StateVector& state, JCPair pair);

/// exp(-i mu X) on the (qubit, cavity) pair. Throws TruncationError if
/// |1, d-1> (whose partner |0, d> is outside the space) carries more than
/// 1e-10 population.
StateVector jc_rotate(const StateVector& state, JCPair pair, double mu);

/// Integrates i d/dt psi = Omega(t) X psi from t = 0 to t_final with
/// rtol = atol = tol. Throws StiffnessError on step-size underflow.
StateVector ode_propagate(const StateVector& state, JCPair pair, const CouplingProfile& profile,
                          double t_final, double tol);

/// Layout {Qubit1, Qubit2, CavityA, CavityB, Purifier} with both qubits in
/// |0> and the cavities holding `cavities` (layout {CavityA, CavityB, Purifier}).
StateVector with_ground_qubits(const StateVector& cavities);

/// Loaded cavities plus ground-state qubits, ready to be evolved. The
/// purification keeps the external Fock support, so exact zeros of the
/// reduced qubit state survive.
class UnitaryProtocol {
 public:
  UnitaryProtocol(const DrivingResource& resource, const CavityLoad& load);

  const StateVector& initial_state() const { return initial_; }

  StateVector joint_state(double mu1, double mu2) const;
  /// Reduced two-qubit state, layout {Qubit1, Qubit2}.
  DensityOperator qubits(double mu1, double mu2) const;

 private:
  StateVector initial_;
};

/// Reduced qubit state at time t for two atoms following their profiles.
DensityOperator evolve_protocol(const DrivingResource& resource, const CavityLoad& load,
                                const CouplingProfile& profile1, const CouplingProfile& profile2, double t);

/// Single-photon NOON driving: the state with weight T S/2 on |10>, |01> and
/// their coherence, 1 - T S on |00>, where S = sin^2 mu.
DensityOperator noon1_closed_form(double transmittivity, double mu);

/// Smallest s with exp(-alpha^2) alpha^{2s} / s! < 1e-14.
int ecs_series_cutoff(double alpha);

/// Series closed form for ECS driving. `cutoff` = 0 picks ecs_series_cutoff;
/// a cutoff whose tail exceeds 1e-12 throws TruncationError.
DensityOperator ecs_closed_form(double alpha, double transmittivity, double mu, int cutoff = 0);

/// Two-qubit layout {Qubit1(2), Qubit2(2)}.
const SpaceLayout& two_qubit_layout();

}  // namespace flyq
