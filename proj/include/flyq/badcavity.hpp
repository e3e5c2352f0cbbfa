#pragma once

// Dissipation-dominated regime: the cavity fields are eliminated and the two
// qubits see an effective bath fixed by the driving field's covariance matrix.
//
// Quadratures x = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2)), so
// the vacuum has variance 1/2. Time is measured in units of the effective
// rate (gamma t).

#include <vector>

#include <Eigen/Dense>

#include "flyq/hilbert.hpp"
#include "flyq/resources.hpp"

namespace flyq {

/// Symmetrized second moments Tr[rho {q_i, q_j}/2] over (x_A, p_A, x_B, p_B).
/// Not mean-subtracted.
struct CovarianceMatrix {
  Eigen::Matrix4d m;

  /// Smallest eigenvalue of M + (i/2) Sigma (+) Sigma; >= 0 for physical states.
  double uncertainty_margin() const;
};

struct KossakowskiMatrix {
  Eigen::Matrix4cd k;
  double gamma;
};

/// 16x16 superoperator on row-major vectorized two-qubit density matrices
/// (ascending basis order).
struct ReducedGenerator {
  Eigen::Matrix<cplx, 16, 16> l;
};

/// Two-mode moments. The modes are (CavityA, CavityB) if present, otherwise
/// (ExternalA, ExternalB); other factors are traced out. Only lowering
/// operators enter the sums, so the result is exact for the given vector.
CovarianceMatrix covariance_of(const StateVector& psi);
CovarianceMatrix covariance_of(const DensityOperator& rho);

/// Closed form for the entangled coherent state N_alpha(|alpha,0> + |0,alpha>).
CovarianceMatrix ecs_covariance_closed(double alpha);

/// Covariance of the resource's external field.
CovarianceMatrix driving_covariance(const DrivingResource& resource);

/// K = gamma (M + (i/2) Sigma (+) Sigma), Sigma = [[0, 1], [-1, 0]].
KossakowskiMatrix kossakowski(const CovarianceMatrix& m, double gamma = 1.0);

/// sum_ab K_ab (O_a rho O_b - {O_b O_a, rho}/2) with
/// O = (sigma_x (x) 1, sigma_y (x) 1, 1 (x) sigma_x, 1 (x) sigma_y).
ReducedGenerator reduced_generator(const KossakowskiMatrix& k);

/// exp(L t) rho0 at each grid time. Every sample is checked for physicality.
std::vector<DensityOperator> evolve_reduced(const DensityOperator& rho0, const ReducedGenerator& gen,
                                            const std::vector<double>& gamma_t);

/// Unique kernel element of the generator, normalized to unit trace.
/// Throws SteadyStateError unless exactly one eigenvalue has |lambda| < 1e-9.
DensityOperator steady_state(const ReducedGenerator& gen);

/// |00><00| on the two-qubit layout.
DensityOperator ground_qubits();

/// Row-major vec and its inverse for 4x4 matrices.
Eigen::Matrix<cplx, 16, 1> vectorize(const Matrix& rho);
Matrix unvectorize(const Eigen::Matrix<cplx, 16, 1>& v);

}  // namespace flyq
