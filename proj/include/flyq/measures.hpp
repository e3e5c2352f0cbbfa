#pragma once

// Entanglement and quantum-correlation measures for two qubits. Entropies
// are in bits.

#include "flyq/hilbert.hpp"

namespace flyq {

/// max(0, -2 lambda_min) of the partial transpose (on qubit 2).
double negativity(const DensityOperator& rho);
double negativity(const Matrix& two_qubit);

/// -sum lambda log2 lambda, with 0 log 0 = 0.
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(const Matrix& rho);

/// Rank-1 projective measurement on one qubit along the Bloch direction
/// (theta, phi); outcome projectors |n><n| and 1 - |n><n|.
struct MeasurementFamily {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Matrix2cd projector(int outcome) const;
};

struct DiscordResult {
  double discord;
  double mutual_information;
  double classical_correlation;
  MeasurementFamily optimum;
};

/// Ollivier-Zurek discord with the measurement on `measured` (Qubit1 or
/// Qubit2): I(rho) - max_meas [S(rho_other) - sum_k p_k S(rho_k)].
/// The maximum is taken over rank-1 projective measurements by a 64x64
/// (theta, phi) grid scan followed by Nelder-Mead refinement to 1e-8.
/// Throws OptimizerError if the result is below -1e-7; values in
/// (-1e-7, 0) are clamped to 0.
DiscordResult discord_details(const DensityOperator& rho, Role measured = Role::Qubit2);
double discord(const DensityOperator& rho, Role measured = Role::Qubit2);

/// Trace distance (1/2) ||a - b||_1 of two Hermitian matrices.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace flyq
