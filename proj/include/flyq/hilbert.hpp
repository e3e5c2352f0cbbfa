#pragma once

// Dense linear algebra over tensor products of qubits and truncated bosonic
// modes.
//
// Basis ordering is row-major: the LAST factor of a layout varies fastest.
// For two qubits this gives |00>, |01>, |10>, |11> (index 2*q1 + q2), i.e.
// ascending order. Matrices printed in the descending order
// {|11>, |10>, |01>, |00>} go through to_descending_order().

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace flyq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class Role {
  Qubit1,
  Qubit2,
  CavityA,
  CavityB,
  ExternalA,
  ExternalB,
  Purifier,
};

std::string_view role_name(Role role);

struct Factor {
  Role role;
  int dim;

  bool operator==(const Factor&) const = default;
};

/// Ordered list of tensor factors. Roles are unique, dimensions >= 2.
class SpaceLayout {
 public:
  SpaceLayout() = default;
  SpaceLayout(std::initializer_list<Factor> factors);
  explicit SpaceLayout(std::vector<Factor> factors);

  std::size_t size() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  Index total_dim() const { return total_; }
  Index stride(std::size_t i) const { return strides_[i]; }

  bool contains(Role role) const;
  /// Position of `role` in the layout; throws InvalidDimension if absent.
  std::size_t position(Role role) const;
  int dim(Role role) const { return factors_[position(role)].dim; }

  /// Kept factors in their original order.
  SpaceLayout subset(std::span<const Role> keep) const;

  /// Digit of factor `i` in the basis index `index`.
  int digit(Index index, std::size_t i) const {
    return static_cast<int>((index / strides_[i]) % factors_[i].dim);
  }

  bool operator==(const SpaceLayout& other) const { return factors_ == other.factors_; }

 private:
  void init();

  std::vector<Factor> factors_;
  std::vector<Index> strides_;
  Index total_ = 1;
};

/// Pure state. Unit norm except mid-trajectory, where the norm lies in (0, 1].
class StateVector {
 public:
  StateVector(SpaceLayout layout, Vector amplitudes);

  /// Product basis state with the given digit per factor.
  static StateVector basis(const SpaceLayout& layout, std::span<const int> digits);

  const SpaceLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amps_; }
  cplx operator[](Index i) const { return amps_[i]; }
  double norm() const { return amps_.norm(); }
  StateVector normalized() const;

 private:
  SpaceLayout layout_;
  Vector amps_;
};

struct PhysicalityReport {
  double hermiticity;  // max |rho - rho^dagger|
  double trace;        // |tr rho - 1|
  double min_eigenvalue;
};

class DensityOperator {
 public:
  DensityOperator(SpaceLayout layout, Matrix matrix);
  static DensityOperator from_pure(const StateVector& psi);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return rho_; }
  cplx operator()(Index i, Index j) const { return rho_(i, j); }

  PhysicalityReport physicality() const;
  /// Project-wide tolerances: hermiticity 1e-10, trace 1e-9, min eigenvalue -1e-8.
  bool is_physical() const;

 private:
  SpaceLayout layout_;
  Matrix rho_;
};

class OperatorMatrix {
 public:
  OperatorMatrix(SpaceLayout layout, Matrix matrix);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return op_; }

 private:
  SpaceLayout layout_;
  Matrix op_;
};

/// Truncated ladder operator: (n-1, n) entries sqrt(n).
Matrix annihilation(int d);

/// Single-factor operator acting on `target`, identity elsewhere.
OperatorMatrix embed(const Matrix& op, Role target, const SpaceLayout& layout);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const Role> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<Role> keep);

/// Reduced state of a pure state; cheaper than going through from_pure.
/// The input need not be normalized: the result is divided by its norm squared.
DensityOperator reduced_state(const StateVector& psi, std::span<const Role> keep);
DensityOperator reduced_state(const StateVector& psi, std::initializer_list<Role> keep);

OperatorMatrix partial_transpose(const DensityOperator& rho, Role factor);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Eigenvalues of a Hermitian matrix (ascending). The single eigen primitive
/// behind positivity checks, entropies and negativity.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Reorders a two-qubit matrix between ascending and descending basis order.
/// The permutation is an involution, so the same call converts back.
Matrix to_descending_order(const Matrix& two_qubit);

/// Nonzero matrix elements of sigma_+ k + sigma_- k^dagger restricted to one
/// excitation manifold: `ground` indexes |0, n>, `excited` indexes |1, n-1>,
/// and the element between them is sqrt(n).
struct LadderPair {
  Index ground;
  Index excited;
  double amplitude;
};

std::vector<LadderPair> ladder_pairs(const SpaceLayout& layout, Role qubit, Role mode);

/// Diagonal of the number operator of `mode` on the full space.
Eigen::VectorXd occupation(const SpaceLayout& layout, Role mode);

}  // namespace flyq
