#include "flyq/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flyq/errors.hpp"

namespace flyq {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Qubit1: return "qubit1";
    case Role::Qubit2: return "qubit2";
    case Role::CavityA: return "cavityA";
    case Role::CavityB: return "cavityB";
    case Role::ExternalA: return "external-a";
    case Role::ExternalB: return "external-b";
    case Role::Purifier: return "purifier";
  }
  return "?";
}

SpaceLayout::SpaceLayout(std::initializer_list<Factor> factors) : factors_(factors) { init(); }

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) { init(); }

void SpaceLayout::init() {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].dim < 2) {
      throw InvalidDimension("factor " + std::string(role_name(factors_[i].role)) +
                             " has dimension " + std::to_string(factors_[i].dim) + " < 2");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].role == factors_[i].role) {
        throw InvalidDimension("duplicate factor role " + std::string(role_name(factors_[i].role)));
      }
    }
  }
  strides_.assign(factors_.size(), 1);
  total_ = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    strides_[k] = total_;
    total_ *= factors_[k].dim;
  }
}

bool SpaceLayout::contains(Role role) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [role](const Factor& f) { return f.role == role; });
}

std::size_t SpaceLayout::position(Role role) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].role == role) return i;
  }
  throw InvalidDimension("layout has no factor " + std::string(role_name(role)));
}

SpaceLayout SpaceLayout::subset(std::span<const Role> keep) const {
  std::vector<Factor> kept;
  for (Role r : keep) (void)position(r);
  for (const Factor& f : factors_) {
    if (std::find(keep.begin(), keep.end(), f.role) != keep.end()) kept.push_back(f);
  }
  return SpaceLayout(std::move(kept));
}

StateVector::StateVector(SpaceLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim()) {
    throw InvalidDimension("state has " + std::to_string(amps_.size()) +
                           " amplitudes, layout needs " + std::to_string(layout_.total_dim()));
  }
}

StateVector StateVector::basis(const SpaceLayout& layout, std::span<const int> digits) {
  if (digits.size() != layout.size()) throw InvalidDimension("basis: wrong number of digits");
  Index index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= layout.factor(i).dim) {
      throw InvalidDimension("basis: digit out of range");
    }
    index += digits[i] * layout.stride(i);
  }
  Vector v = Vector::Zero(layout.total_dim());
  v[index] = 1.0;
  return StateVector(layout, std::move(v));
}

StateVector StateVector::normalized() const { return StateVector(layout_, amps_ / amps_.norm()); }

DensityOperator::DensityOperator(SpaceLayout layout, Matrix matrix)
    : layout_(std::move(layout)), rho_(std::move(matrix)) {
  if (rho_.rows() != layout_.total_dim() || rho_.cols() != layout_.total_dim()) {
    throw InvalidDimension("density matrix shape does not match layout");
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  return DensityOperator(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

PhysicalityReport DensityOperator::physicality() const {
  PhysicalityReport r;
  r.hermiticity = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  r.trace = std::abs(rho_.trace() - cplx(1.0));
  Matrix h = 0.5 * (rho_ + rho_.adjoint());
  r.min_eigenvalue = hermitian_eigenvalues(h).minCoeff();
  return r;
}

bool DensityOperator::is_physical() const {
  const auto r = physicality();
  return r.hermiticity < 1e-10 && r.trace < 1e-9 && r.min_eigenvalue > -1e-8;
}

OperatorMatrix::OperatorMatrix(SpaceLayout layout, Matrix matrix)
    : layout_(std::move(layout)), op_(std::move(matrix)) {
  if (op_.rows() != layout_.total_dim() || op_.cols() != layout_.total_dim()) {
    throw InvalidDimension("operator shape does not match layout");
  }
}

Matrix annihilation(int d) {
  if (d < 2) throw InvalidDimension("annihilation: dimension " + std::to_string(d) + " < 2");
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix embed(const Matrix& op, Role target, const SpaceLayout& layout) {
  const std::size_t pos = layout.position(target);
  const int d = layout.factor(pos).dim;
  if (op.rows() != d || op.cols() != d) {
    throw InvalidDimension("embed: operator is " + std::to_string(op.rows()) + "x" +
                           std::to_string(op.cols()) + ", factor has dimension " +
                           std::to_string(d));
  }
  const Index n = layout.total_dim();
  const Index stride = layout.stride(pos);
  Matrix full = Matrix::Zero(n, n);
  for (Index col = 0; col < n; ++col) {
    const int in = layout.digit(col, pos);
    const Index base = col - in * stride;
    for (int out = 0; out < d; ++out) {
      const cplx v = op(out, in);
      if (v != cplx(0.0)) full(base + out * stride, col) = v;
    }
  }
  return OperatorMatrix(layout, std::move(full));
}

namespace {

// Splits each full basis index into a (kept, traced) pair of composite indices.
struct Split {
  std::vector<Index> kept;
  std::vector<Index> traced;
  Index kept_dim = 1;
  Index traced_dim = 1;
};

Split split_indices(const SpaceLayout& layout, std::span<const Role> keep) {
  if (keep.empty()) throw InvalidDimension("partial trace: empty keep set");
  std::vector<bool> is_kept(layout.size(), false);
  for (Role r : keep) is_kept[layout.position(r)] = true;

  Split s;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    (is_kept[i] ? s.kept_dim : s.traced_dim) *= layout.factor(i).dim;
  }
  const Index n = layout.total_dim();
  s.kept.resize(n);
  s.traced.resize(n);
  for (Index idx = 0; idx < n; ++idx) {
    Index k = 0;
    Index t = 0;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const int dgt = layout.digit(idx, i);
      if (is_kept[i]) {
        k = k * layout.factor(i).dim + dgt;
      } else {
        t = t * layout.factor(i).dim + dgt;
      }
    }
    s.kept[idx] = k;
    s.traced[idx] = t;
  }
  return s;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho, std::span<const Role> keep) {
  const SpaceLayout& layout = rho.layout();
  const Split s = split_indices(layout, keep);
  SpaceLayout out_layout = layout.subset(keep);
  if (s.traced_dim == 1) return DensityOperator(std::move(out_layout), rho.matrix());

  Matrix out = Matrix::Zero(s.kept_dim, s.kept_dim);
  const Index n = layout.total_dim();
  const Matrix& m = rho.matrix();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (s.traced[i] == s.traced[j]) out(s.kept[i], s.kept[j]) += m(i, j);
    }
  }
  return DensityOperator(std::move(out_layout), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<Role> keep) {
  return partial_trace(rho, std::span<const Role>(keep.begin(), keep.size()));
}

DensityOperator reduced_state(const StateVector& psi, std::span<const Role> keep) {
  const SpaceLayout& layout = psi.layout();
  const Split s = split_indices(layout, keep);
  Matrix amp = Matrix::Zero(s.kept_dim, s.traced_dim);
  const Vector& v = psi.amplitudes();
  for (Index i = 0; i < layout.total_dim(); ++i) amp(s.kept[i], s.traced[i]) = v[i];
  Matrix rho = amp * amp.adjoint();
  rho /= v.squaredNorm();
  return DensityOperator(layout.subset(keep), std::move(rho));
}

DensityOperator reduced_state(const StateVector& psi, std::initializer_list<Role> keep) {
  return reduced_state(psi, std::span<const Role>(keep.begin(), keep.size()));
}

OperatorMatrix partial_transpose(const DensityOperator& rho, Role factor) {
  const SpaceLayout& layout = rho.layout();
  const std::size_t pos = layout.position(factor);
  const Index stride = layout.stride(pos);
  const Index n = layout.total_dim();
  const Matrix& m = rho.matrix();
  Matrix out(n, n);
  for (Index j = 0; j < n; ++j) {
    const int dj = layout.digit(j, pos);
    for (Index i = 0; i < n; ++i) {
      const int di = layout.digit(i, pos);
      // Swap the digits of `factor` between row and column.
      const Index i2 = i + (dj - di) * stride;
      const Index j2 = j + (di - dj) * stride;
      out(i2, j2) = m(i, j);
    }
  }
  return OperatorMatrix(layout, std::move(out));
}

namespace {

SpaceLayout concat(const SpaceLayout& a, const SpaceLayout& b) {
  std::vector<Factor> f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  return SpaceLayout(std::move(f));
}

}  // namespace

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SpaceLayout layout = concat(a.layout(), b.layout());
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return DensityOperator(std::move(layout), std::move(out));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  SpaceLayout layout = concat(a.layout(), b.layout());
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  Vector out(x.size() * y.size());
  for (Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
  return StateVector(std::move(layout), std::move(out));
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix to_descending_order(const Matrix& two_qubit) {
  if (two_qubit.rows() != 4 || two_qubit.cols() != 4) {
    throw InvalidDimension("to_descending_order: expected a 4x4 matrix");
  }
  return two_qubit.colwise().reverse().rowwise().reverse();
}

std::vector<LadderPair> ladder_pairs(const SpaceLayout& layout, Role qubit, Role mode) {
  const std::size_t q = layout.position(qubit);
  const std::size_t c = layout.position(mode);
  if (layout.factor(q).dim != 2) throw InvalidDimension("ladder_pairs: qubit factor must be 2-level");
  const Index sq = layout.stride(q);
  const Index sc = layout.stride(c);
  std::vector<LadderPair> pairs;
  for (Index i = 0; i < layout.total_dim(); ++i) {
    if (layout.digit(i, q) != 0) continue;
    const int n = layout.digit(i, c);
    if (n == 0) continue;
    pairs.push_back({i, i + sq - sc, std::sqrt(static_cast<double>(n))});
  }
  return pairs;
}

Eigen::VectorXd occupation(const SpaceLayout& layout, Role mode) {
  const std::size_t c = layout.position(mode);
  Eigen::VectorXd n(layout.total_dim());
  for (Index i = 0; i < layout.total_dim(); ++i) n[i] = layout.digit(i, c);
  return n;
}

}  // namespace flyq
