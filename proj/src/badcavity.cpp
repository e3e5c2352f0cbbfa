#include "flyq/badcavity.hpp"

#include <array>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "flyq/errors.hpp"
#include "flyq/unitary_dynamics.hpp"

namespace flyq {

namespace {

using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

const cplx kI(0.0, 1.0);

Eigen::Matrix4d symplectic_pair() {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 1) = s(2, 3) = 1.0;
  s(1, 0) = s(3, 2) = -1.0;
  return s;
}

// sqrt(n! / (n - k)!)
double lowering_factor(int n, int k) {
  double f = 1.0;
  for (int j = 0; j < k; ++j) f *= std::sqrt(static_cast<double>(n - j));
  return f;
}

struct Word {
  int a;  // powers of a and b
  int b;
};

// Tr[X rho Y^dagger] for lowering monomials X, Y on a two-mode space.
template <class Element>
cplx lowered_moment(int da, int db, Word x, Word y, Element rho) {
  cplx sum = 0.0;
  for (int ma = 0; ma < da; ++ma) {
    for (int mb = 0; mb < db; ++mb) {
      const int xa = ma + x.a, xb = mb + x.b, ya = ma + y.a, yb = mb + y.b;
      if (xa >= da || xb >= db || ya >= da || yb >= db) continue;
      const double c = lowering_factor(xa, x.a) * lowering_factor(xb, x.b) * lowering_factor(ya, y.a) *
                       lowering_factor(yb, y.b);
      sum += c * rho(static_cast<Index>(xa) * db + xb, static_cast<Index>(ya) * db + yb);
    }
  }
  return sum;
}

template <class Element>
CovarianceMatrix moments_to_covariance(int da, int db, Element rho) {
  const cplx aa = lowered_moment(da, db, {2, 0}, {0, 0}, rho);
  const cplx bb = lowered_moment(da, db, {0, 2}, {0, 0}, rho);
  const double na = lowered_moment(da, db, {1, 0}, {1, 0}, rho).real();
  const double nb = lowered_moment(da, db, {0, 1}, {0, 1}, rho).real();
  const cplx ab = lowered_moment(da, db, {1, 1}, {0, 0}, rho);
  // <a b^dagger> = Tr[a rho b^dagger]
  const cplx abd = lowered_moment(da, db, {1, 0}, {0, 1}, rho);

  Eigen::Matrix4d m;
  m(0, 0) = (2.0 * aa.real() + 2.0 * na + 1.0) / 2.0;
  m(1, 1) = (-2.0 * aa.real() + 2.0 * na + 1.0) / 2.0;
  m(0, 1) = m(1, 0) = aa.imag();
  m(2, 2) = (2.0 * bb.real() + 2.0 * nb + 1.0) / 2.0;
  m(3, 3) = (-2.0 * bb.real() + 2.0 * nb + 1.0) / 2.0;
  m(2, 3) = m(3, 2) = bb.imag();
  m(0, 2) = m(2, 0) = ab.real() + abd.real();
  m(0, 3) = m(3, 0) = ab.imag() - abd.imag();
  m(1, 2) = m(2, 1) = ab.imag() + abd.imag();
  m(1, 3) = m(3, 1) = -ab.real() + abd.real();
  return {m};
}

std::array<Role, 2> mode_roles(const SpaceLayout& layout) {
  if (layout.contains(Role::CavityA) && layout.contains(Role::CavityB)) return {Role::CavityA, Role::CavityB};
  if (layout.contains(Role::ExternalA) && layout.contains(Role::ExternalB)) return {Role::ExternalA, Role::ExternalB};
  throw InvalidDimension("covariance_of: state has no (CavityA, CavityB) or (ExternalA, ExternalB) modes");
}

std::array<Matrix, 4> qubit_generators() {
  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, kI, -kI, 0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
  };
  return {kron(sx, id), kron(sy, id), kron(id, sx), kron(id, sy)};
}

Mat16 kron4(const Matrix& a, const Matrix& b) {
  Mat16 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

}  // namespace

double CovarianceMatrix::uncertainty_margin() const {
  const Eigen::Matrix4cd u = m.cast<cplx>() + 0.5 * kI * symplectic_pair().cast<cplx>();
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(u, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

CovarianceMatrix covariance_of(const StateVector& psi) {
  const auto roles = mode_roles(psi.layout());
  if (psi.layout().size() != 2 || psi.layout().factor(0).role != roles[0]) {
    return covariance_of(reduced_state(psi, {roles[0], roles[1]}));
  }
  const int da = psi.layout().factor(0).dim;
  const int db = psi.layout().factor(1).dim;
  const Vector v = psi.amplitudes() / psi.norm();
  return moments_to_covariance(da, db, [&](Index i, Index j) { return v[i] * std::conj(v[j]); });
}

CovarianceMatrix covariance_of(const DensityOperator& rho) {
  const auto roles = mode_roles(rho.layout());
  if (rho.layout().size() != 2 || rho.layout().factor(0).role != roles[0]) {
    return covariance_of(partial_trace(rho, {roles[0], roles[1]}));
  }
  const int da = rho.layout().factor(0).dim;
  const int db = rho.layout().factor(1).dim;
  const cplx tr = rho.matrix().trace();
  return moments_to_covariance(da, db, [&](Index i, Index j) { return rho(i, j) / tr; });
}

CovarianceMatrix ecs_covariance_closed(double alpha) {
  if (!(alpha > 0.0)) throw InvalidDimension("ecs_covariance_closed: alpha must be > 0");
  const double a2 = alpha * alpha;
  const double e = std::exp(-a2);
  const double n2 = std::pow(ecs_normalization(alpha), 2);
  const double d1 = a2 + (1.0 + e) * (a2 + 1.0);
  const double d2 = e * (1.0 - a2) + 1.0;
  const double c = e * a2;
  Eigen::Matrix4d m;
  m << d1, 0, c, 0,
       0, d2, 0, c,
       c, 0, d1, 0,
       0, c, 0, d2;
  return {n2 * m};
}

CovarianceMatrix driving_covariance(const DrivingResource& resource) { return covariance_of(resource.state()); }

KossakowskiMatrix kossakowski(const CovarianceMatrix& m, double gamma) {
  if ((m.m - m.m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidDimension("kossakowski: covariance matrix is not symmetric");
  }
  return {gamma * (m.m.cast<cplx>() + 0.5 * kI * symplectic_pair().cast<cplx>()), gamma};
}

ReducedGenerator reduced_generator(const KossakowskiMatrix& k) {
  static const std::array<Matrix, 4> o = qubit_generators();
  const Matrix id = Matrix::Identity(4, 4);
  Mat16 l = Mat16::Zero();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const cplx kab = k.k(a, b);
      if (kab == 0.0) continue;
      const Matrix ba = o[b] * o[a];
      // vec(A X B) = (A (x) B^T) vec(X) in row-major order.
      l += kab * (kron4(o[a], o[b].transpose()) - 0.5 * kron4(ba, id) - 0.5 * kron4(id, ba.transpose()));
    }
  }
  return {l};
}

Vec16 vectorize(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidDimension("vectorize: expected a 4x4 matrix");
  Vec16 v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[4 * i + j] = rho(i, j);
  return v;
}

Matrix unvectorize(const Vec16& v) {
  Matrix rho(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = v[4 * i + j];
  return rho;
}

DensityOperator ground_qubits() {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  return DensityOperator(two_qubit_layout(), std::move(rho));
}

std::vector<DensityOperator> evolve_reduced(const DensityOperator& rho0, const ReducedGenerator& gen,
                                            const std::vector<double>& gamma_t) {
  if (!(rho0.layout() == two_qubit_layout())) throw InvalidDimension("evolve_reduced: expected a two-qubit state");
  const Vec16 v0 = vectorize(rho0.matrix());
  std::vector<DensityOperator> out;
  out.reserve(gamma_t.size());
  for (double t : gamma_t) {
    if (t < 0.0) throw InvalidDimension("evolve_reduced: times must be >= 0");
    const Mat16 prop = (gen.l * t).exp();
    DensityOperator rho(two_qubit_layout(), unvectorize(prop * v0));
    if (!rho.is_physical()) {
      const auto r = rho.physicality();
      throw Error("evolve_reduced: unphysical state at gamma t = " + std::to_string(t) +
                  " (trace error " + std::to_string(r.trace) + ", min eigenvalue " +
                  std::to_string(r.min_eigenvalue) + ")");
    }
    out.push_back(std::move(rho));
  }
  return out;
}

DensityOperator steady_state(const ReducedGenerator& gen) {
  const Eigen::ComplexEigenSolver<Mat16> es(gen.l);
  int zeros = 0;
  int best = 0;
  for (int i = 0; i < 16; ++i) {
    if (std::abs(es.eigenvalues()[i]) < 1e-9) ++zeros;
    if (std::abs(es.eigenvalues()[i]) < std::abs(es.eigenvalues()[best])) best = i;
  }
  if (zeros != 1) {
    throw SteadyStateError("generator kernel has dimension " + std::to_string(zeros) + ", expected 1");
  }
  Matrix rho = unvectorize(es.eigenvectors().col(best));
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(two_qubit_layout(), std::move(rho));
}

}  // namespace flyq
