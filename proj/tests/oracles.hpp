#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "flyq/hilbert.hpp"

namespace oracle {

using flyq::cplx;
using flyq::Matrix;
using flyq::Vector;

// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (long k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  return s * h / 3.0;
}

// Asymptotic Kolmogorov distribution, with the Stephens small-sample correction.
inline double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = 2.0 * (j % 2 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

// One-sample KS statistic against a CDF.
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// Kronecker product of dense complex matrices.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix lowering(int d) {
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Row-major Liouvillian of d rho/dt = -i[H, rho] + sum_k (L rho L^+ - {L^+ L, rho}/2).
inline Matrix liouvillian(const Matrix& h, const std::vector<Matrix>& jumps) {
  const Eigen::Index n = h.rows();
  const Matrix id = Matrix::Identity(n, n);
  const cplx i(0.0, 1.0);
  Matrix l = -i * (kron(h, id) - kron(id, h.transpose()));
  for (const Matrix& c : jumps) {
    const Matrix cdc = c.adjoint() * c;
    l += kron(c, c.conjugate()) - 0.5 * kron(cdc, id) - 0.5 * kron(id, cdc.transpose());
  }
  return l;
}

// exp(t L) v by a truncated Taylor series over substeps with |t L| <= 1/2.
inline Vector expm_action(const Matrix& l, Vector v, double t) {
  const double norm = l.cwiseAbs().colwise().sum().maxCoeff() * std::abs(t);
  const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * norm)));
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    Vector term = v;
    Vector acc = v;
    for (int k = 1; k < 60; ++k) {
      term = (h / k) * (l * term);
      acc += term;
      if (term.norm() < 1e-18 * acc.norm()) break;
    }
    v = acc;
  }
  return v;
}

inline Matrix random_density(int dim, std::mt19937_64& rng, int rank = 0) {
  std::normal_distribution<double> g;
  if (rank <= 0) rank = dim;
  Matrix a(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

inline Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

// Trace norm distance of two Hermitian matrices.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
