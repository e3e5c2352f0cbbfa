#include "flyq/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "flyq/errors.hpp"
#include "flyq/unitary_dynamics.hpp"

namespace flyq {

namespace {

double entropy_term(double p) { return p > 1e-300 ? -p * std::log2(p) : 0.0; }

// Entropy of a 2x2 Hermitian matrix, closed-form eigenvalues.
double qubit_entropy(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double gap = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m(0, 1)));
  return entropy_term(0.5 * (a + d + gap)) + entropy_term(0.5 * (a + d - gap));
}

Eigen::Matrix2cd reduce_two_qubit(const Matrix& rho, int keep) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == 0 ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
    }
  }
  return out;
}

Eigen::Vector2cd measurement_vector(double theta, double phi, int outcome) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cplx e = std::polar(1.0, phi);
  if (outcome == 0) return {c, e * s};
  return {-std::conj(e) * s, c};
}

using Point = std::array<double, 2>;

// Nelder-Mead minimization in two dimensions.
Point nelder_mead(const std::function<double(const Point&)>& f, Point x0, double step, double tol) {
  std::array<Point, 3> s{x0, Point{x0[0] + step, x0[1]}, Point{x0[0], x0[1] + step}};
  std::array<double, 3> v{f(s[0]), f(s[1]), f(s[2])};
  for (int iter = 0; iter < 2000; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
    const int best = order[0];
    const int mid = order[1];
    const int worst = order[2];
    double size = 0.0;
    for (int k : {mid, worst}) {
      size = std::max({size, std::abs(s[k][0] - s[best][0]), std::abs(s[k][1] - s[best][1])});
    }
    if (v[worst] - v[best] < tol && size < tol) break;

    const Point c{0.5 * (s[best][0] + s[mid][0]), 0.5 * (s[best][1] + s[mid][1])};
    auto along = [&](double t) { return Point{c[0] + t * (s[worst][0] - c[0]), c[1] + t * (s[worst][1] - c[1])}; };
    const Point xr = along(-1.0);
    const double fr = f(xr);
    if (fr < v[best]) {
      const Point xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[worst] = xe;
        v[worst] = fe;
      } else {
        s[worst] = xr;
        v[worst] = fr;
      }
    } else if (fr < v[mid]) {
      s[worst] = xr;
      v[worst] = fr;
    } else {
      const Point xc = fr < v[worst] ? along(-0.5) : along(0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, v[worst])) {
        s[worst] = xc;
        v[worst] = fc;
      } else {
        for (int k : {mid, worst}) {
          s[k] = Point{0.5 * (s[k][0] + s[best][0]), 0.5 * (s[k][1] + s[best][1])};
          v[k] = f(s[k]);
        }
      }
    }
  }
  return s[std::min_element(v.begin(), v.end()) - v.begin()];
}

void require_two_qubits(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw InvalidDimension("expected a two-qubit (4x4) matrix");
}

}  // namespace

double negativity(const Matrix& two_qubit) {
  require_two_qubits(two_qubit);
  const DensityOperator rho(two_qubit_layout(), two_qubit);
  const Matrix pt = partial_transpose(rho, Role::Qubit2).matrix();
  const double lambda_min = hermitian_eigenvalues(0.5 * (pt + pt.adjoint())).minCoeff();
  return std::max(0.0, -2.0 * lambda_min);
}

double negativity(const DensityOperator& rho) { return negativity(rho.matrix()); }

double von_neumann_entropy(const Matrix& rho) {
  const Eigen::VectorXd w = hermitian_eigenvalues(0.5 * (rho + rho.adjoint()));
  double s = 0.0;
  for (Index i = 0; i < w.size(); ++i) s += entropy_term(w[i]);
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_entropy(rho.matrix()); }

Eigen::Matrix2cd MeasurementFamily::projector(int outcome) const {
  const Eigen::Vector2cd n = measurement_vector(theta, phi, outcome);
  return n * n.adjoint();
}

DiscordResult discord_details(const DensityOperator& rho_in, Role measured) {
  const Matrix& rho = rho_in.matrix();
  require_two_qubits(rho);
  if (measured != Role::Qubit1 && measured != Role::Qubit2) {
    throw InvalidDimension("discord: measured side must be qubit1 or qubit2");
  }
  const int m = measured == Role::Qubit1 ? 0 : 1;
  const Eigen::Matrix2cd rho1 = reduce_two_qubit(rho, 0);
  const Eigen::Matrix2cd rho2 = reduce_two_qubit(rho, 1);
  const Eigen::Matrix2cd& unmeasured = m == 0 ? rho2 : rho1;
  const double s_unmeasured = qubit_entropy(unmeasured);
  const double mutual = qubit_entropy(rho1) + qubit_entropy(rho2) - von_neumann_entropy(rho);

  // S(rho_unmeasured) - sum_k p_k S(rho_k | k).
  auto classical = [&](const Point& x) {
    double conditional = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
      const Eigen::Vector2cd n = measurement_vector(x[0], x[1], outcome);
      Eigen::Matrix2cd post = Eigen::Matrix2cd::Zero();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              const cplx r = m == 1 ? rho(2 * i + a, 2 * j + b) : rho(2 * a + i, 2 * b + j);
              post(i, j) += std::conj(n[a]) * r * n[b];
            }
          }
        }
      }
      const double p = post.trace().real();
      if (p > 1e-15) conditional += p * qubit_entropy(post / p);
    }
    return s_unmeasured - conditional;
  };

  constexpr int kGrid = 64;
  Point best{0.0, 0.0};
  double best_value = -1e300;
  for (int i = 0; i < kGrid; ++i) {
    const double theta = M_PI * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double phi = 2.0 * M_PI * j / kGrid;
      const double v = classical({theta, phi});
      if (v > best_value) {
        best_value = v;
        best = {theta, phi};
      }
    }
  }
  const Point refined =
      nelder_mead([&](const Point& x) { return -classical(x); }, best, M_PI / (kGrid - 1), 1e-8);
  const double refined_value = classical(refined);
  if (refined_value > best_value) {
    best_value = refined_value;
    best = refined;
  }

  double d = mutual - best_value;
  if (d < -1e-7) throw OptimizerError("discord optimization returned " + std::to_string(d));
  d = std::max(d, 0.0);
  return {d, mutual, best_value, MeasurementFamily{best[0], best[1]}};
}

double discord(const DensityOperator& rho, Role measured) { return discord_details(rho, measured).discord; }

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  return 0.5 * hermitian_eigenvalues(0.5 * (diff + diff.adjoint())).cwiseAbs().sum();
}

}  // namespace flyq
