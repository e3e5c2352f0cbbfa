#include "flyq/resources.hpp"

#include <cmath>
#include <string>

#include "flyq/errors.hpp"

namespace flyq {

namespace {

// sqrt(C(n, m)) for n < size, via Pascal's triangle (exact up to n ~ 50).
Eigen::MatrixXd sqrt_binomials(int size) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    c(n, 0) = 1.0;
    for (int m = 1; m <= n; ++m) c(n, m) = c(n - 1, m - 1) + (m < n ? c(n - 1, m) : 0.0);
  }
  return c.cwiseSqrt();
}

// e^{-alpha^2/2} alpha^n / sqrt(n!) for n < d.
Eigen::VectorXd coherent_amplitudes(double alpha, int d) {
  Eigen::VectorXd c(d);
  c[0] = std::exp(-0.5 * alpha * alpha);
  for (int n = 1; n < d; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

SpaceLayout external_layout(int d) { return {{Role::ExternalA, d}, {Role::ExternalB, d}}; }
SpaceLayout cavity_layout(int d) { return {{Role::CavityA, d}, {Role::CavityB, d}}; }

void check_ecs_truncation(double alpha, int d, const char* who) {
  if (coherent_tail(alpha, d) >= 1e-10) {
    const int need = coherent_min_truncation(alpha);
    throw TruncationError(std::string(who) + ": truncation d=" + std::to_string(d) +
                              " too small for alpha=" + std::to_string(alpha) + ", need d >= " +
                              std::to_string(need),
                          need);
  }
}

}  // namespace

double ecs_normalization(double alpha) { return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-alpha * alpha))); }

double coherent_tail(double alpha, int d) {
  // Summing the tail directly avoids the cancellation in 1 - sum_{n<d}.
  const double a2 = alpha * alpha;
  auto log_p = [a2](int n) { return -a2 + n * std::log(a2) - std::lgamma(n + 1.0); };
  double tail = 0.0;
  for (int n = d; n < d + 5000; ++n) {
    const double p = std::exp(log_p(n));
    tail += p;
    if (n > a2 && p <= 1e-20 * tail) break;
  }
  return tail;
}

int coherent_min_truncation(double alpha, double tail) {
  int d = 2;
  while (coherent_tail(alpha, d) >= tail) ++d;
  return d;
}

DrivingResource DrivingResource::noon(int photons, int truncation) {
  if (photons < 0) throw InvalidDimension("NOON photon number must be >= 0");
  const int d = truncation == 0 ? std::max(photons + 1, 2) : truncation;
  if (d <= photons) {
    throw TruncationError("NOON N=" + std::to_string(photons) + " needs d > N, got d=" + std::to_string(d),
                          photons + 1);
  }
  return DrivingResource(Noon{photons}, d);
}

DrivingResource DrivingResource::ecs(double alpha, int truncation) {
  if (!(alpha > 0.0)) throw InvalidDimension("ECS amplitude must be > 0");
  const int d = truncation == 0 ? coherent_min_truncation(alpha) : truncation;
  check_ecs_truncation(alpha, d, "ECS resource");
  return DrivingResource(Ecs{alpha}, d);
}

DrivingResource DrivingResource::custom(StateVector state) {
  const SpaceLayout& l = state.layout();
  if (l.size() != 2 || l.factor(0).role != Role::ExternalA || l.factor(1).role != Role::ExternalB ||
      l.factor(0).dim != l.factor(1).dim) {
    throw InvalidDimension("custom resource must live on {external-a(d), external-b(d)}");
  }
  const int d = l.factor(0).dim;
  return DrivingResource(std::move(state), d);
}

StateVector DrivingResource::state() const {
  if (const auto* n = std::get_if<Noon>(&kind_)) return make_noon(n->photons, d_);
  if (const auto* e = std::get_if<Ecs>(&kind_)) return make_ecs(e->alpha, d_);
  return std::get<StateVector>(kind_);
}

CavityLoad::CavityLoad(double transmittivity) : t_(transmittivity) {
  if (!(transmittivity >= 0.0 && transmittivity <= 1.0)) {
    throw InvalidDimension("transmittivity must lie in [0, 1]");
  }
}

StateVector make_noon(int photons, int d) {
  if (photons < 0) throw InvalidDimension("NOON photon number must be >= 0");
  if (d <= photons) {
    throw TruncationError("make_noon: d=" + std::to_string(d) + " must exceed N=" + std::to_string(photons),
                          photons + 1);
  }
  const SpaceLayout layout = external_layout(std::max(d, 2));
  Vector v = Vector::Zero(layout.total_dim());
  const Index dd = layout.factor(0).dim;
  if (photons == 0) {
    v[0] = 1.0;
  } else {
    v[photons * dd] = M_SQRT1_2;
    v[photons] = M_SQRT1_2;
  }
  return StateVector(layout, std::move(v));
}

StateVector make_ecs(double alpha, int d) {
  if (!(alpha > 0.0)) throw InvalidDimension("make_ecs: alpha must be > 0");
  check_ecs_truncation(alpha, d, "make_ecs");
  const SpaceLayout layout = external_layout(d);
  const Eigen::VectorXd c = coherent_amplitudes(alpha, d);
  const double norm = ecs_normalization(alpha);
  Vector v = Vector::Zero(layout.total_dim());
  for (int n = 0; n < d; ++n) {
    v[n * d] += norm * c[n];
    v[n] += norm * c[n];
  }
  return StateVector(layout, std::move(v));
}

StateVector load_joint(const StateVector& external, const CavityLoad& load) {
  const SpaceLayout& in = external.layout();
  const int d = in.factor(0).dim;
  if (in.size() != 2 || in.factor(1).dim != d) throw InvalidDimension("load_joint: expected two equal modes");
  const double t = load.transmittivity();
  const double r = load.reflectivity();

  // split(n, m): amplitude of |m>_cav |n-m>_ext given |n>_ext |0>_cav.
  const Eigen::MatrixXd sb = sqrt_binomials(d);
  Eigen::MatrixXd split = Eigen::MatrixXd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m <= n; ++m) split(n, m) = sb(n, m) * std::pow(t, 0.5 * m) * std::pow(r, 0.5 * (n - m));
  }

  const SpaceLayout out({{Role::CavityA, d}, {Role::CavityB, d}, {Role::ExternalA, d}, {Role::ExternalB, d}});
  Vector psi = Vector::Zero(out.total_dim());
  const Vector& v = external.amplitudes();
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      const cplx amp = v[na * d + nb];
      if (amp == cplx(0.0)) continue;
      for (int ma = 0; ma <= na; ++ma) {
        for (int mb = 0; mb <= nb; ++mb) {
          const Index idx = ((static_cast<Index>(ma) * d + mb) * d + (na - ma)) * d + (nb - mb);
          psi[idx] += amp * split(na, ma) * split(nb, mb);
        }
      }
    }
  }
  return StateVector(out, std::move(psi));
}

DensityOperator load_cavities(const DrivingResource& resource, const CavityLoad& load) {
  const StateVector joint = load_joint(resource.state(), load);
  return reduced_state(joint, {Role::CavityA, Role::CavityB});
}

StateVector purified_cavities(const DrivingResource& resource, const CavityLoad& load) {
  const StateVector joint = load_joint(resource.state(), load);
  const int d = resource.truncation();
  const Index cav = static_cast<Index>(d) * d;
  const Index ext = cav;
  // Joint amplitudes as a (cavity, external) matrix; keep nonzero columns.
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
      joint.amplitudes().data(), cav, ext);
  std::vector<Index> cols;
  for (Index k = 0; k < ext; ++k) {
    if (amp.col(k).cwiseAbs().maxCoeff() > 0.0) cols.push_back(k);
  }
  const int p = std::max<int>(2, static_cast<int>(cols.size()));
  const SpaceLayout layout({{Role::CavityA, d}, {Role::CavityB, d}, {Role::Purifier, p}});
  Vector psi = Vector::Zero(layout.total_dim());
  for (Index c = 0; c < cav; ++c) {
    for (std::size_t k = 0; k < cols.size(); ++k) psi[c * p + static_cast<Index>(k)] = amp(c, cols[k]);
  }
  return StateVector(layout, std::move(psi));
}

StateVector purify(const DensityOperator& rho, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  const Eigen::VectorXd& w = solver.eigenvalues();
  std::vector<Index> keep;
  for (Index k = w.size(); k-- > 0;) {
    if (w[k] > cutoff) keep.push_back(k);
  }
  const int p = std::max<int>(2, static_cast<int>(keep.size()));
  std::vector<Factor> factors = rho.layout().factors();
  factors.push_back({Role::Purifier, p});
  const SpaceLayout layout(std::move(factors));
  const Index n = rho.layout().total_dim();
  Vector psi = Vector::Zero(layout.total_dim());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double s = std::sqrt(w[keep[k]]);
    for (Index i = 0; i < n; ++i) psi[i * p + static_cast<Index>(k)] = s * solver.eigenvectors()(i, keep[k]);
  }
  return StateVector(layout, std::move(psi));
}

DensityOperator noon_cavity_closed_form(int photons, double transmittivity, int d) {
  const CavityLoad load(transmittivity);
  if (d <= photons) {
    throw TruncationError("noon_cavity_closed_form: d must exceed N", photons + 1);
  }
  const SpaceLayout layout = cavity_layout(std::max(d, 2));
  const Index dd = layout.factor(0).dim;
  Matrix rho = Matrix::Zero(layout.total_dim(), layout.total_dim());
  if (photons == 0) {
    // The two-term formula double counts |00> when N = 0.
    rho(0, 0) = 1.0;
    return DensityOperator(layout, std::move(rho));
  }
  const double t = load.transmittivity();
  const double r = load.reflectivity();
  const Eigen::MatrixXd sb = sqrt_binomials(photons + 1);
  for (int m = 0; m <= photons; ++m) {
    const double w = 0.5 * sb(photons, m) * sb(photons, m) * std::pow(r, photons - m) * std::pow(t, m);
    rho(m * dd, m * dd) += w;
    rho(m, m) += w;
  }
  const double coh = 0.5 * std::pow(t, photons);
  rho(photons * dd, photons) += coh;
  rho(photons, photons * dd) += coh;
  return DensityOperator(layout, std::move(rho));
}

DensityOperator ecs_cavity_closed_form(double alpha, double transmittivity, int d) {
  const CavityLoad load(transmittivity);
  if (!(alpha > 0.0)) throw InvalidDimension("ecs_cavity_closed_form: alpha must be > 0");
  const double beta = std::sqrt(load.transmittivity()) * alpha;
  check_ecs_truncation(beta, d, "ecs_cavity_closed_form");
  const SpaceLayout layout = cavity_layout(d);
  const Eigen::VectorXd c = coherent_amplitudes(beta, d);
  // Kets |beta,0> and |0,beta>.
  Vector left = Vector::Zero(layout.total_dim());
  Vector right = Vector::Zero(layout.total_dim());
  for (int n = 0; n < d; ++n) {
    left[n * d] = c[n];
    right[n] = c[n];
  }
  const double n2 = std::pow(ecs_normalization(alpha), 2);
  const double overlap = std::exp(-load.reflectivity() * alpha * alpha);
  Matrix rho = left * left.adjoint() + right * right.adjoint() +
               overlap * (left * right.adjoint() + right * left.adjoint());
  return DensityOperator(layout, n2 * rho);
}

}  // namespace flyq
