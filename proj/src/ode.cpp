#include "flyq/ode.hpp"

#include <algorithm>
#include <cmath>

#include "flyq/errors.hpp"

namespace flyq {

namespace {

constexpr double C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order minus embedded fourth-order weights.
constexpr double E[7] = {-71.0 / 57600, 0.0, 71.0 / 16695, -71.0 / 1920, 17253.0 / 339200, -22.0 / 525, 1.0 / 40};
// Dense output polynomial coefficients (Shampine's interpolant).
constexpr double P[7][4] = {
    {1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933, 87487479700.0 / 32700410799},
    {0.0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072},
    {0.0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408, 701980252875.0 / 199316789632},
    {0.0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844},
    {0.0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423},
};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, OdeOptions options) : rhs_(std::move(rhs)), opt_(options) {}

void DormandPrince::reset(double t, Vector y) {
  t_ = t_prev_ = t;
  y_ = std::move(y);
  y_prev_ = y_;
  f_.resize(y_.size());
  rhs_(t_, y_, f_);
  h_ = 0.0;
  h_last_ = 0.0;
}

double DormandPrince::error_norm(const Vector& err, const Vector& y0, const Vector& y1) const {
  double acc = 0.0;
  for (Index i = 0; i < err.size(); ++i) {
    const double scale = opt_.atol + opt_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = std::abs(err[i]) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Index>(err.size(), 1)));
}

double DormandPrince::initial_step(double span) {
  double d0 = 0.0;
  double d1 = 0.0;
  for (Index i = 0; i < y_.size(); ++i) {
    const double scale = opt_.atol + opt_.rtol * std::abs(y_[i]);
    d0 += std::norm(y_[i]) / (scale * scale);
    d1 += std::norm(f_[i]) / (scale * scale);
  }
  d0 = std::sqrt(d0 / y_.size());
  d1 = std::sqrt(d1 / y_.size());
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  return std::min(h, span);
}

void DormandPrince::step(double t_limit) {
  const double span = t_limit - t_;
  if (span <= 0.0) return;
  if (h_ <= 0.0) h_ = initial_step(span);
  const double h_min = 1e-14 * std::max({std::abs(t_), std::abs(t_limit), span});

  Vector ytmp(y_.size());
  Vector ynew(y_.size());
  for (;;) {
    double h = std::min(h_, span);
    // Land exactly on t_limit instead of leaving a sliver.
    if (span - h < 1e-3 * h) h = span;
    // A restart can land a rounding error away from the limit; cover that sliver directly.
    if (span <= h_min) h = span;
    if (h < h_min && h < span) {
      throw StiffnessError("step size underflow at t=" + std::to_string(t_) + " (h=" + std::to_string(h) + ")");
    }

    k_[0] = f_;
    for (int s = 1; s < 7; ++s) {
      ytmp = y_;
      for (int j = 0; j < s; ++j) {
        if (A[s][j] != 0.0) ytmp.noalias() += (h * A[s][j]) * k_[j];
      }
      if (s == 6) ynew = ytmp;
      k_[s].resize(y_.size());
      rhs_(t_ + C[s] * h, ytmp, k_[s]);
    }
    Vector err = Vector::Zero(y_.size());
    for (int s = 0; s < 7; ++s) {
      if (E[s] != 0.0) err.noalias() += (h * E[s]) * k_[s];
    }
    const double en = error_norm(err, y_, ynew);
    if (en <= 1.0) {
      const double factor =
          en == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(en, -0.2), kMinFactor, kMaxFactor);
      t_prev_ = t_;
      y_prev_ = y_;
      t_ = (h == span) ? t_limit : t_ + h;
      y_ = ynew;
      f_ = k_[6];
      h_last_ = h;
      // A step clipped by t_limit says nothing about the attainable size.
      h_ = (h == span && h < h_) ? std::max(h_, h * factor) : h * factor;
      ++accepted_;
      if (accepted_ > opt_.max_steps) throw StiffnessError("maximum number of integration steps exceeded");
      return;
    }
    h_ = h * std::max(kMinFactor, kSafety * std::pow(en, -0.2));
  }
}

void DormandPrince::advance_to(double t_end) {
  while (t_ < t_end) step(t_end);
}

Vector DormandPrince::dense(double t) const {
  if (h_last_ == 0.0) return y_;
  const double h = h_last_;
  const double x = (t - t_prev_) / h;
  double powers[4] = {x, x * x, x * x * x, x * x * x * x};
  Vector out = y_prev_;
  for (int s = 0; s < 7; ++s) {
    double w = 0.0;
    for (int j = 0; j < 4; ++j) w += P[s][j] * powers[j];
    if (w != 0.0) out.noalias() += (h * w) * k_[s];
  }
  return out;
}

}  // namespace flyq
