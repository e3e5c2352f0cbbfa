#pragma once

// Adaptive Dormand-Prince 5(4) integrator for complex vector ODEs with
// fourth-order dense output.

#include <array>
#include <cstddef>
#include <functional>

#include "flyq/hilbert.hpp"

namespace flyq {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 10'000'000;
};

class DormandPrince {
 public:
  using Rhs = std::function<void(double t, const Vector& y, Vector& dydt)>;

  DormandPrince(Rhs rhs, OdeOptions options);

  /// Restart from (t, y); discards the step-size history.
  void reset(double t, Vector y);

  /// Takes one accepted step that ends at or before `t_limit`.
  void step(double t_limit);

  /// Steps until t() == t_end exactly.
  void advance_to(double t_end);

  double t() const { return t_; }
  const Vector& y() const { return y_; }

  /// Start of the most recent accepted step.
  double t_prev() const { return t_prev_; }
  const Vector& y_prev() const { return y_prev_; }

  /// Interpolated solution for t_prev() <= t <= t().
  Vector dense(double t) const;

  std::size_t accepted_steps() const { return accepted_; }

 private:
  double error_norm(const Vector& err, const Vector& y0, const Vector& y1) const;
  double initial_step(double span);

  Rhs rhs_;
  OdeOptions opt_;

  double t_ = 0.0;
  double t_prev_ = 0.0;
  double h_ = 0.0;      // proposal for the next step
  double h_last_ = 0.0; // size of the last accepted step
  Vector y_;
  Vector y_prev_;
  Vector f_;  // rhs at (t_, y_)
  std::array<Vector, 7> k_;
  std::size_t accepted_ = 0;
};

}  // namespace flyq
