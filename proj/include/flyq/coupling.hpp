#pragma once

// Position-dependent atom-field coupling for Hermite-Gauss cavity modes.
//
// Rates are angular frequencies (rad/s). The atom moves along x with y = 0;
// the coupling is Omega0 |Psi_{u,0}(x, 0)| / |Psi_{0,0}(0, 0)|, and it is
// treated as exactly zero once |x| > 8 waists.

#include <variant>
#include <vector>

namespace flyq {

/// Physicists' Hermite polynomial H_p(y).
double hermite(int order, double y);

/// Roots of H_p in ascending order.
std::vector<double> hermite_roots(int order);

struct ModeGeometry {
  int u = 0;
  int v = 0;
  double waist = 0.0;  // meters
};

/// x(t) = x0 + g t^2 / 2, released from rest at x0.
struct FreeFall {
  double x0;
  double g;
};

/// x(t) = x0 + V t.
struct Uniform {
  double x0;
  double velocity;
};

using Trajectory = std::variant<FreeFall, Uniform>;

double position(const Trajectory& path, double t);

/// Coupling rate as a function of time along a trajectory.
class CouplingProfile {
 public:
  /// Throws InvalidDimension on a non-physical geometry (v != 0, waist <= 0,
  /// x0 >= 0, g or V <= 0, Omega0 <= 0).
  static CouplingProfile hermite_gauss(double omega0, ModeGeometry mode, Trajectory path);
  /// Constant rate for all t >= 0 (atom parked in the mode).
  static CouplingProfile flat(double rate);

  double peak_rate() const { return omega0_; }
  bool is_flat() const { return flat_; }
  const ModeGeometry& mode() const { return mode_; }
  const Trajectory& path() const { return path_; }

  /// Omega(x(t), 0) >= 0.
  double omega(double t) const;

  /// max_t Omega over the transit (Omega0 for TEM_00 through the center).
  double max_rate() const;

  /// mu(t) = integral_0^t Omega(t') dt'.
  double pulse_area(double t) const;
  /// mu at each (ascending) time of `times`, integrating once across the grid.
  std::vector<double> pulse_areas(const std::vector<double>& times) const;
  /// mu after the atom has left the mode.
  double total_pulse_area() const { return pulse_area(exit_time()); }

  /// Time at which x(t) reaches +8 waists; infinity for flat profiles.
  double exit_time() const;

  /// Times in (0, exit_time] where Omega has a kink (Hermite nodes) or
  /// switches on/off (the +-8 waist window), ascending.
  std::vector<double> breakpoints() const;

 private:
  CouplingProfile() = default;

  double integrate(double a, double b) const;

  double omega0_ = 0.0;
  bool flat_ = false;
  ModeGeometry mode_;
  Trajectory path_ = Uniform{-1.0, 1.0};
  double norm_ = 1.0;  // 1 / sqrt(2^u u!)
};

}  // namespace flyq
