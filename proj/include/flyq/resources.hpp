#pragma once

// Entangled driving fields (NOON, entangled coherent states) and their
// injection into two cavities through lossless beam splitters.

#include <optional>
#include <variant>

#include "flyq/hilbert.hpp"

namespace flyq {

struct Noon {
  int photons;
};

struct Ecs {
  double alpha;  // real amplitude > 0
};

/// Two-mode state of the external fields (a, b) driving the cavities.
class DrivingResource {
 public:
  /// `truncation` = 0 picks the default cutoff: N+1 for NOON, the smallest
  /// d with tail population < 1e-10 for ECS.
  static DrivingResource noon(int photons, int truncation = 0);
  static DrivingResource ecs(double alpha, int truncation = 0);
  /// Any two-mode state over layout {ExternalA(d), ExternalB(d)}.
  static DrivingResource custom(StateVector state);

  const std::variant<Noon, Ecs, StateVector>& kind() const { return kind_; }
  int truncation() const { return d_; }

  /// The external-mode ket, layout {ExternalA(d), ExternalB(d)}.
  StateVector state() const;

 private:
  DrivingResource(std::variant<Noon, Ecs, StateVector> kind, int d) : kind_(std::move(kind)), d_(d) {}

  std::variant<Noon, Ecs, StateVector> kind_;
  int d_;
};

/// Beam-splitter coupling of each external field into its cavity.
struct CavityLoad {
  explicit CavityLoad(double transmittivity);
  double transmittivity() const { return t_; }
  double reflectivity() const { return 1.0 - t_; }

 private:
  double t_;
};

/// (|N0> + |0N>)/sqrt(2), or |00> for N = 0.
StateVector make_noon(int photons, int d);

/// N_alpha (|alpha,0> + |0,alpha>) in the Fock basis (not renormalized after
/// truncation).
StateVector make_ecs(double alpha, int d);

/// [2 (1 + exp(-alpha^2))]^{-1/2}
double ecs_normalization(double alpha);

/// Population of a coherent state with real amplitude `alpha` above level d-1.
double coherent_tail(double alpha, int d);

/// Smallest d with coherent_tail(alpha, d) < tail.
int coherent_min_truncation(double alpha, double tail = 1e-10);

/// Applies both beam splitters to the external state. The cavities start in
/// vacuum; the result lives on {CavityA, CavityB, ExternalA, ExternalB}, all
/// with the resource truncation d. An input |n>_ext maps to
/// sum_m sqrt(C(n,m)) T^{m/2} R^{(n-m)/2} |m>_cav |n-m>_ext.
StateVector load_joint(const StateVector& external, const CavityLoad& load);

/// Reduced cavity state after loading: layout {CavityA, CavityB}.
DensityOperator load_cavities(const DrivingResource& resource, const CavityLoad& load);

/// Purification of the loaded cavity state on {CavityA, CavityB, Purifier}.
/// The purifier basis is the set of external Fock configurations that carry
/// weight, so structural zeros of the cavity state stay exactly zero.
StateVector purified_cavities(const DrivingResource& resource, const CavityLoad& load);

/// Minimal purification of an arbitrary density operator, appended as a
/// Purifier factor of dimension rank(rho) (eigenvalues below `cutoff` dropped;
/// a rank-1 state still gets a 2-dimensional purifier).
StateVector purify(const DensityOperator& rho, double cutoff = 1e-14);

/// Closed form for NOON loading: binomial mixture of |m0>, |0m> plus the
/// coherence (T^N/2)(|N0><0N| + h.c.).
DensityOperator noon_cavity_closed_form(int photons, double transmittivity, int d);

/// Closed form for ECS loading: each coherent branch splits as
/// |sqrt(T) alpha>_cav |sqrt(R) alpha>_out, so the cross terms pick up the
/// overlap exp(-R alpha^2).
DensityOperator ecs_cavity_closed_form(double alpha, double transmittivity, int d);

}  // namespace flyq
