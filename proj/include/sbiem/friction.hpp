#pragma once

#include <cstddef>
#include <vector>

#include "sbiem/grid.hpp"

namespace sbiem {

/// Linear slip-weakening friction: strength falls from tau_s to tau_r over
/// the critical slip delta_c and stays at tau_r beyond it.
struct SlipWeakeningLaw {
  double tau_s = 0.0;    // peak strength, Pa
  double tau_r = 0.0;    // residual strength, Pa
  double delta_c = 0.0;  // critical slip, m

  /// Throws ConfigError unless tau_s >= tau_r >= 0 and delta_c > 0.
  void validate() const;
};

/// Strength at the given slip. Throws DomainError for negative slip.
double strength(const SlipWeakeningLaw& law, double slip);

enum class FrictionBranch {
  weakened,  // slip >= delta_c: tau = tau_r
  stuck,     // strength exceeds the available stress: no sliding
  sliding,   // stress capped at the current strength
};

struct InterfaceSolution {
  double slip_rate = 0.0;
  double tau = 0.0;
  FrictionBranch branch = FrictionBranch::stuck;
};

/// Solves radiation_coeff * slip_rate + tau - tau0 = f together with the
/// friction law at one element. Exactly one branch applies; ties between
/// stuck and sliding go to sliding.
InterfaceSolution solve_interface(double f, double tau0, double tau_f, double radiation_coeff,
                                  double slip, double delta_c, double tau_r);

/// Per-element friction parameters. Barrier elements get tau_s = tau_r =
/// tau_barrier so they never weaken.
struct StrengthField {
  std::vector<SlipWeakeningLaw> laws;
  std::vector<bool> barrier;

  /// Uniform `law` with barriers on elements whose sample lies within
  /// `barrier_length` of either end of the interface.
  static StrengthField with_edge_barriers(const Grid& grid, const SlipWeakeningLaw& law,
                                          double barrier_length, double tau_barrier);

  static StrengthField uniform(const Grid& grid, const SlipWeakeningLaw& law);

  double at(std::size_t element, double slip) const { return strength(laws[element], slip); }
};

/// Fields at the current time.
struct InterfaceState {
  SpatialField slip;       // m
  SpatialField slip_rate;  // m/s
  SpatialField tau;        // Pa
  SpatialField tau0;       // Pa
  double t = 0.0;          // s
};

/// tau_nuc on |x| <= nucleation_length / 2, tau_bg elsewhere. Requires
/// nucleation_length < L - 2 barrier_length (ConfigError otherwise).
SpatialField background_stress_profile(const Grid& grid, double tau_bg, double tau_nuc,
                                       double nucleation_length, double barrier_length);

}  // namespace sbiem
