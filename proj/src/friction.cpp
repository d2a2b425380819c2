#include "sbiem/friction.hpp"

#include <cmath>

#include "sbiem/errors.hpp"

namespace sbiem {

void SlipWeakeningLaw::validate() const {
  if (tau_r > tau_s) throw ConfigError("residual strength exceeds peak strength");
  if (tau_r < 0.0) throw ConfigError("residual strength must be non-negative");
  if (!(delta_c > 0.0)) throw ConfigError("critical slip must be positive");
}

double strength(const SlipWeakeningLaw& law, double slip) {
  if (slip < 0.0 || std::isnan(slip)) throw DomainError("strength: negative slip");
  if (slip >= law.delta_c) return law.tau_r;
  return law.tau_s - (law.tau_s - law.tau_r) * slip / law.delta_c;
}

InterfaceSolution solve_interface(double f, double tau0, double tau_f, double radiation_coeff,
                                  double slip, double delta_c, double tau_r) {
  const double driving = tau0 + f;
  if (slip >= delta_c) {
    return {(driving - tau_r) / radiation_coeff, tau_r, FrictionBranch::weakened};
  }
  if (tau_f > driving) return {0.0, driving, FrictionBranch::stuck};
  return {(driving - tau_f) / radiation_coeff, tau_f, FrictionBranch::sliding};
}

StrengthField StrengthField::uniform(const Grid& grid, const SlipWeakeningLaw& law) {
  law.validate();
  return {std::vector<SlipWeakeningLaw>(grid.size(), law), std::vector<bool>(grid.size(), false)};
}

StrengthField StrengthField::with_edge_barriers(const Grid& grid, const SlipWeakeningLaw& law,
                                                double barrier_length, double tau_barrier) {
  StrengthField field = uniform(grid, law);
  if (barrier_length <= 0.0) return field;
  const double inner = 0.5 * grid.length() - barrier_length;
  const SlipWeakeningLaw barrier_law{tau_barrier, tau_barrier, law.delta_c};
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (std::abs(grid.x(m)) >= inner) {
      field.laws[m] = barrier_law;
      field.barrier[m] = true;
    }
  }
  return field;
}

SpatialField background_stress_profile(const Grid& grid, double tau_bg, double tau_nuc,
                                       double nucleation_length, double barrier_length) {
  if (!(nucleation_length + 2.0 * barrier_length < grid.length())) {
    throw ConfigError("nucleation zone plus barriers must be shorter than the interface");
  }
  SpatialField out(grid.size(), tau_bg);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (std::abs(grid.x(m)) <= 0.5 * nucleation_length) out[m] = tau_nuc;
  }
  return out;
}

}  // namespace sbiem
