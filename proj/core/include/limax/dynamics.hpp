#pragma once

#include <cstddef>

#include "limax/state.hpp"

namespace limax {

// F_i = -dV/dr_i. Linear in the positions and translation invariant.
BodyArray forces(const PhaseState& s, const SystemParams& params);

struct IntegratorConfig {
  double dt = 0.0;
  std::size_t n_steps = 0;
  // Record every k-th step; the final step is always recorded.
  std::size_t sample_every = 1;

  static IntegratorConfig for_horizon(double horizon, std::size_t n_steps);
  double horizon() const { return dt * static_cast<double>(n_steps); }
  // Throws InvalidInput unless dt > 0 and sample_every > 0.
  void validate() const;
};

// One classical fourth-order Runge-Kutta step of Hamilton's equations.
PhaseState rk4_step(const PhaseState& s, const SystemParams& params, double dt);

/// Fixed-step integration. This path deliberately knows nothing about the
/// closed-form solution; it only evaluates forces.
///
/// Throws DivergenceError with the step index when the state stops being
/// finite.
Trajectory integrate(const PhaseState& state0, const SystemParams& params,
                     const IntegratorConfig& cfg);

}  // namespace limax
