#include "limax/dynamics.hpp"

#include <cmath>

#include "limax/error.hpp"
#include "limax/hamiltonian.hpp"

namespace limax {
namespace {

// Time derivative of a phase point: (dr/dt, dp/dt) stored in the r/p slots.
PhaseState rates(const PhaseState& s, const SystemParams& params) {
  PhaseState d;
  for (int k = 0; k < kBodies; ++k) d.r[k] = s.p[k] / params.m();
  d.p = forces(s, params);
  return d;
}

PhaseState advanced(const PhaseState& s, const PhaseState& d, double h) {
  PhaseState out = s;
  for (int k = 0; k < kBodies; ++k) {
    out.r[k] += h * d.r[k];
    out.p[k] += h * d.p[k];
  }
  return out;
}

}  // namespace

BodyArray forces(const PhaseState& s, const SystemParams& params) {
  const double k = 0.5 * params.m() * params.omega() * params.omega();
  BodyArray f{};
  for (const PairCoupling& c : kPairCouplings) {
    const Vec2 pull = (k * c.c) * s.r_rel(c.i, c.j);
    f[c.i - 1] -= pull;
    f[c.j - 1] += pull;
  }
  return f;
}

IntegratorConfig IntegratorConfig::for_horizon(double horizon, std::size_t n_steps) {
  if (n_steps == 0 || !(std::isfinite(horizon) && horizon > 0.0)) {
    throw InvalidInput("integration horizon and step count must be positive");
  }
  return {horizon / static_cast<double>(n_steps), n_steps, 1};
}

void IntegratorConfig::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw InvalidInput("integrator dt must be positive");
  if (sample_every == 0) throw InvalidInput("integrator sample_every must be positive");
}

PhaseState rk4_step(const PhaseState& s, const SystemParams& params, double dt) {
  const PhaseState k1 = rates(s, params);
  const PhaseState k2 = rates(advanced(s, k1, 0.5 * dt), params);
  const PhaseState k3 = rates(advanced(s, k2, 0.5 * dt), params);
  const PhaseState k4 = rates(advanced(s, k3, dt), params);
  PhaseState out = s;
  for (int k = 0; k < kBodies; ++k) {
    out.r[k] += (dt / 6.0) * (k1.r[k] + 2.0 * k2.r[k] + 2.0 * k3.r[k] + k4.r[k]);
    out.p[k] += (dt / 6.0) * (k1.p[k] + 2.0 * k2.p[k] + 2.0 * k3.p[k] + k4.p[k]);
  }
  return out;
}

Trajectory integrate(const PhaseState& state0, const SystemParams& params,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  if (!is_finite(state0)) throw DivergenceError(0);
  Trajectory traj;
  traj.samples.reserve(cfg.n_steps / cfg.sample_every + 2);
  traj.samples.push_back({0.0, state0});
  PhaseState s = state0;
  for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
    s = rk4_step(s, params, cfg.dt);
    if (!is_finite(s)) throw DivergenceError(step);
    if (step % cfg.sample_every == 0 || step == cfg.n_steps) {
      traj.samples.push_back({cfg.dt * static_cast<double>(step), s});
    }
  }
  return traj;
}

}  // namespace limax
