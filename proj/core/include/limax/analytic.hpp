#pragma once

#include <cstddef>
#include <vector>

#include "limax/state.hpp"

namespace limax {

// tau = pi / (2 omega): a quarter period.
double time_delay(const SystemParams& params);

/// Closed-form solution in the CM frame. Each body is
///   r(t) = (s r_rel cos wt + r_sum cos 2wt) / 2
///        + (2 s p_rel sin wt + p_sum sin 2wt) / (4 m w)
/// with (r_rel, r_sum) = (r13, r13+) for bodies 1 (s = +1) and 3 (s = -1),
/// and (r24, r24+) for bodies 2 and 4. Momenta are m dr/dt in closed form.
///
/// Throws NotInCmFrame if sum r or sum p exceed kCmTolerance (scaled).
PhaseState propagate(const PhaseState& state0, const SystemParams& params, double t);

struct RelativeState {
  Vec2 r;
  Vec2 p;
};

// Harmonic evolution of r13 or r24 and its momentum.
RelativeState relative_propagate(Vec2 r0, Vec2 p0, const SystemParams& params, double t);

// Common path of a four-body choreography. Throws NotAChoreography if
// state0 fails the choreography conditions at tolerance tol.
Vec2 choreography_orbit_point(const PhaseState& state0, const SystemParams& params,
                              double t, double tol = 1e-9);

Vec2 trisectrix_point(const SystemParams& params, double t);

// Initial data of the symmetric (trisectrix) choreography.
PhaseState trisectrix_initial_state(const SystemParams& params);

/// Coefficients of the eight-parameter choreographic family:
///   x = (a cos wt + b cos 2wt)/2 + (c' sin wt + d' sin 2wt)/2
///   y = (c sin wt + d sin 2wt)/2 + (a' cos wt + b' cos 2wt)/2
/// The primed values are stored as *_alt.
struct OrbitCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double a_alt = 0.0;
  double b_alt = 0.0;
  double c_alt = 0.0;
  double d_alt = 0.0;
};

Vec2 class_v_orbit_point(const OrbitCoeffs& k, const SystemParams& params, double t);
Vec2 class_v_orbit_velocity(const OrbitCoeffs& k, const SystemParams& params, double t);

// Bodies placed at r(0), r(tau), r(2tau), r(3tau) with momenta m dr/dt.
PhaseState class_v_initial_state(const OrbitCoeffs& k, const SystemParams& params);

// Smallest pairwise distance between the four bodies over n_samples times in
// one period. Small values flag (near-)collisions; the family is not rejected.
double class_v_min_separation(const OrbitCoeffs& k, const SystemParams& params,
                              std::size_t n_samples = 257);

// n equally spaced times covering [0, T] including both ends.
std::vector<double> period_grid(const SystemParams& params, std::size_t n = 257);

// max(|r3(t) - r1(t + 2tau)|, |r4(t) - r2(t + 2tau)|) along propagate.
double pair_shift_defect(const PhaseState& state0, const SystemParams& params, double t);

// |r2(t) - r1(t - s tau)| along propagate, s the choreography sign branch.
// The branch s = -1 (the trisectrix) has r2(t) = r1(t + tau).
double quarter_shift_defect(const PhaseState& state0, const SystemParams& params, double t,
                            int sign_branch = -1);

}  // namespace limax
