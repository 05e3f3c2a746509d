#include "limax/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "limax/error.hpp"
#include "limax/scenarios.hpp"

namespace limax {
namespace {

struct Harmonics {
  double c1, s1, c2, s2;

  Harmonics(const SystemParams& params, double t) {
    const double wt = params.omega() * t;
    c1 = std::cos(wt);
    s1 = std::sin(wt);
    c2 = std::cos(2.0 * wt);
    s2 = std::sin(2.0 * wt);
  }
};

// One member of a 2-body choreography: sign +1 for bodies 1/2, -1 for 3/4.
void pair_member(Vec2 r_rel, Vec2 r_sum, Vec2 p_rel, Vec2 p_sum, double sign,
                 const SystemParams& params, const Harmonics& h, Vec2& r, Vec2& p) {
  const double mw = params.m_omega();
  r = 0.5 * (sign * h.c1 * r_rel + h.c2 * r_sum) +
      (2.0 * sign * h.s1 * p_rel + h.s2 * p_sum) / (4.0 * mw);
  p = -0.5 * mw * (sign * h.s1 * r_rel + 2.0 * h.s2 * r_sum) +
      0.5 * (sign * h.c1 * p_rel + h.c2 * p_sum);
}

}  // namespace

double time_delay(const SystemParams& params) {
  return std::numbers::pi / (2.0 * params.omega());
}

PhaseState propagate(const PhaseState& s0, const SystemParams& params, double t) {
  require_cm_frame(s0);
  const Harmonics h(params, t);
  PhaseState out;
  pair_member(s0.r_rel(1, 3), s0.r_sum(1, 3), s0.p_rel(1, 3), s0.p_sum(1, 3), +1.0, params, h,
              out.r[0], out.p[0]);
  pair_member(s0.r_rel(1, 3), s0.r_sum(1, 3), s0.p_rel(1, 3), s0.p_sum(1, 3), -1.0, params, h,
              out.r[2], out.p[2]);
  pair_member(s0.r_rel(2, 4), s0.r_sum(2, 4), s0.p_rel(2, 4), s0.p_sum(2, 4), +1.0, params, h,
              out.r[1], out.p[1]);
  pair_member(s0.r_rel(2, 4), s0.r_sum(2, 4), s0.p_rel(2, 4), s0.p_sum(2, 4), -1.0, params, h,
              out.r[3], out.p[3]);
  return out;
}

RelativeState relative_propagate(Vec2 r0, Vec2 p0, const SystemParams& params, double t) {
  const double mw = params.m_omega();
  const double wt = params.omega() * t;
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  return {c * r0 + (s / mw) * p0, -mw * s * r0 + c * p0};
}

Vec2 choreography_orbit_point(const PhaseState& s0, const SystemParams& params, double t,
                              double tol) {
  const ChoreographyCheck check = check_choreography_conditions(s0, params, tol);
  if (!check.holds) throw NotAChoreography(check.plus.max(), check.minus.max());
  const Harmonics h(params, t);
  const double mw = params.m_omega();
  return 0.5 * (h.c1 * s0.r_rel(1, 3) + h.c2 * s0.r_sum(1, 3)) +
         (h.s1 * s0.p_rel(1, 3) + 0.5 * h.s2 * s0.p_sum(1, 3)) / (2.0 * mw);
}

Vec2 trisectrix_point(const SystemParams& params, double t) {
  const Harmonics h(params, t);
  return {0.5 * (h.c1 + h.c2), 0.5 * (h.s1 + h.s2)};
}

PhaseState trisectrix_initial_state(const SystemParams& params) {
  const double mw = params.m_omega();
  PhaseState s;
  s.r = {Vec2{1.0, 0.0}, Vec2{-0.5, 0.5}, Vec2{0.0, 0.0}, Vec2{-0.5, -0.5}};
  s.p = {Vec2{0.0, 1.5 * mw}, Vec2{-0.5 * mw, -mw}, Vec2{0.0, 0.5 * mw}, Vec2{0.5 * mw, -mw}};
  return s;
}

namespace {

struct ClassVVectors {
  Vec2 cos1, sin1, cos2, sin2;

  explicit ClassVVectors(const OrbitCoeffs& k)
      : cos1{0.5 * k.a, 0.5 * k.a_alt},
        sin1{0.5 * k.c_alt, 0.5 * k.c},
        cos2{0.5 * k.b, 0.5 * k.b_alt},
        sin2{0.5 * k.d_alt, 0.5 * k.d} {}
};

}  // namespace

Vec2 class_v_orbit_point(const OrbitCoeffs& k, const SystemParams& params, double t) {
  const ClassVVectors v(k);
  const Harmonics h(params, t);
  return h.c1 * v.cos1 + h.s1 * v.sin1 + h.c2 * v.cos2 + h.s2 * v.sin2;
}

Vec2 class_v_orbit_velocity(const OrbitCoeffs& k, const SystemParams& params, double t) {
  const ClassVVectors v(k);
  const Harmonics h(params, t);
  return params.omega() *
         (-h.s1 * v.cos1 + h.c1 * v.sin1 - 2.0 * h.s2 * v.cos2 + 2.0 * h.c2 * v.sin2);
}

PhaseState class_v_initial_state(const OrbitCoeffs& k, const SystemParams& params) {
  const double tau = time_delay(params);
  PhaseState s;
  for (int body = 0; body < kBodies; ++body) {
    s.r[body] = class_v_orbit_point(k, params, body * tau);
    s.p[body] = params.m() * class_v_orbit_velocity(k, params, body * tau);
  }
  return s;
}

double class_v_min_separation(const OrbitCoeffs& k, const SystemParams& params,
                              std::size_t n_samples) {
  const double tau = time_delay(params);
  double best = std::numeric_limits<double>::infinity();
  for (double t : period_grid(params, n_samples)) {
    BodyArray r;
    for (int body = 0; body < kBodies; ++body) r[body] = class_v_orbit_point(k, params, t + body * tau);
    for (int i = 0; i < kBodies; ++i)
      for (int j = i + 1; j < kBodies; ++j) best = std::min(best, norm(r[i] - r[j]));
  }
  return best;
}

std::vector<double> period_grid(const SystemParams& params, std::size_t n) {
  if (n < 2) return {0.0};
  std::vector<double> t(n);
  const double period = params.period();
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = period * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return t;
}

double pair_shift_defect(const PhaseState& s0, const SystemParams& params, double t) {
  const PhaseState now = propagate(s0, params, t);
  const PhaseState later = propagate(s0, params, t + 2.0 * time_delay(params));
  return std::max(norm(now.r[2] - later.r[0]), norm(now.r[3] - later.r[1]));
}

double quarter_shift_defect(const PhaseState& s0, const SystemParams& params, double t,
                            int sign_branch) {
  const double shift = sign_branch > 0 ? -time_delay(params) : time_delay(params);
  return norm(propagate(s0, params, t).r[1] - propagate(s0, params, t + shift).r[0]);
}

}  // namespace limax
