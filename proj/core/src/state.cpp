#include "limax/state.hpp"

#include <algorithm>
#include <cmath>

#include "limax/error.hpp"

namespace limax {

SystemParams::SystemParams(double m, double omega) : m_(m), omega_(omega) {
  if (!(std::isfinite(m) && m > 0.0)) {
    throw InvalidInput("mass must be finite and positive");
  }
  if (!(std::isfinite(omega) && omega > 0.0)) {
    throw InvalidInput("omega must be finite and positive");
  }
}

bool is_finite(const PhaseState& s) {
  return std::all_of(s.r.begin(), s.r.end(), [](Vec2 v) { return is_finite(v); }) &&
         std::all_of(s.p.begin(), s.p.end(), [](Vec2 v) { return is_finite(v); });
}

Vec2 total_position(const PhaseState& s) {
  Vec2 sum;
  for (const Vec2& r : s.r) sum += r;
  return sum;
}

Vec2 total_momentum(const PhaseState& s) {
  Vec2 sum;
  for (const Vec2& p : s.p) sum += p;
  return sum;
}

double state_scale(const PhaseState& s) {
  double scale = 0.0;
  for (int k = 0; k < kBodies; ++k) {
    scale = std::max({scale, std::abs(s.r[k].x), std::abs(s.r[k].y), std::abs(s.p[k].x),
                      std::abs(s.p[k].y)});
  }
  return scale;
}

PhaseState cm_project(const PhaseState& s) {
  const Vec2 mean_r = total_position(s) / kBodies;
  const Vec2 mean_p = total_momentum(s) / kBodies;
  PhaseState out = s;
  for (int k = 0; k < kBodies; ++k) {
    out.r[k] -= mean_r;
    out.p[k] -= mean_p;
  }
  return out;
}

bool in_cm_frame(const PhaseState& s, double tol) {
  const double bound = tol * (1.0 + state_scale(s));
  return norm(total_position(s)) <= bound && norm(total_momentum(s)) <= bound;
}

void require_cm_frame(const PhaseState& s, double tol) {
  if (!in_cm_frame(s, tol)) {
    throw NotInCmFrame(norm(total_position(s)), norm(total_momentum(s)));
  }
}

PhaseState rotated(const PhaseState& s, double angle) {
  PhaseState out;
  for (int k = 0; k < kBodies; ++k) {
    out.r[k] = rotated(s.r[k], angle);
    out.p[k] = rotated(s.p[k], angle);
  }
  return out;
}

PhaseState scaled_momenta(const PhaseState& s, double factor) {
  PhaseState out = s;
  for (Vec2& p : out.p) p *= factor;
  return out;
}

double max_position_diff(const PhaseState& a, const PhaseState& b) {
  double d = 0.0;
  for (int k = 0; k < kBodies; ++k) {
    d = std::max({d, std::abs(a.r[k].x - b.r[k].x), std::abs(a.r[k].y - b.r[k].y)});
  }
  return d;
}

double max_abs_diff(const PhaseState& a, const PhaseState& b) {
  double d = max_position_diff(a, b);
  for (int k = 0; k < kBodies; ++k) {
    d = std::max({d, std::abs(a.p[k].x - b.p[k].x), std::abs(a.p[k].y - b.p[k].y)});
  }
  return d;
}

}  // namespace limax
