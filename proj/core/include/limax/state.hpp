#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "limax/vec2.hpp"

namespace limax {

inline constexpr int kBodies = 4;

using BodyArray = std::array<Vec2, kBodies>;

/// Common mass and angular frequency of the four-body system.
class SystemParams {
 public:
  SystemParams() = default;
  // Throws InvalidInput unless both values are finite and positive.
  SystemParams(double m, double omega);

  double m() const { return m_; }
  double omega() const { return omega_; }
  double m_omega() const { return m_ * omega_; }
  double period() const { return 2.0 * std::numbers::pi / omega_; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  double m_ = 1.0;
  double omega_ = 1.0;
};

/// Positions and momenta of the four bodies (the 16-dimensional phase point).
///
/// Storage is zero-based, but the pair accessors take the conventional body
/// labels 1..4, so `r_rel(1, 3)` is r1 - r3 and `p_sum(2, 4)` is p2 + p4.
struct PhaseState {
  BodyArray r{};
  BodyArray p{};

  Vec2 r_rel(int i, int j) const { return r[i - 1] - r[j - 1]; }
  Vec2 p_rel(int i, int j) const { return p[i - 1] - p[j - 1]; }
  Vec2 r_sum(int i, int j) const { return r[i - 1] + r[j - 1]; }
  Vec2 p_sum(int i, int j) const { return p[i - 1] + p[j - 1]; }

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

struct TimedState {
  double t = 0.0;
  PhaseState state;

  friend bool operator==(const TimedState&, const TimedState&) = default;
};

/// Ordered samples with strictly increasing t, first sample at t = 0.
struct Trajectory {
  std::vector<TimedState> samples;
};

bool is_finite(const PhaseState& s);

Vec2 total_position(const PhaseState& s);
Vec2 total_momentum(const PhaseState& s);

// Largest |component| over all positions and momenta.
double state_scale(const PhaseState& s);

// Subtracts the mean position and mean momentum from every body.
PhaseState cm_project(const PhaseState& s);

inline constexpr double kCmTolerance = 1e-9;

// |sum r| and |sum p| both at most tol * (1 + state_scale(s)).
bool in_cm_frame(const PhaseState& s, double tol = kCmTolerance);

// Throws NotInCmFrame when in_cm_frame fails.
void require_cm_frame(const PhaseState& s, double tol = kCmTolerance);

// Rigid rotation of every position and momentum about the origin.
PhaseState rotated(const PhaseState& s, double angle);

PhaseState scaled_momenta(const PhaseState& s, double factor);

// Max absolute component difference.
double max_abs_diff(const PhaseState& a, const PhaseState& b);
double max_position_diff(const PhaseState& a, const PhaseState& b);

}  // namespace limax
