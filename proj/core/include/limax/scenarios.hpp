#pragma once

#include <cstddef>
#include <string_view>

#include "limax/state.hpp"

namespace limax {

inline constexpr double kClassifyTolerance = 1e-9;

enum class TrajectoryKind {
  kGeneric,
  kRigid13,
  kRigid24,
  kRigidBoth,
  kChoreography,
  kChoreographySymmetric,
};

std::string_view to_string(TrajectoryKind kind);

struct TrajectoryClass {
  TrajectoryKind kind = TrajectoryKind::kGeneric;
  // +1 or -1 for the choreographic kinds, 0 otherwise.
  int sign_branch = 0;
};

/// Scale-normalized residuals of the two choreography conditions for one
/// sign branch s:  m w r13 = s p24  and  m w r24 = -s p13.
struct BranchResidual {
  double r13_p24 = 0.0;
  double r24_p13 = 0.0;

  double max() const { return r13_p24 > r24_p13 ? r13_p24 : r24_p13; }
};

struct ChoreographyCheck {
  bool holds = false;
  // Branch that passed; ties go to the smaller residual, then to +1.
  int sign_branch = 1;
  BranchResidual plus;
  BranchResidual minus;
  // Normalizer: m w * max(|r13|, |r24|, |p13|/(m w), |p24|/(m w)).
  double scale = 0.0;

  const BranchResidual& branch(int s) const { return s > 0 ? plus : minus; }
  double best_residual() const;
};

// Requires the CM frame (throws NotInCmFrame).
ChoreographyCheck check_choreography_conditions(const PhaseState& s, const SystemParams& params,
                                                double tol = kClassifyTolerance);

enum class Pair { k13, k24 };

struct RigidityResidual {
  double modulus = 0.0;        // | |p| - m w |r| |, normalized
  double orthogonality = 0.0;  // |r . p|, normalized
};

RigidityResidual rigidity_residual(const PhaseState& s, const SystemParams& params, Pair pair);

// |p_pair| = m w |r_pair| and r_pair perpendicular to p_pair, within tol.
bool check_rigid_pair(const PhaseState& s, const SystemParams& params, Pair pair,
                      double tol = kClassifyTolerance);

// Requires the CM frame (throws NotInCmFrame).
TrajectoryClass classify(const PhaseState& s, const SystemParams& params,
                         double tol = kClassifyTolerance);

/// Instantaneous equal-and-opposite momentum change at time t_ex. Body labels
/// are 1..4.
struct BoostEvent {
  double t_ex = 0.0;
  int body_plus = 2;
  int body_minus = 3;
  Vec2 delta;

  // Throws InvalidInput on bad labels, equal bodies or non-finite values.
  void validate() const;
};

// Positions untouched; p[plus] += delta, p[minus] -= delta.
PhaseState apply_pair_boost(const PhaseState& s, const BoostEvent& event);

/// Boosts that merge two 2-body choreographies into a four-body one. Each is
/// applied equal-and-opposite within its pair (p1 += d13, p3 -= d13,
/// p2 += d24, p4 -= d24), so p13 and p24 change by twice the boost and the
/// pair sums are untouched.
struct FusionBoosts {
  Vec2 delta_13;
  Vec2 delta_24;
};

// Targets the branch s = -1, i.e. r2(t) = r1(t + tau):
//   d13 = (m w r24 - p13) / 2,  d24 = -(m w r13 + p24) / 2.
// Requires the CM frame.
FusionBoosts fusion_boosts(const PhaseState& s, const SystemParams& params);

PhaseState apply_fusion(const PhaseState& s, const FusionBoosts& boosts);

// Fills bodies 2 and 4 from bodies 1 and 3 so that the CM frame holds and
// the choreography conditions are met on the given sign branch.
PhaseState complete_choreography(Vec2 r1, Vec2 r3, Vec2 p1, Vec2 p3, const SystemParams& params,
                                 int sign_branch = -1);

struct FragmentationResult {
  Trajectory before;  // from t = 0 up to t_ex
  Trajectory after;   // local time since the boost, t in [0, horizon]
  PhaseState pre_boost;
  PhaseState post_boost;
  BoostEvent event;
};

// Propagates state0 analytically to event.t_ex, applies the boost, then
// propagates the boosted state over horizon. Requires the CM frame.
FragmentationResult fragment(const PhaseState& state0, const SystemParams& params,
                             const BoostEvent& event, double horizon,
                             std::size_t n_samples = 257);

// The trisectrix choreography boosted on bodies (2, 3) after beta full cycles.
// Throws InvalidInput if beta < 0.
FragmentationResult fragmentation_scenario(const SystemParams& params, Vec2 delta, int beta,
                                           double horizon, std::size_t n_samples = 257);

// Reference configurations, all with m = omega = 1.
PhaseState generic_example_state();        // two non-rigid 2-body choreographies
PhaseState rigid_pairs_example_state();    // r13 = 4, r24 = 2 constant
PhaseState generic_choreography_state();   // bodies 2, 4 completed on branch -1
BoostEvent fragmentation_example_event();  // delta = (3/4)(-1, 1) on (2, 3), one period

}  // namespace limax
