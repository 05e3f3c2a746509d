#include "limax/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "limax/analytic.hpp"
#include "limax/error.hpp"

namespace limax {
namespace {

std::vector<double> linspace(double end, std::size_t n) {
  if (n < 2 || end <= 0.0) return {0.0};
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = end * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return t;
}

Trajectory sampled(const PhaseState& s0, const SystemParams& params, double end, std::size_t n) {
  Trajectory traj;
  for (double t : linspace(end, n)) traj.samples.push_back({t, propagate(s0, params, t)});
  return traj;
}

}  // namespace

std::string_view to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::kGeneric: return "GENERIC";
    case TrajectoryKind::kRigid13: return "RIGID_13";
    case TrajectoryKind::kRigid24: return "RIGID_24";
    case TrajectoryKind::kRigidBoth: return "RIGID_BOTH";
    case TrajectoryKind::kChoreography: return "CHOREOGRAPHY";
    case TrajectoryKind::kChoreographySymmetric: return "CHOREOGRAPHY_SYMMETRIC";
  }
  return "?";
}

double ChoreographyCheck::best_residual() const { return std::min(plus.max(), minus.max()); }

ChoreographyCheck check_choreography_conditions(const PhaseState& s, const SystemParams& params,
                                                double tol) {
  require_cm_frame(s);
  const double mw = params.m_omega();
  const Vec2 r13 = s.r_rel(1, 3);
  const Vec2 r24 = s.r_rel(2, 4);
  const Vec2 p13 = s.p_rel(1, 3);
  const Vec2 p24 = s.p_rel(2, 4);

  ChoreographyCheck check;
  check.scale = mw * std::max({norm(r13), norm(r24), norm(p13) / mw, norm(p24) / mw});
  if (check.scale == 0.0) {
    check.holds = true;
    check.sign_branch = 1;
    return check;
  }
  for (int branch : {1, -1}) {
    BranchResidual& res = branch > 0 ? check.plus : check.minus;
    res.r13_p24 = norm(mw * r13 - branch * p24) / check.scale;
    res.r24_p13 = norm(mw * r24 + branch * p13) / check.scale;
  }
  const double plus = check.plus.max();
  const double minus = check.minus.max();
  check.sign_branch = minus < plus ? -1 : 1;
  check.holds = std::min(plus, minus) <= tol;
  return check;
}

RigidityResidual rigidity_residual(const PhaseState& s, const SystemParams& params, Pair pair) {
  const double mw = params.m_omega();
  const Vec2 r = pair == Pair::k13 ? s.r_rel(1, 3) : s.r_rel(2, 4);
  const Vec2 p = pair == Pair::k13 ? s.p_rel(1, 3) : s.p_rel(2, 4);
  const double scale = std::max(norm(r), norm(p) / mw);
  if (scale == 0.0) return {};
  return {std::abs(norm(p) - mw * norm(r)) / (mw * scale),
          std::abs(dot(r, p)) / (mw * scale * scale)};
}

bool check_rigid_pair(const PhaseState& s, const SystemParams& params, Pair pair, double tol) {
  const RigidityResidual res = rigidity_residual(s, params, pair);
  return res.modulus <= tol && res.orthogonality <= tol;
}

TrajectoryClass classify(const PhaseState& s, const SystemParams& params, double tol) {
  const ChoreographyCheck choreo = check_choreography_conditions(s, params, tol);
  const bool rigid13 = check_rigid_pair(s, params, Pair::k13, tol);
  const bool rigid24 = check_rigid_pair(s, params, Pair::k24, tol);
  if (choreo.holds) {
    return {rigid13 && rigid24 ? TrajectoryKind::kChoreographySymmetric
                               : TrajectoryKind::kChoreography,
            choreo.sign_branch};
  }
  if (rigid13 && rigid24) return {TrajectoryKind::kRigidBoth, 0};
  if (rigid13) return {TrajectoryKind::kRigid13, 0};
  if (rigid24) return {TrajectoryKind::kRigid24, 0};
  return {TrajectoryKind::kGeneric, 0};
}

void BoostEvent::validate() const {
  auto valid = [](int b) { return b >= 1 && b <= kBodies; };
  if (!valid(body_plus) || !valid(body_minus)) throw InvalidInput("boost body labels must be 1..4");
  if (body_plus == body_minus) throw InvalidInput("boost bodies must differ");
  if (!std::isfinite(t_ex) || !is_finite(delta)) throw InvalidInput("boost values must be finite");
}

PhaseState apply_pair_boost(const PhaseState& s, const BoostEvent& event) {
  event.validate();
  PhaseState out = s;
  out.p[event.body_plus - 1] += event.delta;
  out.p[event.body_minus - 1] -= event.delta;
  return out;
}

FusionBoosts fusion_boosts(const PhaseState& s, const SystemParams& params) {
  require_cm_frame(s);
  const double mw = params.m_omega();
  return {0.5 * (mw * s.r_rel(2, 4) - s.p_rel(1, 3)),
          -0.5 * (mw * s.r_rel(1, 3) + s.p_rel(2, 4))};
}

PhaseState apply_fusion(const PhaseState& s, const FusionBoosts& boosts) {
  PhaseState out = s;
  out.p[0] += boosts.delta_13;
  out.p[2] -= boosts.delta_13;
  out.p[1] += boosts.delta_24;
  out.p[3] -= boosts.delta_24;
  return out;
}

PhaseState complete_choreography(Vec2 r1, Vec2 r3, Vec2 p1, Vec2 p3, const SystemParams& params,
                                 int sign_branch) {
  if (sign_branch != 1 && sign_branch != -1) throw InvalidInput("sign branch must be +1 or -1");
  const double mw = params.m_omega();
  const double s = sign_branch;
  const Vec2 r24_sum = -(r1 + r3);
  const Vec2 p24_sum = -(p1 + p3);
  const Vec2 r24 = (-s / mw) * (p1 - p3);
  const Vec2 p24 = (s * mw) * (r1 - r3);
  PhaseState out;
  out.r = {r1, 0.5 * (r24_sum + r24), r3, 0.5 * (r24_sum - r24)};
  out.p = {p1, 0.5 * (p24_sum + p24), p3, 0.5 * (p24_sum - p24)};
  return out;
}

FragmentationResult fragment(const PhaseState& state0, const SystemParams& params,
                             const BoostEvent& event, double horizon, std::size_t n_samples) {
  event.validate();
  if (event.t_ex < 0.0) throw InvalidInput("boost time must be non-negative");
  if (!(std::isfinite(horizon) && horizon >= 0.0)) throw InvalidInput("horizon must be >= 0");
  FragmentationResult out;
  out.event = event;
  out.before = sampled(state0, params, event.t_ex, n_samples);
  out.pre_boost = propagate(state0, params, event.t_ex);
  out.post_boost = apply_pair_boost(out.pre_boost, event);
  out.after = sampled(out.post_boost, params, horizon, n_samples);
  return out;
}

FragmentationResult fragmentation_scenario(const SystemParams& params, Vec2 delta, int beta,
                                           double horizon, std::size_t n_samples) {
  if (beta < 0) throw InvalidInput("beta must be non-negative");
  const BoostEvent event{params.period() * beta, 2, 3, delta};
  return fragment(trisectrix_initial_state(params), params, event, horizon, n_samples);
}

PhaseState generic_example_state() {
  PhaseState s;
  s.r = {Vec2{1.0, 1.0}, Vec2{0.0, 1.0}, Vec2{0.0, -1.0}, Vec2{-1.0, -1.0}};
  s.p = {Vec2{0.0, 1.5}, Vec2{-0.5, -1.0}, Vec2{0.0, 0.5}, Vec2{0.5, -1.0}};
  return s;
}

PhaseState rigid_pairs_example_state() {
  PhaseState s;
  s.r = {Vec2{2.5, 0.0}, Vec2{-0.5, 1.0}, Vec2{-1.5, 0.0}, Vec2{-0.5, -1.0}};
  s.p = {Vec2{0.0, 2.0}, Vec2{1.0, 0.0}, Vec2{0.0, -2.0}, Vec2{-1.0, 0.0}};
  return s;
}

PhaseState generic_choreography_state() {
  return complete_choreography({0.5, -2.0}, {-2.0, 0.0}, {0.0, 1.5}, {0.0, 0.5}, SystemParams{},
                               -1);
}

BoostEvent fragmentation_example_event() {
  return {2.0 * std::numbers::pi, 2, 3, Vec2{-0.75, 0.75}};
}

}  // namespace limax
