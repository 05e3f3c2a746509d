#include "limax/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "limax/dynamics.hpp"
#include "limax/hamiltonian.hpp"
#include "limax/integrals.hpp"
#include "limax/random.hpp"

namespace limax::cli {

namespace {

using N = IntegralName;

constexpr std::size_t kReportSamples = 257;
constexpr std::size_t kBracketStates = 100;
constexpr double kDriftTolerance = 1e-9;
constexpr double kBracketTolerance = 1e-8;
constexpr double kCollisionWarning = 1e-6;

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DivergenceError& e) {
    err << "limax: divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const Error& e) {
    err << "limax: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "limax: unexpected error: " << e.what() << "\n";
    return 1;
  }
}

Scenario load_with_overrides(const CommonOptions& opt) {
  Scenario sc = load_scenario(opt.scenario);
  if (opt.dt) {
    if (!(std::isfinite(*opt.dt) && *opt.dt > 0.0)) throw InvalidInput("--dt must be positive");
    sc.dt = *opt.dt;
  }
  if (opt.t_final) {
    if (!(std::isfinite(*opt.t_final) && *opt.t_final >= 0.0)) {
      throw InvalidInput("--t-final must be non-negative");
    }
    sc.t_final = *opt.t_final;
  }
  if (opt.seed) sc.seed = *opt.seed;
  return sc;
}

// Accepts a state within tol of the CM frame and removes the residual drift.
PhaseState centered(const PhaseState& s, double tol) {
  require_cm_frame(s, tol);
  return cm_project(s);
}

std::vector<double> grid(double horizon, std::size_t n) {
  std::vector<double> ts(n);
  for (std::size_t k = 0; k < n; ++k) {
    ts[k] = n == 1 ? 0.0 : horizon * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return ts;
}

Trajectory analytic_samples(const PhaseState& s, const SystemParams& params, double horizon) {
  Trajectory traj;
  for (double t : grid(horizon, kReportSamples)) traj.samples.push_back({t, propagate(s, params, t)});
  return traj;
}

Json class_json(const TrajectoryClass& c) {
  return Json{{"kind", std::string(to_string(c.kind))}, {"sign_branch", c.sign_branch}};
}

Json residual_json(const BranchResidual& r) {
  return Json{{"r13_p24", r.r13_p24}, {"r24_p13", r.r24_p13}};
}

Json choreography_json(const ChoreographyCheck& c) {
  return Json{{"holds", c.holds},
              {"sign_branch", c.sign_branch},
              {"plus", residual_json(c.plus)},
              {"minus", residual_json(c.minus)}};
}

Json rigidity_json(const PhaseState& s, const SystemParams& params, Pair pair, double tol) {
  const RigidityResidual r = rigidity_residual(s, params, pair);
  return Json{{"rigid", check_rigid_pair(s, params, pair, tol)},
              {"modulus", r.modulus},
              {"orthogonality", r.orthogonality}};
}

Json classification_json(const PhaseState& s, const SystemParams& params, double tol) {
  Json j;
  j["class"] = class_json(classify(s, params, tol));
  j["choreography"] = choreography_json(check_choreography_conditions(s, params, tol));
  j["pair_13"] = rigidity_json(s, params, Pair::k13, tol);
  j["pair_24"] = rigidity_json(s, params, Pair::k24, tol);
  return j;
}

std::vector<N> drift_names(const Scenario& sc) {
  std::vector<N> names(global_integrals().begin(), global_integrals().end());
  for (const N& extra : std::vector<N>{N::h_rel(), N::igen()}) names.push_back(extra);
  for (const N& n : sc.outputs) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
  return names;
}

// Returns the drift table and whether every entry passed.
std::pair<Json, bool> drift_table(const std::vector<N>& names, const Trajectory& traj,
                                  const SystemParams& params) {
  Json table = Json::array();
  bool pass = true;
  for (const N& n : names) {
    const IntegralReport r = integral_drift(n, traj.samples, params);
    const double initial = r.samples.front().value;
    const bool ok = r.max_drift <= kDriftTolerance * (1.0 + std::abs(initial));
    pass = pass && ok;
    table.push_back(Json{{"name", n.label()},
                         {"initial", initial},
                         {"max_drift", r.max_drift},
                         {"conserved", ok}});
  }
  return {std::move(table), pass};
}

Json bracket_suite(const SystemParams& params, std::uint64_t seed, bool& pass) {
  const std::vector<PhaseState> states = random_unit_states(seed, kBracketStates);
  double closure = 0.0;
  double commuting = 0.0;
  double casimir = 0.0;
  double hamiltonian = 0.0;
  double spread = 0.0;
  const double constant = poisson_bracket(N::fradkin(1, 1), N::l(1, 2), states[0], params) /
                          eval_integral(N::fradkin(1, 2), states[0], params);
  auto l_value = [&](int i, int j, const PhaseState& s) {
    if (i == j) return 0.0;
    return i < j ? eval_integral(N::l(i, j), s, params) : -eval_integral(N::l(j, i), s, params);
  };
  for (const PhaseState& s : states) {
    auto pb = [&](const N& f, const N& g) { return poisson_bracket(f, g, s, params); };
    for (int i = 1; i <= 4; ++i) {
      casimir = std::max(casimir, std::abs(pb(N::h_4d(), N::fradkin(i, i))));
      for (int j = i + 1; j <= 4; ++j) {
        commuting = std::max(commuting, std::abs(pb(N::fradkin(i, i), N::fradkin(j, j))));
        casimir = std::max(casimir, std::abs(pb(N::h_4d(), N::l(i, j))));
        spread = std::max(spread, std::abs(pb(N::fradkin(i, i), N::l(i, j)) -
                                           constant * eval_integral(N::fradkin(i, j), s, params)));
        for (int k = 1; k <= 4; ++k) {
          for (int l = k + 1; l <= 4; ++l) {
            const double expected = (i == k ? l_value(j, l, s) : 0.0) -
                                    (i == l ? l_value(j, k, s) : 0.0) -
                                    (j == k ? l_value(i, l, s) : 0.0) +
                                    (j == l ? l_value(i, k, s) : 0.0);
            closure = std::max(closure, std::abs(pb(N::l(i, j), N::l(k, l)) - expected));
          }
        }
      }
    }
    hamiltonian = std::max({hamiltonian, std::abs(pb(N::l_u3(), N::h_rel())),
                            std::abs(pb(N::holt(), N::h_rel())), std::abs(pb(N::h3x(), N::h_rel()))});
  }
  pass = std::max({closure, commuting, casimir, hamiltonian, spread}) <= kBracketTolerance;
  return Json{{"seed", seed},
              {"states", kBracketStates},
              {"tolerance", kBracketTolerance},
              {"so4_closure", closure},
              {"fradkin_diagonal_commute", commuting},
              {"h4d_casimir", casimir},
              {"u3_integrals_with_h_rel", hamiltonian},
              {"fradkin_rotation_constant", constant},
              {"fradkin_rotation_spread", spread},
              {"pass", pass}};
}

}  // namespace

double default_tolerance() {
  const char* env = std::getenv("LIMAX_DEFAULT_TOL");
  if (env == nullptr || *env == '\0') return kClassifyTolerance;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (*end != '\0' || !std::isfinite(tol) || tol <= 0.0) {
    throw InvalidInput(std::string("LIMAX_DEFAULT_TOL must be a positive number, got '") + env +
                       "'");
  }
  return tol;
}

Trajectory simulate(const Scenario& sc, Engine engine) {
  const double eps = 1e-9 * sc.dt;
  std::vector<double> times;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    if (t >= sc.t_final - eps) break;
    times.push_back(t);
  }
  times.push_back(sc.t_final);
  for (const BoostEvent& e : sc.events) {
    if (e.t_ex > sc.t_final) break;
    std::erase_if(times, [&](double t) { return std::abs(t - e.t_ex) <= eps; });
    times.push_back(e.t_ex);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  const double tol = default_tolerance();
  PhaseState segment_state = sc.state;
  if (engine == Engine::kAnalytic) segment_state = centered(segment_state, tol);
  double segment_start = 0.0;
  PhaseState current = sc.state;
  double current_t = 0.0;
  std::size_t next_event = 0;
  std::size_t step = 0;

  Trajectory traj;
  traj.samples.reserve(times.size());
  for (double t : times) {
    PhaseState s;
    if (engine == Engine::kAnalytic) {
      s = propagate(segment_state, sc.params, t - segment_start);
    } else {
      s = t > current_t ? rk4_step(current, sc.params, t - current_t) : current;
      ++step;
      if (!is_finite(s)) throw DivergenceError(step);
    }
    while (next_event < sc.events.size() && sc.events[next_event].t_ex <= t) {
      s = apply_pair_boost(s, sc.events[next_event]);
      segment_state = s;
      segment_start = t;
      ++next_event;
    }
    traj.samples.push_back({t, s});
    current = s;
    current_t = t;
  }
  return traj;
}

Json verify_report(const Scenario& sc, double tol) {
  const PhaseState s0 = centered(sc.state, tol);
  const SystemParams& params = sc.params;
  const double horizon = sc.t_final > 0.0 ? sc.t_final : params.period();
  const std::vector<N> names = drift_names(sc);

  const Trajectory analytic = analytic_samples(s0, params, horizon);
  const std::size_t n_steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / sc.dt - 1e-9)));
  const Trajectory numeric =
      integrate(s0, params, IntegratorConfig::for_horizon(horizon, n_steps));

  auto [analytic_table, analytic_pass] = drift_table(names, analytic, params);
  auto [numeric_table, numeric_pass] = drift_table(names, numeric, params);

  double involution = 0.0;
  for (const TimedState& ts : analytic.samples) {
    involution = std::max(involution, std::abs(bracket_L_H3x(ts.state, params)));
  }
  Json particular = Json::array();
  for (const N& n : {N::dot_r(), N::dot_p(), N::igen()}) {
    const double drift = integral_drift(n, analytic.samples, params).max_drift;
    particular.push_back(Json{{"name", n.label()},
                              {"max_drift", drift},
                              {"conserved", drift <= kDriftTolerance}});
  }

  bool brackets_pass = false;
  Json brackets = bracket_suite(params, sc.seed, brackets_pass);

  Json report;
  report["m"] = params.m();
  report["omega"] = params.omega();
  report["tolerance"] = tol;
  report["events_ignored"] = sc.events.size();
  report["classification"] = classification_json(s0, params, tol);
  report["energy"] = total_hamiltonian(s0, params);
  report["drift"] = Json{{"horizon", horizon},
                         {"tolerance", kDriftTolerance},
                         {"analytic", Json{{"samples", analytic.samples.size()},
                                           {"integrals", std::move(analytic_table)}}},
                         {"numeric", Json{{"steps", n_steps},
                                          {"dt", horizon / static_cast<double>(n_steps)},
                                          {"integrals", std::move(numeric_table)}}}};
  report["particular"] = Json{{"integrals", std::move(particular)},
                              {"bracket_L_H3x_max", involution},
                              {"involution", involution <= 1e-10}};
  report["brackets"] = std::move(brackets);
  report["pass"] = analytic_pass && numeric_pass && brackets_pass;
  return report;
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_with_overrides(opt.common);
    emit(opt.common.out, trajectory_csv(simulate(sc, opt.engine)), out);
    return kExitOk;
  });
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_with_overrides(opt.common);
    const Json report = verify_report(sc, default_tolerance());
    emit(opt.common.out, dump_json(report), out);
    if (opt.strict && !report["pass"].get<bool>()) {
      err << "limax: verification failed\n";
      return kExitVerification;
    }
    return kExitOk;
  });
}

int run_classify(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_with_overrides(opt);
    const double tol = default_tolerance();
    Json j = classification_json(centered(sc.state, tol), sc.params, tol);
    j["tolerance"] = tol;
    emit(opt.out, dump_json(j), out);
    return kExitOk;
  });
}

int run_fragment(const FragmentOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_with_overrides(opt.common);
    const double tol = default_tolerance();
    BoostEvent event;
    if (!sc.events.empty()) event = sc.events.front();
    if (opt.delta) {
      event.delta = *opt.delta;
      event.body_plus = opt.plus;
      event.body_minus = opt.minus;
    } else if (sc.events.empty()) {
      throw InvalidInput("fragment needs --delta or an event in the scenario");
    }
    if (opt.beta) {
      if (*opt.beta < 0) throw InvalidInput("--beta must be non-negative");
      event.t_ex = static_cast<double>(*opt.beta) * sc.params.period();
    }
    if (opt.t_ex) event.t_ex = *opt.t_ex;
    event.validate();
    const double horizon = sc.t_final > 0.0 ? sc.t_final : sc.params.period();
    const PhaseState s0 = centered(sc.state, tol);
    const FragmentationResult res = fragment(s0, sc.params, event, horizon, kReportSamples);

    double pair = 0.0;
    double quarter_minus = 0.0;
    double quarter_plus = 0.0;
    for (const TimedState& ts : res.after.samples) {
      pair = std::max(pair, pair_shift_defect(res.post_boost, sc.params, ts.t));
      quarter_minus = std::max(quarter_minus, quarter_shift_defect(res.post_boost, sc.params, ts.t, -1));
      quarter_plus = std::max(quarter_plus, quarter_shift_defect(res.post_boost, sc.params, ts.t, +1));
    }
    Json j;
    j["event"] = Json{{"t", event.t_ex},
                      {"plus", event.body_plus},
                      {"minus", event.body_minus},
                      {"delta", vec_to_json(event.delta)}};
    j["pre_boost"] = Json{{"bodies", state_to_json(res.pre_boost)},
                          {"classification", classification_json(res.pre_boost, sc.params, tol)}};
    j["post_boost"] = Json{{"bodies", state_to_json(res.post_boost)},
                           {"classification", classification_json(res.post_boost, sc.params, tol)}};
    j["after"] = Json{{"horizon", horizon},
                      {"pair_shift_defect", pair},
                      {"quarter_shift_defect_minus", quarter_minus},
                      {"quarter_shift_defect_plus", quarter_plus}};
    if (opt.csv) {
      Trajectory joined;
      joined.samples.assign(res.before.samples.begin(), res.before.samples.end() - 1);
      for (const TimedState& ts : res.after.samples) {
        joined.samples.push_back({event.t_ex + ts.t, ts.state});
      }
      write_file_atomic(*opt.csv, trajectory_csv(joined));
    }
    emit(opt.common.out, dump_json(j), out);
    return kExitOk;
  });
}

int run_fuse(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario sc = load_with_overrides(opt);
    const double tol = default_tolerance();
    const PhaseState s0 = centered(sc.state, tol);
    const FusionBoosts boosts = fusion_boosts(s0, sc.params);
    sc.state = apply_fusion(s0, boosts);
    Json j;
    j["delta_13"] = vec_to_json(boosts.delta_13);
    j["delta_24"] = vec_to_json(boosts.delta_24);
    j["classification"] = classification_json(sc.state, sc.params, tol);
    if (opt.out) {
      write_file_atomic(*opt.out, dump_json(scenario_to_json(sc)));
    } else {
      j["scenario"] = scenario_to_json(sc);
    }
    out << dump_json(j);
    return kExitOk;
  });
}

int run_orbit(const OrbitOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.scenario.has_value() == opt.coeffs.has_value()) {
      throw InvalidInput("orbit needs exactly one of a scenario file or --coeffs");
    }
    if (opt.samples < 2) throw InvalidInput("--samples must be at least 2");
    std::string csv = "t,x,y\n";
    auto row = [&](double t, Vec2 r) {
      csv += format_double(t) + "," + format_double(r.x) + "," + format_double(r.y) + "\n";
    };
    if (opt.coeffs) {
      const SystemParams params(opt.m, opt.omega);
      const double horizon = opt.t_final.value_or(params.period());
      for (double t : grid(horizon, opt.samples)) row(t, class_v_orbit_point(*opt.coeffs, params, t));
      const double sep = class_v_min_separation(*opt.coeffs, params);
      if (sep < kCollisionWarning) {
        err << "limax: warning: bodies on this orbit collide (min separation "
            << format_double(sep) << ")\n";
      }
    } else {
      CommonOptions common;
      common.scenario = *opt.scenario;
      common.t_final = opt.t_final;
      const Scenario sc = load_with_overrides(common);
      const double tol = default_tolerance();
      const PhaseState s0 = centered(sc.state, tol);
      const double horizon = opt.t_final.value_or(sc.params.period());
      for (double t : grid(horizon, opt.samples)) {
        row(t, choreography_orbit_point(s0, sc.params, t, tol));
      }
    }
    emit(opt.out, csv, out);
    return kExitOk;
  });
}

}  // namespace limax::cli
