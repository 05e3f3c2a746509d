#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "limax/commands.hpp"

namespace {

using namespace limax::cli;

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_dt) {
  cmd->add_option("scenario", opt.scenario, "Scenario JSON file")->required();
  cmd->add_option("--out", opt.out, "Output file (default: stdout)");
  if (with_dt) cmd->add_option("--dt", opt.dt, "Override the scenario time step");
  cmd->add_option("--t-final", opt.t_final, "Override the scenario final time");
  cmd->add_option("--seed", opt.seed, "Override the scenario random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limax: four-body harmonic choreographies"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Write a trajectory CSV");
  add_common(simulate, sim.common, true);
  simulate->add_option("--engine", sim.engine, "analytic or numeric")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Engine>{{"analytic", Engine::kAnalytic},
                                        {"numeric", Engine::kNumeric}},
          CLI::ignore_case));

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Write a JSON verification report");
  add_common(verify, ver.common, true);
  verify->add_flag("--strict", ver.strict, "Exit with status 4 when any check fails");

  CommonOptions cls;
  auto* classify = app.add_subcommand("classify", "Classify the initial state");
  add_common(classify, cls, false);

  FragmentOptions frag;
  std::vector<double> delta;
  auto* fragment = app.add_subcommand("fragment", "Apply a pair boost and report the outcome");
  add_common(fragment, frag.common, false);
  fragment->add_option("--delta", delta, "Boost vector dx dy")->expected(2);
  fragment->add_option("--beta", frag.beta, "Boost after this many full periods");
  fragment->add_option("--t-ex", frag.t_ex, "Boost time");
  fragment->add_option("--plus", frag.plus, "Body receiving +delta")->check(CLI::Range(1, 4));
  fragment->add_option("--minus", frag.minus, "Body receiving -delta")->check(CLI::Range(1, 4));
  fragment->add_option("--csv", frag.csv, "Also write the joined trajectory CSV");

  CommonOptions fus;
  auto* fuse = app.add_subcommand("fuse", "Compute fusion boosts; --out writes the fused scenario");
  add_common(fuse, fus, false);

  OrbitOptions orb;
  std::vector<double> coeffs;
  auto* orbit = app.add_subcommand("orbit", "Sample a choreographic orbit as CSV");
  orbit->add_option("scenario", orb.scenario, "Choreographic scenario JSON file");
  orbit->add_option("--coeffs", coeffs, "a b c d a' b' c' d'")->expected(8);
  orbit->add_option("--m", orb.m, "Mass (with --coeffs)");
  orbit->add_option("--omega", orb.omega, "Frequency (with --coeffs)");
  orbit->add_option("--t-final", orb.t_final, "Time span (default: one period)");
  orbit->add_option("--samples", orb.samples, "Number of samples");
  orbit->add_option("--out", orb.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*simulate) return run_simulate(sim, std::cout, std::cerr);
  if (*verify) return run_verify(ver, std::cout, std::cerr);
  if (*classify) return run_classify(cls, std::cout, std::cerr);
  if (*fragment) {
    if (!delta.empty()) frag.delta = limax::Vec2{delta[0], delta[1]};
    return run_fragment(frag, std::cout, std::cerr);
  }
  if (*fuse) return run_fuse(fus, std::cout, std::cerr);
  if (!coeffs.empty()) {
    orb.coeffs = limax::OrbitCoeffs{coeffs[0], coeffs[1], coeffs[2], coeffs[3],
                                    coeffs[4], coeffs[5], coeffs[6], coeffs[7]};
  }
  return run_orbit(orb, std::cout, std::cerr);
}
