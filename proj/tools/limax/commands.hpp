#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "limax/analytic.hpp"
#include "limax/scenario_io.hpp"

namespace limax::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitDivergence = 3,
  kExitVerification = 4,
};

enum class Engine { kAnalytic, kNumeric };

// Classification and CM-frame tolerance, overridable through the
// LIMAX_DEFAULT_TOL environment variable. Throws InvalidInput on a bad value.
double default_tolerance();

struct CommonOptions {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> out;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::uint64_t> seed;
};

struct SimulateOptions {
  CommonOptions common;
  Engine engine = Engine::kAnalytic;
};

struct VerifyOptions {
  CommonOptions common;
  bool strict = false;
};

struct FragmentOptions {
  CommonOptions common;
  std::optional<Vec2> delta;
  std::optional<int> beta;
  std::optional<double> t_ex;
  int plus = 2;
  int minus = 3;
  std::optional<std::filesystem::path> csv;
};

struct OrbitOptions {
  std::optional<std::filesystem::path> scenario;
  std::optional<OrbitCoeffs> coeffs;
  double m = 1.0;
  double omega = 1.0;
  std::optional<double> t_final;
  std::size_t samples = 257;
  std::optional<std::filesystem::path> out;
};

// Each command reports errors on err and returns an ExitCode.
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int run_classify(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int run_fragment(const FragmentOptions& opt, std::ostream& out, std::ostream& err);
int run_fuse(const CommonOptions& opt, std::ostream& out, std::ostream& err);
int run_orbit(const OrbitOptions& opt, std::ostream& out, std::ostream& err);

// Piecewise trajectory on the grid t = k * dt (the last step may be shorter),
// with the boost events applied at their times. A row at an event time holds
// the post-boost state. Events after t_final are ignored.
Trajectory simulate(const Scenario& sc, Engine engine);

Json verify_report(const Scenario& sc, double tol);

}  // namespace limax::cli
