#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "limax/analytic.hpp"
#include "limax/commands.hpp"
#include "limax/scenario_io.hpp"

namespace limax::cli {
namespace {

namespace fs = std::filesystem;

fs::path fixture(const char* name) { return fs::path(LIMAX_SCENARIO_DIR) / name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("limax_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const char* const kMinimal = R"({
  "m": 1.0,
  "omega": 1.0,
  "bodies": [
    {"r": [1, 0], "p": [0, 1.5]},
    {"r": [-0.5, 0.5], "p": [-0.5, -1]},
    {"r": [0, 0], "p": [0, 0.5]},
    {"r": [-0.5, -0.5], "p": [0.5, -1]}
  ],
  "dt": 0.01,
  "t_final": 1.0
})";

void expect_error(const std::string& text, int line, const std::string& field) {
  try {
    parse_scenario(text, "test.json");
    FAIL() << "expected a schema error for " << field;
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
    EXPECT_NE(std::string(e.what()).find("test.json:" + std::to_string(line)), std::string::npos);
  }
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const std::size_t pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(ScenarioParseTest, MinimalScenario) {
  const Scenario sc = parse_scenario(kMinimal);
  EXPECT_EQ(sc.state, trisectrix_initial_state(SystemParams{}));
  EXPECT_EQ(sc.dt, 0.01);
  EXPECT_EQ(sc.t_final, 1.0);
  EXPECT_TRUE(sc.events.empty());
  EXPECT_EQ(sc.seed, 0u);
}

TEST(ScenarioParseTest, ShippedFixturesLoad) {
  for (const char* name : {"generic.json", "rigid_pairs.json", "trisectrix.json",
                           "generic_choreography.json", "fragmentation.json"}) {
    EXPECT_NO_THROW(load_scenario(fixture(name))) << name;
  }
  EXPECT_EQ(load_scenario(fixture("trisectrix.json")).state,
            trisectrix_initial_state(SystemParams{}));
  EXPECT_EQ(load_scenario(fixture("generic.json")).state, generic_example_state());
  EXPECT_EQ(load_scenario(fixture("rigid_pairs.json")).state, rigid_pairs_example_state());
  EXPECT_EQ(load_scenario(fixture("generic_choreography.json")).state, generic_choreography_state());
  const Scenario frag = load_scenario(fixture("fragmentation.json"));
  ASSERT_EQ(frag.events.size(), 1u);
  EXPECT_EQ(frag.events[0].delta, fragmentation_example_event().delta);
  EXPECT_EQ(frag.events[0].t_ex, fragmentation_example_event().t_ex);
}

TEST(ScenarioParseTest, SchemaErrorsCarryLineAndField) {
  expect_error(replace(kMinimal, "\"m\": 1.0", "\"m\": \"one\""), 2, "/m");
  expect_error(replace(kMinimal, "\"omega\": 1.0", "\"omega\": -1"), 3, "/omega");
  expect_error(replace(kMinimal, "{\"r\": [0, 0], \"p\": [0, 0.5]}",
                       "{\"r\": [0, 0, 1], \"p\": [0, 0.5]}"),
               7, "/bodies/2/r");
  expect_error(replace(kMinimal, "\"p\": [0.5, -1]", "\"q\": [0.5, -1]"), 8, "/bodies/3/q");
  expect_error(replace(kMinimal, "\"dt\": 0.01", "\"dt\": 0"), 10, "/dt");
  expect_error(replace(kMinimal, "\"t_final\": 1.0", "\"tfinal\": 1.0"), 11, "/tfinal");
  expect_error(replace(kMinimal, "    {\"r\": [0, 0], \"p\": [0, 0.5]},\n", ""), 4,
               "/bodies");
}

TEST(ScenarioParseTest, EventValidation) {
  const std::string base = replace(kMinimal, "\"t_final\": 1.0",
                                   "\"t_final\": 1.0,\n  \"events\": [\n    EVENTS\n  ]");
  EXPECT_NO_THROW(parse_scenario(replace(base, "EVENTS",
                                         R"({"t": 0.5, "plus": 2, "minus": 3, "delta": [1, 0]})")));
  expect_error(replace(base, "EVENTS", R"({"t": 0.5, "plus": 2, "minus": 2, "delta": [1, 0]})"),
               13, "/events/0/minus");
  expect_error(replace(base, "EVENTS", R"({"t": 0.5, "plus": 5, "minus": 2, "delta": [1, 0]})"),
               13, "/events/0/plus");
  expect_error(replace(base, "EVENTS",
                       "{\"t\": 0.5, \"plus\": 1, \"minus\": 2, \"delta\": [1, 0]},\n"
                       "    {\"t\": 0.2, \"plus\": 1, \"minus\": 2, \"delta\": [1, 0]}"),
               14, "/events/1/t");
}

TEST(ScenarioParseTest, MalformedJsonReportsLine) {
  try {
    parse_scenario(replace(kMinimal, "\"dt\": 0.01,", "\"dt\": 0.01"), "bad.json");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), 11);
  }
}

TEST(ScenarioParseTest, OutputsAndRoundTrip) {
  Scenario sc = load_scenario(fixture("fragmentation.json"));
  sc.outputs = {IntegralName::dot_r(), IntegralName::fradkin(1, 4)};
  const Scenario back = parse_scenario(dump_json(scenario_to_json(sc)));
  EXPECT_EQ(back.state, sc.state);
  EXPECT_EQ(back.params, sc.params);
  EXPECT_EQ(back.dt, sc.dt);
  EXPECT_EQ(back.t_final, sc.t_final);
  EXPECT_EQ(back.seed, sc.seed);
  EXPECT_EQ(back.outputs, sc.outputs);
  ASSERT_EQ(back.events.size(), 1u);
  EXPECT_EQ(back.events[0].delta, sc.events[0].delta);
  expect_error(replace(kMinimal, "\"dt\": 0.01", "\"outputs\": [\"H_2D\", \"BOGUS\"],\n  \"dt\": 0.01"),
               10, "/outputs/1");
}

TEST(CsvTest, RoundTripIsExact) {
  const Scenario sc = load_scenario(fixture("generic.json"));
  const Trajectory traj = simulate(sc, Engine::kAnalytic);
  const Trajectory back = parse_trajectory_csv(trajectory_csv(traj));
  EXPECT_EQ(back.samples, traj.samples);
  EXPECT_EQ(trajectory_csv(traj).substr(0, csv_header().size()),
            "t,x1,y1,px1,py1,x2,y2,px2,py2,x3,y3,px3,py3,x4,y4,px4,py4\n");
  EXPECT_THROW(parse_trajectory_csv("t,x\n"), ScenarioError);
  EXPECT_THROW(parse_trajectory_csv(csv_header() + "0,1,2\n"), ScenarioError);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, -1.0 / 3.0, 6.283185307179586, 1e-300, -0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(-0.0), "0");
}

TEST(SimulateTest, AnalyticPeriodClosesOnTrisectrix) {
  Scenario sc = load_scenario(fixture("trisectrix.json"));
  const Trajectory traj = simulate(sc, Engine::kAnalytic);
  EXPECT_EQ(traj.samples.size(), 10001u);
  EXPECT_EQ(traj.samples.back().t, sc.t_final);
  EXPECT_LT(max_abs_diff(traj.samples.back().state, traj.samples.front().state), 1e-9);
}

TEST(SimulateTest, NumericMatchesAnalytic) {
  for (const char* name : {"generic.json", "rigid_pairs.json", "fragmentation.json"}) {
    const Scenario sc = load_scenario(fixture(name));
    const Trajectory a = simulate(sc, Engine::kAnalytic);
    const Trajectory n = simulate(sc, Engine::kNumeric);
    ASSERT_EQ(a.samples.size(), n.samples.size());
    double diff = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
      EXPECT_EQ(a.samples[k].t, n.samples[k].t);
      diff = std::max(diff, max_abs_diff(a.samples[k].state, n.samples[k].state));
    }
    EXPECT_LE(diff, 1e-6) << name;
  }
}

TEST(SimulateTest, EventSplitsTheChoreography) {
  Scenario sc = load_scenario(fixture("fragmentation.json"));
  sc.dt = sc.params.period() / 400.0;
  const Trajectory traj = simulate(sc, Engine::kAnalytic);
  const std::size_t quarter = 100;
  const double t_ex = sc.events[0].t_ex;
  double before = 0.0;
  double after = 0.0;
  for (std::size_t k = 0; k + quarter < traj.samples.size(); ++k) {
    const TimedState& a = traj.samples[k];
    const TimedState& b = traj.samples[k + quarter];
    const double d = norm(a.state.r[1] - b.state.r[0]);
    if (b.t < t_ex - 1e-9) before = std::max(before, d);
    if (a.t >= t_ex - 1e-9) after = std::max(after, d);
  }
  EXPECT_LT(before, 1e-9);
  EXPECT_GT(after, 0.1);
  // The row at the event time holds the boosted momenta.
  const auto it = std::find_if(traj.samples.begin(), traj.samples.end(),
                               [&](const TimedState& ts) { return ts.t == t_ex; });
  ASSERT_NE(it, traj.samples.end());
  EXPECT_NEAR(it->state.p[1].x, -1.25, 1e-12);
  EXPECT_NEAR(it->state.p[1].y, -0.25, 1e-12);
}

TEST(SimulateTest, OffGridEventAndFinalTime) {
  Scenario sc = parse_scenario(kMinimal);
  sc.t_final = 0.105;
  sc.events.push_back({0.0333, 1, 2, Vec2{0.1, 0.0}});
  const Trajectory traj = simulate(sc, Engine::kAnalytic);
  ASSERT_EQ(traj.samples.size(), 13u);
  EXPECT_EQ(traj.samples[4].t, 0.0333);
  EXPECT_EQ(traj.samples.back().t, 0.105);
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    EXPECT_GT(traj.samples[k].t, traj.samples[k - 1].t);
  }
}

TEST(SimulateTest, RejectsStatesOutsideCmFrameForAnalytic) {
  Scenario sc = parse_scenario(kMinimal);
  sc.state.p[0].x += 0.5;
  EXPECT_THROW(simulate(sc, Engine::kAnalytic), NotInCmFrame);
  EXPECT_NO_THROW(simulate(sc, Engine::kNumeric));
}

double drift_of(const Json& table, const std::string& name) {
  for (const Json& row : table) {
    if (row["name"] == name) return row["max_drift"].get<double>();
  }
  ADD_FAILURE() << "missing " << name;
  return 1e300;
}

TEST(VerifyTest, TrisectrixParticularIntegrals) {
  const Json r = verify_report(load_scenario(fixture("trisectrix.json")), 1e-9);
  EXPECT_LE(drift_of(r["particular"]["integrals"], "DOT_R"), 1e-10);
  EXPECT_LE(drift_of(r["particular"]["integrals"], "DOT_P"), 1e-10);
  EXPECT_LE(r["particular"]["bracket_L_H3x_max"].get<double>(), 1e-10);
  EXPECT_EQ(r["classification"]["class"]["kind"], "CHOREOGRAPHY_SYMMETRIC");
  EXPECT_TRUE(r["pass"].get<bool>());
}

TEST(VerifyTest, GenericIgenConservedButComponentsNot) {
  const Json r = verify_report(load_scenario(fixture("generic.json")), 1e-9);
  EXPECT_LE(drift_of(r["particular"]["integrals"], "IGEN"), 1e-10);
  EXPECT_GT(drift_of(r["particular"]["integrals"], "DOT_R"), 0.1);
  EXPECT_NEAR(r["brackets"]["fradkin_rotation_constant"].get<double>(), -2.0, 1e-8);
}

TEST(VerifyTest, GlobalIntegralsOnEveryFixture) {
  for (const char* name : {"generic.json", "rigid_pairs.json", "trisectrix.json",
                           "generic_choreography.json", "fragmentation.json"}) {
    const Json r = verify_report(load_scenario(fixture(name)), 1e-9);
    for (const char* engine : {"analytic", "numeric"}) {
      for (const IntegralName& n : global_integrals()) {
        EXPECT_LE(drift_of(r["drift"][engine]["integrals"], n.label()), 1e-9)
            << name << " " << engine << " " << n.label();
      }
    }
    EXPECT_TRUE(r["pass"].get<bool>()) << name;
  }
}

TEST(VerifyTest, ReportIsDeterministic) {
  const Scenario sc = load_scenario(fixture("generic_choreography.json"));
  EXPECT_EQ(dump_json(verify_report(sc, 1e-9)), dump_json(verify_report(sc, 1e-9)));
}

TEST(FuseTest, RoundTripThroughFragmentation) {
  const Scenario sc = load_scenario(fixture("generic.json"));
  const SystemParams& params = sc.params;
  const PhaseState fused = apply_fusion(sc.state, fusion_boosts(sc.state, params));
  EXPECT_EQ(classify(fused, params).kind, TrajectoryKind::kChoreography);
  const Vec2 delta{0.3, -0.2};
  const PhaseState broken = apply_pair_boost(fused, BoostEvent{0.0, 2, 3, delta});
  const FusionBoosts again = fusion_boosts(broken, params);
  EXPECT_NEAR(again.delta_13.x, -0.5 * delta.x, 1e-15);
  EXPECT_NEAR(again.delta_13.y, -0.5 * delta.y, 1e-15);
  EXPECT_NEAR(again.delta_24.x, -0.5 * delta.x, 1e-15);
  EXPECT_NEAR(again.delta_24.y, -0.5 * delta.y, 1e-15);
}

TEST(ToleranceTest, EnvironmentOverride) {
  ::unsetenv("LIMAX_DEFAULT_TOL");
  EXPECT_EQ(default_tolerance(), kClassifyTolerance);
  ::setenv("LIMAX_DEFAULT_TOL", "1e-6", 1);
  EXPECT_EQ(default_tolerance(), 1e-6);
  ::setenv("LIMAX_DEFAULT_TOL", "tiny", 1);
  EXPECT_THROW(default_tolerance(), InvalidInput);
  ::setenv("LIMAX_DEFAULT_TOL", "-1", 1);
  EXPECT_THROW(default_tolerance(), InvalidInput);
  ::unsetenv("LIMAX_DEFAULT_TOL");
}

TEST(AtomicWriteTest, ReplacesContentWithoutLeftovers) {
  const TempDir dir;
  const fs::path target = dir / "out.txt";
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  EXPECT_EQ(read_file(target), "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(write_file_atomic(dir / "missing" / "out.txt", "x"), Error);
}

// End-to-end runs of the installed executable.
class ExecutableTest : public ::testing::Test {
 protected:
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" LIMAX_EXE "\" " + args + " >\"" +
                            (dir_ / "stdout").string() + "\" 2>\"" + (dir_ / "stderr").string() +
                            "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return read_file(dir_ / "stdout"); }
  std::string err() const { return read_file(dir_ / "stderr"); }
  std::string scenario(const char* name) const { return "\"" + fixture(name).string() + "\""; }

  TempDir dir_;
};

TEST_F(ExecutableTest, ClassifyFixtures) {
  ASSERT_EQ(run("classify " + scenario("rigid_pairs.json")), kExitOk) << err();
  EXPECT_NE(out().find("\"RIGID_BOTH\""), std::string::npos);
  ASSERT_EQ(run("classify " + scenario("generic_choreography.json")), kExitOk) << err();
  EXPECT_NE(out().find("\"CHOREOGRAPHY\""), std::string::npos);
}

TEST_F(ExecutableTest, OutFileMatchesStdoutAndIsByteStable) {
  const std::string args = "simulate " + scenario("fragmentation.json") + " --dt 0.05";
  ASSERT_EQ(run(args), kExitOk) << err();
  const std::string printed = out();
  ASSERT_EQ(run(args + " --out \"" + (dir_ / "a.csv").string() + "\""), kExitOk) << err();
  ASSERT_EQ(run(args + " --out \"" + (dir_ / "b.csv").string() + "\""), kExitOk) << err();
  EXPECT_EQ(read_file(dir_ / "a.csv"), printed);
  EXPECT_EQ(read_file(dir_ / "a.csv"), read_file(dir_ / "b.csv"));
}

TEST_F(ExecutableTest, InputErrorsExitWithTwo) {
  EXPECT_EQ(run("classify \"" + (dir_ / "missing.json").string() + "\""), kExitInput);
  EXPECT_EQ(run("simulate"), kExitInput);
  EXPECT_EQ(run("simulate " + scenario("generic.json") + " --engine warp"), kExitInput);
  write_file_atomic(dir_ / "bad.json", replace(kMinimal, "\"dt\": 0.01", "\"dt\": -1"));
  EXPECT_EQ(run("simulate \"" + (dir_ / "bad.json").string() + "\""), kExitInput);
  EXPECT_NE(err().find("bad.json:10: field '/dt'"), std::string::npos) << err();
  EXPECT_EQ(run("classify " + scenario("generic.json"), "LIMAX_DEFAULT_TOL=abc"), kExitInput);
  EXPECT_EQ(run("orbit " + scenario("generic.json")), kExitInput);
}

TEST_F(ExecutableTest, NotInCmFrameExitsWithTwo) {
  write_file_atomic(dir_ / "drift.json",
                    replace(kMinimal, "\"p\": [0.5, -1]", "\"p\": [0.5, -0.9]"));
  EXPECT_EQ(run("verify \"" + (dir_ / "drift.json").string() + "\""), kExitInput);
  EXPECT_EQ(run("simulate --engine numeric \"" + (dir_ / "drift.json").string() + "\""), kExitOk);
}

TEST_F(ExecutableTest, ToleranceOverrideAcceptsSmallDefects) {
  write_file_atomic(dir_ / "near.json",
                    replace(kMinimal, "\"p\": [0.5, -1]", "\"p\": [0.5, -1.000001]"));
  EXPECT_EQ(run("classify \"" + (dir_ / "near.json").string() + "\""), kExitInput);
  EXPECT_EQ(run("classify \"" + (dir_ / "near.json").string() + "\"", "LIMAX_DEFAULT_TOL=1e-5"),
            kExitOk)
      << err();
}

TEST_F(ExecutableTest, DivergenceExitsWithThree) {
  EXPECT_EQ(run("simulate --engine numeric " + scenario("generic.json") +
                " --dt 1000 --t-final 1000000"),
            kExitDivergence);
  EXPECT_NE(err().find("divergence"), std::string::npos);
}

TEST_F(ExecutableTest, StrictVerifyExitsWithFour) {
  EXPECT_EQ(run("verify --strict " + scenario("generic.json")), kExitOk) << err();
  EXPECT_EQ(run("verify " + scenario("generic.json") + " --dt 0.5"), kExitOk);
  EXPECT_EQ(run("verify --strict " + scenario("generic.json") + " --dt 0.5"),
            kExitVerification);
}

TEST_F(ExecutableTest, FragmentAndFuse) {
  const std::string csv = (dir_ / "frag.csv").string();
  ASSERT_EQ(run("fragment " + scenario("trisectrix.json") +
                " --delta -0.75 0.75 --beta 1 --csv \"" + csv + "\""),
            kExitOk)
      << err();
  EXPECT_NE(out().find("\"GENERIC\""), std::string::npos);
  const Trajectory joined = parse_trajectory_csv(read_file(csv));
  EXPECT_DOUBLE_EQ(joined.samples.back().t, 2.0 * 2.0 * M_PI);
  EXPECT_EQ(run("fragment " + scenario("trisectrix.json")), kExitInput);

  const std::string fused = (dir_ / "fused.json").string();
  ASSERT_EQ(run("fuse " + scenario("generic.json") + " --out \"" + fused + "\""), kExitOk)
      << err();
  EXPECT_NE(out().find("delta_13"), std::string::npos);
  const Scenario sc = load_scenario(fused);
  EXPECT_TRUE(check_choreography_conditions(sc.state, sc.params).holds);
  ASSERT_EQ(run("fuse \"" + fused + "\""), kExitOk);
  EXPECT_NE(out().find("\"delta_13\": [\n    0.0,\n    0.0\n  ]"), std::string::npos) << out();
}

TEST_F(ExecutableTest, OrbitSamples) {
  ASSERT_EQ(run("orbit --coeffs 1 1 1 1 0 0 0 0 --samples 4"), kExitOk) << err();
  const std::string csv = out();
  EXPECT_EQ(csv.substr(0, 7), "t,x,y\n0");
  EXPECT_TRUE(err().empty());
  ASSERT_EQ(run("orbit " + scenario("generic_choreography.json") + " --samples 3"), kExitOk) << err();
  EXPECT_EQ(out().substr(0, 15), "t,x,y\n0,0.5,-2\n");
  ASSERT_EQ(run("orbit --coeffs 1 0 0 0 0 0 0 0"), kExitOk);
  EXPECT_NE(err().find("collide"), std::string::npos);
}

}  // namespace
}  // namespace limax::cli
