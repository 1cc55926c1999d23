#include "ltmor/config.hpp"
#include "ltmor/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace ltmor;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[mesh]
n = 12
[source]
x0 = 0.25, -0.15
zeta = 0.05
[wavelet]
alpha = 2*pi   # inline comment
t0 = 2.5
[sampling]
M = 10
[rom]
R = 2:10:2
[time]
T = 5
steps = 100
)";

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() /
                       (std::string("ltmor_") + info->test_suite_name() + "_" + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST(Config, ParsesMinimalFileWithDefaults) {
  const auto cfg = parse_experiment_config(RawConfig::parse(kMinimal));
  EXPECT_EQ(cfg.mesh_n, 12);
  EXPECT_DOUBLE_EQ(cfg.wavelet.alpha, 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(cfg.resolved_mu(), std::numbers::pi / 4.0);
  EXPECT_DOUBLE_EQ(cfg.resolved_eta(), std::numbers::pi / 8.0);
  EXPECT_EQ(cfg.R_values, (std::vector<int>{2, 4, 6, 8, 10}));
  EXPECT_EQ(cfg.max_R(), 10);
  EXPECT_EQ(cfg.study_M, std::vector<int>{10});
  EXPECT_EQ(cfg.gram, GramChoice::stiffness);
  EXPECT_EQ(cfg.svd, SvdMethod::direct);
  EXPECT_DOUBLE_EQ(cfg.beta, 0.25);
  EXPECT_DOUBLE_EQ(cfg.gamma, 0.5);
  EXPECT_EQ(cfg.workers, 1);
  EXPECT_NE(describe(cfg).find("sampling.M=10"), std::string::npos);
}

TEST(Config, MissingRequiredKeyIsNamed) {
  std::string text = kMinimal;
  text.replace(text.find("zeta = 0.05"), 11, "");
  try {
    parse_experiment_config(RawConfig::parse(text));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "source.zeta");
  }
}

TEST(Config, RejectsUnknownAndInvalidKeys) {
  auto raw = RawConfig::parse(kMinimal);
  raw.set("mesh.typo", "3");
  EXPECT_THROW(parse_experiment_config(raw), ConfigError);

  auto bad = RawConfig::parse(kMinimal);
  bad.set("rom.R", "5, 30");  // 30 > 2M+1 = 21
  try {
    parse_experiment_config(bad);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "rom.R");
  }

  auto eta = RawConfig::parse(kMinimal);
  eta.set("sampling.mu", "0.5");
  eta.set("sampling.eta", "0.5");
  EXPECT_THROW(parse_experiment_config(eta), ConfigError);

  auto gram = RawConfig::parse(kMinimal);
  gram.set("rom.gram", "L2");
  EXPECT_THROW(parse_experiment_config(gram), ConfigError);
}

TEST(Config, EnvironmentOverrides) {
  auto raw = RawConfig::parse(kMinimal);
  ::setenv("LTMOR_MESH_N", "20", 1);
  ::setenv("LTMOR_RUN_WORKERS", "3", 1);
  raw.apply_env_overrides(known_config_keys());
  ::unsetenv("LTMOR_MESH_N");
  ::unsetenv("LTMOR_RUN_WORKERS");
  const auto cfg = parse_experiment_config(raw);
  EXPECT_EQ(cfg.mesh_n, 20);
  EXPECT_EQ(cfg.workers, 3);
}

TEST(Config, BlockCoefficient) {
  auto raw = RawConfig::parse(kMinimal);
  raw.set("coefficient.type", "blocks");
  raw.set("coefficient.blocks", "-0.5 0 -0.5 0.5 2 0 2 | 0 0.5 -0.5 0.5 1 0.25 3");
  const auto cfg = parse_experiment_config(raw);
  ASSERT_EQ(cfg.coefficient_blocks.size(), 2u);
  const auto A = cfg.coefficient();
  EXPECT_DOUBLE_EQ(A(Point2(-0.25, 0.0))(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(A(Point2(0.25, 0.0))(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(A(Point2(0.25, 0.0))(1, 1), 3.0);
}

TEST(Config, NumberAndListParsing) {
  const double pi = std::numbers::pi;
  EXPECT_DOUBLE_EQ(parse_real("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_real("2*pi"), 2.0 * pi);
  EXPECT_DOUBLE_EQ(parse_real("5pi/2"), 2.5 * pi);
  EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
  EXPECT_THROW(parse_real("abc"), std::invalid_argument);
  EXPECT_EQ(parse_int_list("75:175:25"), (std::vector<int>{75, 100, 125, 150, 175}));
  EXPECT_EQ(parse_int_list("1, 3,5"), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(parse_int_list("4:6"), (std::vector<int>{4, 5, 6}));
  EXPECT_THROW(parse_int_list("1:5:0"), std::invalid_argument);
  EXPECT_EQ(parse_real_list("2.5, 5"), (std::vector<double>{2.5, 5.0}));
}

TEST(Io, BinaryAndCsvRoundTrip) {
  const fs::path dir = scratch_dir();
  MatrixXd A(3, 2);
  A << 1.0 / 3.0, -2.5e-300, 7.0, 0.1, -0.0, 1e10;
  io::write_matrix(dir / "a.bin", A);
  EXPECT_EQ(io::read_matrix(dir / "a.bin"), A);
  io::write_matrix(dir / "a.csv", A, io::MatrixFormat::csv);
  EXPECT_EQ(io::read_matrix(dir / "a.csv"), A);

  MatrixXc C(2, 2);
  C << Complex(1, 2), Complex(-3, 0.5), Complex(0, 0), Complex(1e-5, -1e5);
  io::write_matrix(dir / "c.bin", C);
  EXPECT_EQ(io::read_complex_matrix(dir / "c.bin"), C);
  EXPECT_THROW(io::read_matrix(dir / "c.bin"), std::runtime_error);
  EXPECT_THROW(io::read_complex_matrix(dir / "a.bin"), std::runtime_error);
}

TEST(Io, CsvHeaders) {
  const fs::path dir = scratch_dir();
  io::write_singular_values(dir / "sv.csv", VectorXd::LinSpaced(3, 3.0, 1.0));
  EXPECT_EQ(slurp(dir / "sv.csv"), "index,value\n1,3\n2,2\n3,1\n");

  ErrorReport report;
  report.rows.push_back({4, 40, 0.5, 0.25});
  io::write_rel_error(dir / "err.csv", report);
  EXPECT_EQ(slurp(dir / "err.csv"), "R,M,L2,H1\n4,40,0.5,0.25\n");

  io::write_timings(dir / "t.csv", TimingReport{});
  EXPECT_EQ(first_line(dir / "t.csv"), "phase,seconds");
  EXPECT_NE(slurp(dir / "t.csv").find("speed_up,0"), std::string::npos);
}

TEST(Io, FieldFile) {
  const fs::path dir = scratch_dir();
  const Mesh mesh = build_unit_square_mesh(2);
  io::write_field(dir / "f.txt", mesh, VectorXd::LinSpaced(9, 0.0, 8.0), 2.5);
  std::ifstream in(dir / "f.txt");
  std::string tag;
  int n = 0;
  in >> tag >> n;
  EXPECT_EQ(tag, "vertices");
  EXPECT_EQ(n, 9);
  const std::string text = slurp(dir / "f.txt");
  EXPECT_NE(text.find("triangles 8\n"), std::string::npos);
  EXPECT_NE(text.find("values 9 2.5\n"), std::string::npos);
  EXPECT_THROW(io::write_field(dir / "g.txt", mesh, VectorXd::Zero(3), 0.0), std::invalid_argument);
}

TEST(Io, ShortestRoundTripFormatting) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(2.0), "2");
  const double x = 1.0 / 7.0;
  EXPECT_EQ(std::stod(io::format_double(x)), x);
}
