#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support.hpp"
#include "zzsim/csv.hpp"
#include "zzsim/device_io.hpp"
#include "zzsim/recipes.hpp"

namespace zzsim {
namespace {

namespace fs = std::filesystem;
using units::to_ghz;
using units::to_mhz;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json bundled(const std::string& name) {
  return nlohmann::json::parse(slurp(resolve_device_path(name)));
}

std::string error_of(const std::string& text) {
  try {
    parse_device(text);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

struct CliRun {
  int status;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(ZZSIM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("zzsim_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

TEST(LoadDevice, DeviceATable) {
  const DeviceParams& p = testing::device_a();
  EXPECT_NEAR(to_ghz(p.omega_1), 4.973, 1e-12);
  EXPECT_NEAR(to_mhz(p.g_1plus), 135.0, 1e-9);
  EXPECT_NEAR(to_mhz(p.alpha_minus), 750.0, 1e-9);
  EXPECT_EQ(p.name, "device_a");
}

TEST(LoadDevice, DeviceBTable) {
  const DeviceParams& p = testing::device_b();
  EXPECT_NEAR(to_ghz(p.omega_minus_max), 7.19, 1e-12);
  EXPECT_NEAR(to_mhz(p.alpha_minus), 290.0, 1e-9);
}

TEST(LoadDevice, HashIsStableAndContentBased) {
  const DeviceFile a = load_device("device_a"), again = load_device("device_a");
  EXPECT_EQ(a.hash, again.hash);
  EXPECT_EQ(a.hash.size(), 16u);
  EXPECT_NE(a.hash, load_device("device_b").hash);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(LoadDevice, DeviceDirectoryEnvironment) {
  const fs::path dir = scratch_dir("devices");
  nlohmann::json j = bundled("device_b");
  j["name"] = "custom";
  std::ofstream(dir / "custom.json") << j.dump(2);
  setenv("ZZSIM_DEVICE_DIR", dir.c_str(), 1);
  const DeviceFile f = load_device("custom");
  unsetenv("ZZSIM_DEVICE_DIR");
  EXPECT_EQ(f.params.name, "custom");
  EXPECT_THROW(load_device("no_such_device"), DomainError);
}

TEST(ParseDevice, UnknownKeyIsError) {
  nlohmann::json j = bundled("device_a");
  j["omega_1_gzh"] = 4.9;
  EXPECT_EQ(error_of(j.dump()), "unknown device field 'omega_1_gzh'");
}

TEST(ParseDevice, MissingKeyIsError) {
  nlohmann::json j = bundled("device_a");
  j.erase("g_2minus_ghz");
  EXPECT_EQ(error_of(j.dump()), "device file is missing 'g_2minus_ghz'");
}

TEST(ParseDevice, T2AboveTwiceT1NamesQubit) {
  nlohmann::json j = bundled("device_a");
  j["t2e_2_us"] = 2.5 * j["t1_2_us"].get<double>();
  const std::string msg = error_of(j.dump());
  EXPECT_NE(msg.find("qubit 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("t2_2"), std::string::npos) << msg;
}

TEST(ParseDevice, BadValuesNameTheField) {
  nlohmann::json j = bundled("device_a");
  j["alpha_1_ghz"] = "large";
  EXPECT_NE(error_of(j.dump()).find("alpha_1_ghz"), std::string::npos);
  j = bundled("device_a");
  j["omega_plus_ghz"] = -7.0;
  EXPECT_NE(error_of(j.dump()).find("omega_plus"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("not valid JSON"), std::string::npos);
}

TEST(Csv, MetadataBlockThenRows) {
  CsvMetadata meta;
  meta.command_line = "zzsim ptm";
  meta.device_hash = "0123456789abcdef";
  meta.seed = 7;
  meta.extra = {{"mode", "simultaneous"}};
  CsvWriter w(meta, {"a", "b"});
  w.row({1.5, std::nan("")});
  w.row(std::vector<std::string>{"x", "y"});
  const std::string s = w.str();
  const std::string expected_tail =
      "# device_hash: 0123456789abcdef\n# seed: 7\n# command: zzsim ptm\n# mode: simultaneous\n"
      "a,b\n1.5,nan\nx,y\n";
  EXPECT_EQ(s.rfind("# tool: zzsim ", 0), 0u);
  EXPECT_EQ(s.substr(s.size() - expected_tail.size()), expected_tail);
  EXPECT_THROW(w.row(std::vector<double>{1.0}), DomainError);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-1.25e-7), "-1.25e-07");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Recipe, ReportPassesOnlyWhenEveryCheckPasses) {
  RecipeReport r;
  EXPECT_TRUE(r.all_pass());
  r.checks.push_back({"a", 1.0, 1.0, 0.1, "GHz", true, ""});
  EXPECT_TRUE(r.all_pass());
  r.checks.push_back({"b", 2.0, 1.0, 0.1, "GHz", false, ""});
  EXPECT_FALSE(r.all_pass());
  EXPECT_NE(r.summary().find("FAIL b"), std::string::npos);
  EXPECT_EQ(parse_figure("figS3"), Figure::FigS3);
  EXPECT_THROW(parse_figure("fig9"), DomainError);
}

TEST(Cli, PtmOutputIsByteIdenticalAcrossRuns) {
  const fs::path dir = scratch_dir("ptm");
  const std::string args = "ptm --channel decohered --device device_b --csv " + (dir / "r.csv").string();
  ASSERT_EQ(run_cli(args).status, 0);
  const std::string first = slurp(dir / "r.csv");
  ASSERT_EQ(run_cli(args).status, 0);
  EXPECT_EQ(slurp(dir / "r.csv"), first);
  EXPECT_NE(first.find("# device_hash: " + load_device("device_b").hash), std::string::npos);
  EXPECT_NE(first.find("row,II,IX"), std::string::npos);
}

TEST(Cli, RbEchoesSeedAndRepeatsExactly) {
  const fs::path dir = scratch_dir("rb");
  const std::string args = "--seed 42 --out " + dir.string() +
                           " rb --zeta-mhz 2.26 --trials 5 --lengths 2,8,32,128";
  ASSERT_EQ(run_cli(args).status, 0);
  const std::string first = slurp(dir / "rb.csv");
  ASSERT_EQ(run_cli(args + " --threads 2").status, 0);
  const std::string second = slurp(dir / "rb.csv");
  EXPECT_NE(first.find("# seed: 42"), std::string::npos);
  EXPECT_NE(first.find("m,mean_p0_q1,mean_p0_q2,sem"), std::string::npos);
  // Only the echoed command line differs.
  EXPECT_EQ(first.substr(first.find("\nm,")), second.substr(second.find("\nm,")));
}

TEST(Cli, BadDeviceFileFailsWithMessage) {
  const fs::path dir = scratch_dir("bad");
  nlohmann::json j = bundled("device_a");
  j["colour"] = "blue";
  std::ofstream(dir / "bad.json") << j.dump();
  const CliRun r = run_cli("find-zero-zeta --device " + (dir / "bad.json").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("unknown device field 'colour'"), std::string::npos) << r.out;
}

TEST(Cli, SpectrumLabelsLevels) {
  const CliRun r = run_cli("spectrum --omega-minus-ghz 4.5 --levels 3");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("0,0,|0000>,1,0"), std::string::npos) << r.out;
}

TEST(Cli, Fig2RecipeExitCodeReflectsAnchors) {
  const fs::path dir = scratch_dir("fig2");
  const CliRun r = run_cli("--out " + dir.string() + " recipe fig2 --points 120");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "fig2_device_a.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig2_device_b.csv"));
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace zzsim
