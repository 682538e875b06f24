#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "capbound/cli.hpp"
#include "test_util.hpp"

using namespace capbound;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "capbound");
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "capbound_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, BuiltinErasureHasThreeOutputs) {
  const Result r = cli({"builtin", "erasure", "2", "0.25"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["dim_out"], 3);
  EXPECT_EQ(channel_from_json(j).dim_in(), 2);
}

TEST(Cli, BuiltinRejectsBadParameters) {
  EXPECT_EQ(cli({"builtin", "erasure", "2", "1.5"}).code, kExitValidation);
  EXPECT_EQ(cli({"builtin", "no_such_channel"}).code, kExitValidation);
}

TEST(Cli, NonTracePreservingChannelExitsTwo) {
  Json j = channel_to_json(channels::identity(2));
  j["kraus"][0][0][0][0] = 1.1;
  const Result r = cli({"bounds", write("non_tp.json", j.dump())});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, kExitValidation);
  EXPECT_EQ(cli({"bounds", scratch("missing.json").string()}).code, kExitValidation);
  EXPECT_EQ(cli({"--format", "yaml", "builtin", "identity", "2"}).code, kExitValidation);
  EXPECT_EQ(cli({"bounds", write("garbage.json", "{not json")}).code, kExitValidation);
}

TEST(Cli, BoundsJsonIsByteIdenticalAcrossRuns) {
  const std::string path = write("ad.json", channel_to_json(channels::amplitude_damping(0.3)).dump());
  const Result a = cli({"--restarts", "4", "bounds", path});
  const Result b = cli({"--restarts", "4", "bounds", path});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "bounds");
  for (const auto& rep : j["quantum_private"])
    for (const auto& t : rep["terms"]) {
      EXPECT_TRUE(t.contains("provenance"));
      EXPECT_TRUE(t.contains("tolerance"));
      EXPECT_TRUE(t.contains("anchor"));
    }
}

TEST(Cli, TextFormatPrintsTables) {
  const std::string path = write("deph.json", channel_to_json(channels::dephasing(0.1)).dump());
  const Result r = cli({"--format", "text", "--restarts", "3", "degradability", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("elapsed"), std::string::npos);
  EXPECT_NE(r.out.find("f1"), std::string::npos);
}

TEST(Cli, DegradabilityJson) {
  const std::string path = write("ad2.json", channel_to_json(channels::amplitude_damping(0.2)).dump());
  const Result r = cli({"--restarts", "3", "degradability", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LE(j["eps_degradable"]["value"].get<double>(), 1e-6);
  EXPECT_EQ(j["improved"].size(), 4u);
  EXPECT_EQ(j["sutter"].size(), 3u);
}

TEST(Cli, StateBoundsOnBuiltinState) {
  const Result s = cli({"builtin", "pure_state", "0.8"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  const Result r = cli({"--restarts", "4", "state-bounds", write("pure.json", s.out)});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["reports"].size(), 4u);
  EXPECT_TRUE(j["epsilons"].contains("more_secret"));
}

TEST(Cli, SearchWritesAndResumesRecords) {
  const fs::path out = scratch("records.jsonl");
  fs::remove(out);
  const std::vector<std::string> base{"search-bippt", "--din", "2", "--dout", "2", "--denv", "2", "--seeds", "2",
                                      "--iterations", "10", "--ppt-eps", "1", "--coh-min", "-2", "--barrier", "0"};
  std::vector<std::string> first = base;
  first.insert(first.end(), {"--output", out.string()});
  const Result a = cli(first);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  std::ifstream in(out);
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    EXPECT_NO_THROW(record_from_json(Json::parse(line)));
    ++lines;
  }
  EXPECT_EQ(lines, 2);
  std::vector<std::string> again = base;
  again.insert(again.end(), {"--resume", out.string()});
  const Result b = cli(again);
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(Json::parse(a.out)["records"], Json::parse(b.out)["records"]);
  std::ifstream in2(out);
  int lines2 = 0;
  for (std::string line; std::getline(in2, line);) ++lines2;
  EXPECT_EQ(lines2, 2);
}

TEST(Cli, SearchRejectsBadConfig) {
  EXPECT_EQ(cli({"search-bippt", "--din", "3", "--dout", "1", "--denv", "1"}).code, kExitValidation);
}
