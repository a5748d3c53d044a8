#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nulllag/model_io.hpp"

using namespace nulllag;

namespace {

const std::filesystem::path kData = NULLLAG_TEST_DATA;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return (kData / name).string(); }

}  // namespace

TEST(CliCheck, ExitCodes) {
  EXPECT_EQ(run({"check", data("micropolar_zero.json")}).code, 0);
  const auto iso = run({"check", data("micropolar_isotropic_lmk1.json")});
  EXPECT_EQ(iso.code, 1);
  const Json j = Json::parse(iso.out);
  bool a_zero_failed = false;
  for (const auto& c : j["conditions"])
    if (c["name"] == "A_zero") a_zero_failed = !c["passed"].get<bool>();
  EXPECT_TRUE(a_zero_failed);
  const auto bad = run({"check", data("micropolar_short.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("length"), std::string::npos);
  EXPECT_EQ(run({"check", data("absent.json")}).code, 2);
  EXPECT_EQ(run({"check", data("generators_minor.json")}).code, 2);
}

TEST(CliCheck, TextAndJsonVerdictsAgree) {
  for (const char* f : {"micropolar_zero.json", "micropolar_isotropic_lmk1.json", "em_acpl_identity.json",
                        "quasicrystal_admissible.json"}) {
    const auto a = run({"check", data(f)});
    const auto b = run({"check", data(f), "--format", "text"});
    EXPECT_EQ(a.code, b.code) << f;
    EXPECT_EQ(Json::parse(a.out)["passed"].get<bool>(), b.out.find("verdict PASS") != std::string::npos) << f;
  }
}

TEST(CliCheck, TolAbsOverride) {
  const auto r = run({"check", data("micropolar_isotropic_lmk1.json"), "--tol-abs", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["conditions"][0]["tolerance"].get<double>(), 10.0);
}

TEST(CliSplit, IsotropicExample) {
  const auto r = run({"split", data("micropolar_isotropic_b102.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["zero_entries"], 45);
  EXPECT_EQ(j["independent_entries"], 18);
  EXPECT_EQ(j["tilde_dimension"], 9);
  EXPECT_EQ(j["b_ring_max_abs"].get<double>(), 0.0);
  ASSERT_EQ(j["cauchy_analogue"]["table"].size(), 18u);
  bool found = false;
  for (const auto& e : j["cauchy_analogue"]["table"]) {
    if (e["index"] == Json::array({1, 1, 2, 2})) {
      EXPECT_EQ(e["value"].get<double>(), -0.5);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(CliSplit, EqualBetasGiveZeroTable) {
  const auto r = run({"split", data("micropolar_isotropic_b_equal.json")});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  for (const auto& e : j["cauchy_analogue"]["table"]) EXPECT_EQ(e["value"].get<double>(), 0.0);
  EXPECT_TRUE(j["cauchy_analogue"]["passed"].get<bool>());
  for (double v : j["b_ring"].get<std::vector<double>>()) EXPECT_EQ(v, 0.0);
}

TEST(CliSplit, RejectsNonMicropolar) { EXPECT_EQ(run({"split", data("em_acpl_identity.json")}).code, 2); }

TEST(CliSplit, EmittedTensorsReloadBitExact) {
  const auto r = run({"split", data("micropolar_isotropic_b102.json")});
  const Json j = Json::parse(r.out);
  for (const char* key : {"b_hat", "b_tilde", "b_ring"}) {
    const Tensor4 t = tensor_from_json_array<4>(j[key], key);
    EXPECT_EQ(to_json_array(t).dump(), j[key].dump());
    const Tensor4 again = tensor_from_json_array<4>(Json::parse(to_json_array(t).dump()), key);
    EXPECT_EQ(again, t);
  }
}

TEST(CliCertify, Examples) {
  EXPECT_EQ(run({"certify", data("generators_minor.json")}).code, 0);
  EXPECT_EQ(run({"certify", data("em_acpl_identity.json")}).code, 1);
  EXPECT_EQ(run({"certify", data("micropolar_tilde_b102.json")}).code, 0);
  EXPECT_EQ(run({"certify", data("micropolar_short.json")}).code, 2);
  EXPECT_EQ(run({"certify", data("micropolar_zero.json"), "--trials", "0"}).code, 2);
}

TEST(CliCertify, DeterministicPerSeed) {
  const auto a = run({"certify", data("quasicrystal_admissible.json"), "--seed", "5", "--trials", "16"});
  ::setenv("NULLLAG_THREADS", "1", 1);
  const auto b = run({"certify", data("quasicrystal_admissible.json"), "--seed", "5", "--trials", "16"});
  ::unsetenv("NULLLAG_THREADS");
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"certify", data("quasicrystal_admissible.json"), "--seed", "6", "--trials", "16"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliCertify, ConfigFile) {
  const auto r = run({"certify", data("micropolar_zero.json"), "--config", data("config_certify.json"), "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["trials"], 8);
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["seed"], 9);
  const auto bad = run({"certify", data("micropolar_zero.json"), "--config", data("config_unknown_key.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("unknown key 'tolerance'"), std::string::npos);
  EXPECT_EQ(run({"check", data("micropolar_zero.json"), "--config", data("config_certify.json")}).code, 2);
}

TEST(CliCertify, CurlFreeOptionAndPath) {
  const auto r = run({"certify", data("micropolar_tilde_b102.json"), "--curl-free", "4", "--path", "fd", "--trials", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["sampler"], "curl_free");
  EXPECT_EQ(j["path"], "finite_difference");
  EXPECT_EQ(run({"certify", data("micropolar_zero.json"), "--curl-free", "5"}).code, 2);
}

TEST(CliAction, ReportsExactAction) {
  const auto r = run({"action", data("micropolar_isotropic_lmk1.json"), "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["exact"].get<bool>());
  const auto again = run({"action", data("micropolar_isotropic_lmk1.json"), "--seed", "3"});
  EXPECT_EQ(r.out, again.out);
}

TEST(CliUsage, ParseErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"check", data("micropolar_zero.json"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
