#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli_commands.hpp"

using namespace codim1::cli;

namespace {

const std::string kProblems = CODIM1_PROBLEMS_DIR;

std::string problem(const std::string& name) { return kProblems + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("codim1_test_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kExampleSupports = R"("n": 3, "k": 2,
  "supports": [[[0,0,0],[1,1,1]], [[0,0,0],[1,0,0],[2,1,1],[3,2,2]]])";

std::string example_with(const std::string& extra) { return "{" + std::string(kExampleSupports) + extra + "}"; }

std::complex<double> complex_of(const Json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

}  // namespace

TEST(CliClassify, Example) {
  const auto r = cmd_classify(problem("example.json"));
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  const auto& c = r.report["classification"];
  EXPECT_EQ(c["verdict"], "NONEMPTY_C1");
  EXPECT_EQ(c["reason"], "OK");
  EXPECT_EQ(c["u"], Json::parse("[1,1,1]"));
  EXPECT_EQ(c["v"], Json::parse("[1,0,0]"));
  EXPECT_EQ(c["predicted_count"], 2);
  EXPECT_EQ(r.report["command"], "classify");
}

TEST(CliClassify, ThreeMapsAreEmpty) {
  const auto r = cmd_classify(problem("three_maps.json"));
  ASSERT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.report["classification"]["verdict"], "EMPTY_C1");
  EXPECT_EQ(r.report["classification"]["reason"], "K_AT_LEAST_3");
}

TEST(CliClassify, MalformedExponentNamesEntry) {
  const auto r = cmd_classify(problem("malformed.json"));
  EXPECT_EQ(r.exit_code, kInputError);
  EXPECT_TRUE(r.report.is_null());
  EXPECT_NE(r.error.find("supports[1][2]"), std::string::npos) << r.error;
}

TEST(CliClassify, ValidationErrors) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"not json", "{"},
      {"negative", R"({"n":2,"k":2,"supports":[[[0,0],[1,-1]],[[0,0],[1,0]]]})"},
      {"k mismatch", R"({"n":2,"k":3,"supports":[[[0,0],[1,1]],[[0,0],[1,0]]]})"},
      {"duplicate", R"({"n":2,"k":2,"supports":[[[0,0],[1,1],[1,1]],[[0,0],[1,0]]]})"},
      {"fractional", R"({"n":2,"k":2,"supports":[[[0,0],[1,0.5]],[[0,0],[1,0]]]})"},
      {"no origin", R"({"n":2,"k":2,"supports":[[[1,1],[2,2]],[[0,0],[1,0]]]})"},
      {"coefficient count", example_with(R"(, "coefficients": [[[1,0]], [[1,0],[1,0],[1,0],[1,0]]])")},
      {"coefficient shape", example_with(R"(, "coefficients": [[[1,0],[1]], [[1,0],[1,0],[1,0],[1,0]]])")},
      {"missing n", R"({"k":2,"supports":[]})"},
  };
  for (const auto& [name, text] : cases) {
    const auto r = cmd_classify(write_temp("invalid.json", text));
    EXPECT_EQ(r.exit_code, kInputError) << name;
    EXPECT_FALSE(r.error.empty()) << name;
  }
  EXPECT_EQ(cmd_classify(problem("does_not_exist.json")).exit_code, kInputError);
}

TEST(CliSolve, ExampleCoefficients) {
  const auto r = cmd_solve(problem("example.json"), {});
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  const auto& c1 = r.report["c1"];
  EXPECT_EQ(c1["coefficients_source"], "file");
  ASSERT_EQ(c1["points"].size(), 2u);
  EXPECT_EQ(c1["count"], 2);
  EXPECT_TRUE(c1["match"].get<bool>());
  // pv2 = -1 + t^2: t0 = -1, 1 in sorted order, kappa = (t0, 0).
  const double expected[] = {-1.0, 1.0};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = c1["points"][i];
    EXPECT_LE(std::abs(complex_of(p["kappa"][0]) - expected[i]), 1e-8);
    EXPECT_LE(std::abs(complex_of(p["kappa"][1])), 1e-8);
    EXPECT_TRUE(p["verified"].get<bool>());
  }
  EXPECT_TRUE(r.report["diagnostics"].empty());
}

TEST(CliSolve, GenericCoefficients) {
  SolveFlags flags;
  flags.seed = 42;
  const auto r = cmd_solve(problem("example_supports.json"), flags);
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  EXPECT_EQ(r.report["c1"]["coefficients_source"], "generic");
  EXPECT_EQ(r.report["c1"]["count"], 2);
  EXPECT_TRUE(r.report["c1"]["match"].get<bool>());
  EXPECT_TRUE(r.report["c1"]["all_verified"].get<bool>());
}

TEST(CliSolve, GenericMatchAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SolveFlags flags;
    flags.seed = seed;
    const auto r = cmd_solve(problem("example_supports.json"), flags);
    ASSERT_EQ(r.exit_code, kOk) << r.error;
    EXPECT_TRUE(r.report["c1"]["match"].get<bool>()) << "seed " << seed;
  }
}

TEST(CliSolve, DegenerateLeadingCoefficient) {
  const auto r = cmd_solve(problem("degenerate.json"), {});
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  EXPECT_EQ(r.report["c1"]["count"], 1);
  EXPECT_EQ(r.report["c1"]["predicted_count"], 2);
  EXPECT_FALSE(r.report["c1"]["match"].get<bool>());
  ASSERT_FALSE(r.report["diagnostics"].empty());
  EXPECT_NE(r.report["diagnostics"][0].get<std::string>().find("warning"), std::string::npos);
}

TEST(CliSolve, SkippedWhenEmpty) {
  const auto r = cmd_solve(problem("three_maps.json"), {});
  ASSERT_EQ(r.exit_code, kOk);
  EXPECT_TRUE(r.report["c1"].is_null());
  ASSERT_EQ(r.report["diagnostics"].size(), 1u);
  EXPECT_NE(r.report["diagnostics"][0].get<std::string>().find("K_AT_LEAST_3"), std::string::npos);
}

TEST(CliVerify, Examples) {
  VerifyFlags flags;
  flags.kappa = {1.0, 0.0};
  flags.t0 = 1.0;
  auto r = cmd_verify(problem("example.json"), flags);
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  EXPECT_TRUE(r.report["verify"]["pass"].get<bool>());
  EXPECT_LT(r.report["verify"]["max_residual"].get<double>(), 1e-6);

  flags.kappa = {1.0, 0.5};
  r = cmd_verify(problem("example.json"), flags);
  EXPECT_EQ(r.exit_code, kPropertyViolation);
  EXPECT_FALSE(r.report["verify"]["pass"].get<bool>());
  EXPECT_NEAR(r.report["verify"]["max_residual"].get<double>(), 0.5, 1e-9);
}

TEST(CliVerify, Errors) {
  VerifyFlags flags;
  flags.kappa = {1.0, 0.0};
  EXPECT_EQ(cmd_verify(problem("example_supports.json"), flags).exit_code, kInputError);

  flags.kappa = {1.0};
  EXPECT_EQ(cmd_verify(problem("example.json"), flags).exit_code, kInputError);

  const std::string k3 = write_temp("k3.json", R"({"n":3,"k":3,
    "supports":[[[0,0,0],[1,0,0]],[[0,0,0],[0,1,0]],[[0,0,0],[0,0,1]]],
    "coefficients":[[[1,0],[1,0]],[[1,0],[1,0]],[[1,0],[1,0]]]})");
  flags.kappa = {1.0, 1.0, 1.0};
  const auto r = cmd_verify(k3, flags);
  EXPECT_EQ(r.exit_code, kStructuralMismatch);
  EXPECT_FALSE(r.error.empty());
}

TEST(CliLemmaFuzz, Examples) {
  LemmaFuzzFlags flags;
  flags.trials = 1000;
  flags.dim = 2;
  flags.max_coord = 5;
  flags.seed = 7;
  auto r = cmd_lemma_fuzz(flags);
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  EXPECT_EQ(r.report["lemma"]["inequality_passes"], 1000);
  EXPECT_EQ(r.report["lemma"]["iff_passes"], r.report["lemma"]["iff_checks"]);

  LemmaFuzzFlags seg;
  seg.trials = 1;
  seg.dim = 1;
  seg.segments = true;
  r = cmd_lemma_fuzz(seg);
  ASSERT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.report["lemma"]["equality_cases"], 1);
  EXPECT_EQ(r.report["lemma"]["collinear_cases"], 1);

  LemmaFuzzFlags dup;
  dup.input = problem("lemma_duplicate.json");
  r = cmd_lemma_fuzz(dup);
  EXPECT_EQ(r.exit_code, kInputError);
  EXPECT_NE(r.error.find("duplicate"), std::string::npos) << r.error;
}

TEST(CliLemmaFuzz, FlagBounds) {
  const auto bad = [](auto mutate) {
    LemmaFuzzFlags f;
    mutate(f);
    return cmd_lemma_fuzz(f).exit_code;
  };
  EXPECT_EQ(bad([](LemmaFuzzFlags& f) { f.trials = 0; }), kInputError);
  EXPECT_EQ(bad([](LemmaFuzzFlags& f) { f.dim = 0; }), kInputError);
  EXPECT_EQ(bad([](LemmaFuzzFlags& f) { f.dim = 5; }), kInputError);
  EXPECT_EQ(bad([](LemmaFuzzFlags& f) { f.max_coord = 11; }), kInputError);
  EXPECT_EQ(bad([](LemmaFuzzFlags& f) { f.trials = 2, f.dim = 4, f.max_coord = 10; }), kOk);
}

TEST(CliLemmaFuzz, ExplicitPairs) {
  const std::string path = write_temp("pairs.json", R"({"pairs":[
    {"A":[[0,0],[2,2]], "B":[[1,1],[3,3]]},
    {"A":[[0,0],[1,0]], "B":[[0,0],[0,1]]}]})");
  LemmaFuzzFlags flags;
  flags.input = path;
  const auto r = cmd_lemma_fuzz(flags);
  ASSERT_EQ(r.exit_code, kOk) << r.error;
  EXPECT_EQ(r.report["lemma"]["trials"], 2);
  EXPECT_EQ(r.report["lemma"]["equality_cases"], 1);
  EXPECT_EQ(r.report["lemma"]["collinear_cases"], 1);
}

TEST(CliReport, Deterministic) {
  SolveFlags flags;
  flags.seed = 42;
  EXPECT_EQ(render_report(cmd_solve(problem("example_supports.json"), flags).report),
            render_report(cmd_solve(problem("example_supports.json"), flags).report));

  LemmaFuzzFlags fuzz;
  fuzz.trials = 100;
  fuzz.dim = 2;
  fuzz.seed = 11;
  EXPECT_EQ(render_report(cmd_lemma_fuzz(fuzz).report), render_report(cmd_lemma_fuzz(fuzz).report));
}

TEST(CliReport, FloatFormatting) {
  Json j;
  j["a"] = -0.0;
  j["b"] = 0.1;
  j["c"] = Json::array({1.5, -2.0});
  j["d"] = 3;
  EXPECT_EQ(render_report(j), "{\n  \"a\": 0,\n  \"b\": 0.10000000000000001,\n  \"c\": [1.5, -2],\n  \"d\": 3\n}\n");
}

TEST(CliHelpers, Sha256AndComplexList) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto z = parse_complex_list("1,0,-0.5,2e-1");
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[1], std::complex<double>(-0.5, 0.2));
  EXPECT_THROW(parse_complex_list("1,2,3"), InputError);
  EXPECT_THROW(parse_complex_list("1,x"), InputError);
}
