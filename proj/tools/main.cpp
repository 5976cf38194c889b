#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"

using namespace codim1::cli;

namespace {

int emit(const CommandResult& r) {
  if (!r.report.is_null()) std::cout << render_report(r.report);
  if (!r.error.empty()) std::cerr << "codim1: " << r.error << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codimension-one fibers of sparse polynomial maps"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string path;

  auto* classify = app.add_subcommand("classify", "Classify the support collection of a problem file");
  classify->add_option("file", path, "Problem file (JSON)")->required();

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Compute the codimension-one fiber points");
  solve->add_option("file", path, "Problem file (JSON)")->required();
  solve->add_option("--seed", solve_flags.seed, "Seed for generic coefficients and verification samples");
  solve->add_option("--samples", solve_flags.samples, "Verification samples per point")->check(CLI::PositiveNumber);
  solve->add_option("--tol", solve_flags.tol, "Residual tolerance (max norm)")->check(CLI::PositiveNumber);

  VerifyFlags verify_flags;
  std::string kappa_text, t0_text = "1,0";
  auto* verify = app.add_subcommand("verify", "Check that a fiber contains a binomial hypersurface");
  verify->add_option("file", path, "Problem file (JSON) with coefficients")->required();
  verify->add_option("--kappa", kappa_text, "Target value as re,im,re,im")->required();
  verify->add_option("--t0", t0_text, "Binomial constant as re,im");
  verify->add_option("--samples", verify_flags.samples, "Number of sample points")->check(CLI::PositiveNumber);
  verify->add_option("--tol", verify_flags.tol, "Residual tolerance (max norm)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_flags.seed, "Sampling seed");

  LemmaFuzzFlags fuzz_flags;
  std::string fuzz_input;
  auto* fuzz = app.add_subcommand("lemma-fuzz", "Fuzz the Minkowski-sum lattice point inequality");
  fuzz->add_option("--trials", fuzz_flags.trials, "Number of random pairs");
  fuzz->add_option("--dim", fuzz_flags.dim, "Ambient dimension (1-4)");
  fuzz->add_option("--max-coord", fuzz_flags.max_coord, "Coordinate bound (1-10)");
  fuzz->add_option("--seed", fuzz_flags.seed, "Master seed");
  fuzz->add_flag("--segments", fuzz_flags.segments, "Use two-point polytopes only");
  fuzz->add_option("--input", fuzz_input, "Check explicit pairs from a JSON file instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*classify) return emit(cmd_classify(path));
    if (*solve) return emit(cmd_solve(path, solve_flags));
    if (*verify) {
      verify_flags.kappa = parse_complex_list(kappa_text);
      const auto t0 = parse_complex_list(t0_text);
      if (t0.size() != 1) throw InputError("--t0: expected a single re,im pair");
      verify_flags.t0 = t0[0];
      return emit(cmd_verify(path, verify_flags));
    }
    if (!fuzz_input.empty()) fuzz_flags.input = fuzz_input;
    return emit(cmd_lemma_fuzz(fuzz_flags));
  } catch (const InputError& e) {
    std::cerr << "codim1: " << e.what() << "\n";
    return kInputError;
  }
}
