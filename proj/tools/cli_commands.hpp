#pragma once

// Command implementations behind the codim1 executable. Each command returns
// its exit status together with the JSON report, so the same code paths can
// be driven from tests without spawning processes.
//
// Exit statuses: 0 success, 1 property violation, 2 input error,
// 3 structural mismatch between supports and coefficients.

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codim1/codim1.hpp"

namespace codim1::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kPropertyViolation = 1,
  kInputError = 2,
  kStructuralMismatch = 3,
};

/// Parse or validation failure in an input file; the message names the entry.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::vector<LatticeVector>> supports;
  std::optional<std::vector<std::vector<std::complex<double>>>> coefficients;
  std::string digest;

  PolytopeCollection collection() const;
  PolynomialMap<std::complex<double>> map() const;  // requires coefficients
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

struct CommandResult {
  int exit_code = kOk;
  Json report;        // null when the command failed before producing one
  std::string error;  // diagnostic for exit codes 2 and 3
};

struct SolveFlags {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  double tol = 1e-6;
};

struct VerifyFlags {
  std::vector<std::complex<double>> kappa;
  std::complex<double> t0{1.0, 0.0};
  std::size_t samples = 100;
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

struct LemmaFuzzFlags {
  std::size_t trials = 1000;
  std::size_t dim = 2;
  int max_coord = 5;
  std::uint64_t seed = 0;
  bool segments = false;            // every polytope gets exactly two generators
  std::optional<std::string> input; // explicit pairs instead of random ones
};

CommandResult cmd_classify(const std::string& path);
CommandResult cmd_solve(const std::string& path, const SolveFlags& flags);
CommandResult cmd_verify(const std::string& path, const VerifyFlags& flags);
CommandResult cmd_lemma_fuzz(const LemmaFuzzFlags& flags);

/// "re,im,re,im,..." -> complex numbers.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

std::string sha256_hex(const std::string& bytes);

/// Deterministic rendering: two-space indentation, floats with 17
/// significant digits, negative zero printed as 0.
std::string render_report(const Json& report);

}  // namespace codim1::cli
