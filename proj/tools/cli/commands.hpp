#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndpc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailed = 2,
  kNumericError = 3,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observation variance token: a number or the literal "inf".
double parse_variance(std::string_view token);

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::size_t samples = 1'000'000;
};

struct SuiteResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string worst_case;  // parameters of the largest deviation
};

/// The oracle suites behind `ndpc verify`.
std::vector<SuiteResult> run_verification(const VerifyOptions& opts);

/// Entry point; `args` excludes the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndpc::cli
