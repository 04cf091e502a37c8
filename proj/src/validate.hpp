#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dictionary.hpp"

namespace smc {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr std::uint64_t kValidationSeed = 12345;

// Algebraic and statistical identity suites with fixed seeds. Each check is
// callable on its own so tests can feed it tampered inputs.
CheckResult check_column_norms(std::uint64_t seed);
CheckResult check_gram_quantization(std::uint64_t seed);
CheckResult check_eq2_identity(std::uint64_t seed);
CheckResult check_eq4_self(const Dictionary& d);
CheckResult check_eq4_cross(const Dictionary& d);
CheckResult check_eq4_sweep(std::uint64_t seed);
CheckResult check_z_statistic_mean(std::uint64_t seed);
CheckResult check_z_statistic_variance(std::uint64_t seed);
CheckResult check_chi_sq_expectation(std::uint64_t seed);
CheckResult check_q_bound();
CheckResult check_noise_variance(std::uint64_t seed);
CheckResult check_noise_independence(std::uint64_t seed);
CheckResult check_transmit_oracle(std::uint64_t seed);

std::vector<CheckResult> run_validation(std::uint64_t seed = kValidationSeed);
bool all_passed(std::span<const CheckResult> results);
std::string format_report(std::span<const CheckResult> results);

}  // namespace smc
