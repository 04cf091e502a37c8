#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "analysis.hpp"
#include "channel.hpp"
#include "codec.hpp"
#include "decoder.hpp"
#include "dictionary.hpp"

namespace smc {

struct SimConfig {
  Scheme scheme = Scheme::smc;
  int m = 0;
  int n = 0;
  int k = 0;
  std::vector<double> snr_db;  // "inf" entries give sigma2 = 0
  long trials_per_point = 0;
  ChannelMode channel = ChannelMode::rayleigh;
  std::uint64_t master_seed = 0;
  int comp_points = 1;  // J coordinated views; > 1 only for scheme smc
  BoundVariant bound_variant = BoundVariant::exact_expectation;
};

// Carries every problem found in a config; nothing runs until all are fixed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Flat key=value text, '#' comments. Throws ConfigError listing every
// problem (unknown keys, bad values, failed validation) at once.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);
std::vector<std::string> validate_config(const SimConfig& cfg);

struct BlerPoint {
  double snr_db = 0.0;
  double sigma2 = 0.0;
  long trials = 0;
  long frame_errors = 0;
  long user1_errors = 0;
  long user2_errors = 0;
  double bler = 0.0;
  double bound_bler = 0.0;  // NaN for schemes without an analytic bound (svc)
  double wall_time_seconds = 0.0;
};

// Per-trial streams are pure functions of (master_seed, snr index, trial,
// view), so results are bit-identical for any worker count.
std::vector<BlerPoint> run_sweep(const SimConfig& cfg, int workers = 1);

// Sum-score combining over J coordinated views of one codeword.
DecodeResult comp_combine(const std::vector<ReceivedFrame>& views, const Dictionary& a, int k);

std::string to_csv(const SimConfig& cfg, std::span<const BlerPoint> points);
std::string to_json(const SimConfig& cfg, std::span<const BlerPoint> points);

std::string scheme_name(Scheme s);
std::string channel_name(ChannelMode m);
std::string bound_variant_name(BoundVariant v);

}  // namespace smc
