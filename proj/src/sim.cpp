#include "sim.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "rng.hpp"

namespace smc {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config:\n  - " + join(problems, "\n  - ")),
      problems_(std::move(problems)) {}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::svc: return "svc";
    case Scheme::smc: return "smc";
    case Scheme::smc_dual: return "smc-dual";
    case Scheme::smc_fused: return "smc-fused";
  }
  return "?";
}

std::string channel_name(ChannelMode m) {
  switch (m) {
    case ChannelMode::rayleigh: return "rayleigh";
    case ChannelMode::awgn: return "awgn";
    case ChannelMode::real_gaussian: return "real-gaussian";
  }
  return "?";
}

std::string bound_variant_name(BoundVariant v) {
  return v == BoundVariant::exact_expectation ? "exact-expectation" : "paper-literal";
}

std::vector<std::string> validate_config(const SimConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.m < 1) problems.push_back("m must be >= 1");
  if (cfg.n < 1) problems.push_back("n must be >= 1");
  if (cfg.k < 1) problems.push_back("k must be >= 1");
  if (cfg.k >= 1 && cfg.n >= 1) {
    if (cfg.k > cfg.n) {
      problems.push_back("k must be <= n");
    } else {
      try {
        if (payload_bits(cfg.n, cfg.k) < 1) {
          problems.push_back("payload capacity is zero: C(n,k) < 2");
        }
      } catch (const std::exception& e) {
        problems.push_back(std::string("payload capacity: ") + e.what());
      }
    }
  }
  if (cfg.trials_per_point < 1) problems.push_back("trials_per_point must be >= 1");
  if (cfg.snr_db.empty()) problems.push_back("snr_db list must not be empty");
  for (double v : cfg.snr_db) {
    if (std::isnan(v)) problems.push_back("snr_db entries must not be NaN");
  }
  if (cfg.comp_points < 1) problems.push_back("comp_points must be >= 1");
  if (cfg.comp_points > 1 && cfg.scheme != Scheme::smc) {
    problems.push_back("comp_points > 1 is only supported for scheme smc");
  }
  return problems;
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::vector<std::string> problems;
  std::map<std::string, std::string, std::less<>> kv;

  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!kv.emplace(key, value).second) {
      problems.push_back("duplicate key: " + key);
    }
  }

  auto take = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto parse_long = [&](const char* key, auto& out, bool required) {
    const std::string* v = take(key);
    if (!v) {
      if (required) problems.push_back(std::string("missing required key: ") + key);
      return;
    }
    errno = 0;
    char* end = nullptr;
    const long long parsed = std::strtoll(v->c_str(), &end, 10);
    if (errno || end == v->c_str() || *end) {
      problems.push_back(std::string(key) + ": not an integer: " + *v);
      return;
    }
    out = static_cast<std::remove_reference_t<decltype(out)>>(parsed);
  };

  parse_long("m", cfg.m, true);
  parse_long("n", cfg.n, true);
  parse_long("k", cfg.k, true);
  parse_long("trials_per_point", cfg.trials_per_point, true);
  parse_long("comp_points", cfg.comp_points, false);
  if (const std::string* v = take("master_seed")) {
    errno = 0;
    char* end = nullptr;
    cfg.master_seed = std::strtoull(v->c_str(), &end, 10);
    if (errno || end == v->c_str() || *end) problems.push_back("master_seed: not an integer: " + *v);
  }

  if (const std::string* v = take("scheme")) {
    if (*v == "svc") cfg.scheme = Scheme::svc;
    else if (*v == "smc") cfg.scheme = Scheme::smc;
    else if (*v == "smc-dual") cfg.scheme = Scheme::smc_dual;
    else if (*v == "smc-fused") cfg.scheme = Scheme::smc_fused;
    else problems.push_back("scheme: expected svc|smc|smc-dual|smc-fused, got " + *v);
  } else {
    problems.push_back("missing required key: scheme");
  }

  if (const std::string* v = take("channel")) {
    if (*v == "rayleigh") cfg.channel = ChannelMode::rayleigh;
    else if (*v == "awgn") cfg.channel = ChannelMode::awgn;
    else if (*v == "real-gaussian") cfg.channel = ChannelMode::real_gaussian;
    else problems.push_back("channel: expected rayleigh|awgn|real-gaussian, got " + *v);
  }

  if (const std::string* v = take("bound_variant")) {
    if (*v == "exact-expectation") cfg.bound_variant = BoundVariant::exact_expectation;
    else if (*v == "paper-literal") cfg.bound_variant = BoundVariant::paper_literal;
    else problems.push_back("bound_variant: expected exact-expectation|paper-literal, got " + *v);
  }

  if (const std::string* v = take("snr_db")) {
    std::string_view rest(*v);
    while (!(rest = trim(rest)).empty()) {
      std::size_t cut = rest.find_first_of(", \t");
      std::string tok(rest.substr(0, cut));
      rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
      if (tok.empty()) continue;
      if (tok == "inf" || tok == "+inf") {
        cfg.snr_db.push_back(std::numeric_limits<double>::infinity());
        continue;
      }
      errno = 0;
      char* end = nullptr;
      const double parsed = std::strtod(tok.c_str(), &end);
      if (errno || end == tok.c_str() || *end) {
        problems.push_back("snr_db: not a number: " + tok);
        continue;
      }
      cfg.snr_db.push_back(parsed);
    }
  } else {
    problems.push_back("missing required key: snr_db");
  }

  static const char* known[] = {"scheme", "m",           "n",           "k",
                                "snr_db", "trials_per_point", "channel", "master_seed",
                                "comp_points", "bound_variant"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      problems.push_back("unknown key: " + key);
    }
  }

  if (problems.empty()) {
    auto more = validate_config(cfg);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);
  return parse_config(text);
}

DecodeResult comp_combine(const std::vector<ReceivedFrame>& views, const Dictionary& a, int k) {
  if (views.empty()) throw std::invalid_argument("comp_combine: empty view list");
  return block_mp_decode_views(views, a, k);
}

namespace {

std::uint64_t draw_payload(Rng& rng, int bits) {
  if (bits <= 0) return 0;
  return rng.next_u64() >> (64 - bits);
}

struct TrialCounts {
  long frame = 0;
  long user1 = 0;
  long user2 = 0;
};

// One frame: fresh payloads, channel(s), noise; exact-match error check.
void run_trial(const SimConfig& cfg, const Dictionary& a, double sigma2, std::uint64_t point_seed,
               long trial, int cap, TrialCounts& counts) {
  Rng payload_rng(stream_key(point_seed, static_cast<std::uint64_t>(trial), stream::payload));
  if (cfg.scheme == Scheme::svc) {
    const std::uint64_t sent = draw_payload(payload_rng, cap);
    const SvcCodeword cw = svc_encode(sent, cfg.n, cfg.k);
    const ChannelRealization ch =
        sample_channel(cfg.m, cfg.channel, sigma2, point_seed, trial, 0);
    const Eigen::VectorXcd y = transmit_svc(cw, a, ch, point_seed, trial, 0);
    const SvcDecodeResult res = svc_mp_decode(y, a, ch.h, cfg.k);
    const bool err = !res.ok || res.payload != sent;
    counts.frame += err;
    counts.user1 += err;
    return;
  }

  const std::uint64_t sent1 = draw_payload(payload_rng, cap);
  const std::uint64_t sent2 = draw_payload(payload_rng, cap);
  const SmcCodeword cw = smc_encode(sent1, sent2, cfg.n, cfg.k);
  std::vector<ReceivedFrame> views;
  views.reserve(cfg.comp_points);
  for (int v = 0; v < cfg.comp_points; ++v) {
    ChannelRealization ch = sample_channel(cfg.m, cfg.channel, sigma2, point_seed, trial, v);
    Eigen::MatrixXcd y = transmit(cw, a, ch, point_seed, trial, v);
    views.push_back(ReceivedFrame{std::move(y), std::move(ch)});
  }
  DecodeResult res;
  switch (cfg.scheme) {
    case Scheme::smc:
      res = views.size() == 1 ? block_mp_decode(views[0].y, a, views[0].channel.h, cfg.k)
                              : comp_combine(views, a, cfg.k);
      break;
    case Scheme::smc_dual:
      res = dual_decode(views[0].y, a, views[0].channel.h, cfg.k);
      break;
    case Scheme::smc_fused:
      res = fused_decode(views[0].y, a, views[0].channel.h, cfg.k);
      break;
    default:
      break;
  }
  const bool err1 = !res.ok || res.payload1 != sent1;
  const bool err2 = !res.ok || res.payload2 != sent2;
  counts.user1 += err1;
  counts.user2 += err2;
  counts.frame += err1 || err2;
}

}  // namespace

std::vector<BlerPoint> run_sweep(const SimConfig& cfg, int workers) {
  if (auto problems = validate_config(cfg); !problems.empty()) {
    throw ConfigError(std::move(problems));
  }
  const Dictionary a = generate_bernoulli(cfg.m, cfg.n, cfg.master_seed);
  const int cap = payload_bits(cfg.n, cfg.k);
  const double mu = coherence(a);
  workers = std::max(1, workers);

  std::vector<BlerPoint> points;
  points.reserve(cfg.snr_db.size());
  for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
    const auto start = std::chrono::steady_clock::now();
    const double sigma2 = snr_to_sigma2(cfg.snr_db[si], a, cfg.k, cfg.scheme);
    const std::uint64_t point_seed = stream_key(cfg.master_seed, 0x505e5eedull, si);

    const long trials = cfg.trials_per_point;
    std::vector<TrialCounts> partial(workers);
    const int active = static_cast<int>(std::min<long>(workers, trials));
    std::vector<std::thread> pool;
    pool.reserve(active);
    for (int w = 0; w < active; ++w) {
      const long lo = trials * w / active;
      const long hi = trials * (w + 1) / active;
      pool.emplace_back([&, lo, hi, w] {
        for (long t = lo; t < hi; ++t) {
          run_trial(cfg, a, sigma2, point_seed, t, cap, partial[w]);
        }
      });
    }
    for (std::thread& th : pool) th.join();

    BlerPoint p;
    p.snr_db = cfg.snr_db[si];
    p.sigma2 = sigma2;
    p.trials = trials;
    for (const TrialCounts& c : partial) {
      p.frame_errors += c.frame;
      p.user1_errors += c.user1;
      p.user2_errors += c.user2;
    }
    p.bler = static_cast<double>(p.frame_errors) / trials;
    if (cfg.scheme == Scheme::svc) {
      p.bound_bler = std::numeric_limits<double>::quiet_NaN();
    } else {
      BoundParams bp{cfg.m, cfg.n, cfg.k, mu, static_cast<double>(cfg.k), sigma2,
                     cfg.bound_variant};
      p.bound_bler = bler_upper_bound(bp);
    }
    p.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    points.push_back(p);
  }
  return points;
}

std::string to_csv(const SimConfig& cfg, std::span<const BlerPoint> points) {
  std::string out;
  out += "# snr convention: per received entry, P_rx = K/m^2 (smc) or K/m (svc)\n";
  out +=
      "scheme,m,n,K,channel,seed,snr_db,trials,frame_errors,bler,user1_errors,user2_errors,"
      "bound_bler,bound_variant,wall_time_seconds\n";
  char buf[64];
  for (const BlerPoint& p : points) {
    out += scheme_name(cfg.scheme);
    out += ',' + std::to_string(cfg.m) + ',' + std::to_string(cfg.n) + ',' +
           std::to_string(cfg.k) + ',';
    out += channel_name(cfg.channel);
    out += ',' + std::to_string(cfg.master_seed) + ',';
    out += fmt_g(p.snr_db);
    out += ',' + std::to_string(p.trials) + ',' + std::to_string(p.frame_errors) + ',';
    out += fmt_g(p.bler);
    out += ',' + std::to_string(p.user1_errors) + ',' + std::to_string(p.user2_errors) + ',';
    out += fmt_g(p.bound_bler);
    out += ',';
    out += bound_variant_name(cfg.bound_variant);
    std::snprintf(buf, sizeof buf, ",%.6f\n", p.wall_time_seconds);
    out += buf;
  }
  return out;
}

std::string to_json(const SimConfig& cfg, std::span<const BlerPoint> points) {
  nlohmann::json root;
  root["config"] = {
      {"scheme", scheme_name(cfg.scheme)},
      {"m", cfg.m},
      {"n", cfg.n},
      {"k", cfg.k},
      {"channel", channel_name(cfg.channel)},
      {"master_seed", cfg.master_seed},
      {"trials_per_point", cfg.trials_per_point},
      {"comp_points", cfg.comp_points},
      {"bound_variant", bound_variant_name(cfg.bound_variant)},
      {"snr_convention", "per received entry, P_rx = K/m^2 (smc) or K/m (svc)"},
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const BlerPoint& p : points) {
    nlohmann::json row = {
        {"snr_db", p.snr_db},
        {"sigma2", p.sigma2},
        {"trials", p.trials},
        {"frame_errors", p.frame_errors},
        {"bler", p.bler},
        {"user1_errors", p.user1_errors},
        {"user2_errors", p.user2_errors},
        {"bound_variant", bound_variant_name(cfg.bound_variant)},
        {"wall_time_seconds", p.wall_time_seconds},
    };
    if (std::isnan(p.bound_bler)) row["bound_bler"] = nullptr;
    else row["bound_bler"] = p.bound_bler;
    rows.push_back(std::move(row));
  }
  root["points"] = std::move(rows);
  return root.dump(2) + "\n";
}

}  // namespace smc
