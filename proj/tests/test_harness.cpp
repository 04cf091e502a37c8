#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rng.hpp"
#include "sim.hpp"
#include "validate.hpp"

using namespace smc;

namespace {

// Wall time is the one non-deterministic column; blank it before comparing.
std::string strip_wall_time(const std::string& csv) {
  std::string out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string::npos) eol = csv.size();
    std::string line = csv.substr(pos, eol - pos);
    if (!line.empty() && line[0] != '#' && line.find("scheme,") != 0) {
      line = line.substr(0, line.rfind(','));
    }
    out += line + "\n";
    pos = eol + 1;
  }
  return out;
}

SimConfig small_config() {
  SimConfig cfg;
  cfg.scheme = Scheme::smc;
  cfg.m = 8;
  cfg.n = 16;
  cfg.k = 2;
  cfg.snr_db = {5.0, 15.0};
  cfg.trials_per_point = 400;
  cfg.channel = ChannelMode::rayleigh;
  cfg.master_seed = 3;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parse happy path") {
  const SimConfig cfg = parse_config(
      "# comment\n"
      "scheme = smc-dual\n"
      "m = 16\n"
      "n = 32\n"
      "k = 2\n"
      "snr_db = 0, 5, 10 15\n"
      "trials_per_point = 100\n"
      "channel = real-gaussian\n"
      "master_seed = 77\n"
      "bound_variant = paper-literal\n");
  CHECK(cfg.scheme == Scheme::smc_dual);
  CHECK(cfg.m == 16);
  CHECK(cfg.n == 32);
  CHECK(cfg.k == 2);
  CHECK(cfg.snr_db == std::vector<double>{0.0, 5.0, 10.0, 15.0});
  CHECK(cfg.trials_per_point == 100);
  CHECK(cfg.channel == ChannelMode::real_gaussian);
  CHECK(cfg.master_seed == 77);
  CHECK(cfg.comp_points == 1);
  CHECK(cfg.bound_variant == BoundVariant::paper_literal);
}

TEST_CASE("config problems are reported together") {
  try {
    parse_config(
        "scheme = smd\n"
        "m = 16\n"
        "n = 32\n"
        "snr_db = 0\n"
        "trials_per_point = 10\n"
        "volume = 11\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("scheme") != std::string::npos);
    CHECK(what.find("missing required key: k") != std::string::npos);
    CHECK(what.find("unknown key: volume") != std::string::npos);
    CHECK(e.problems().size() == 3);
  }
}

TEST_CASE("config validation catches semantic problems") {
  SimConfig cfg = small_config();
  cfg.scheme = Scheme::svc;
  cfg.comp_points = 3;
  cfg.k = 40;  // > n
  const auto problems = validate_config(cfg);
  CHECK(problems.size() == 2);
  CHECK_THROWS_AS(run_sweep(cfg, 1), ConfigError);
}

TEST_CASE("snr inf gives a zero-noise sweep with zero bler") {
  // m = 16, n = 32 keeps the dictionary coherence low enough for exact
  // noiseless recovery; at m = 8 Bernoulli columns can collide outright.
  SimConfig cfg = small_config();
  cfg.m = 16;
  cfg.n = 32;
  cfg.snr_db = {std::numeric_limits<double>::infinity()};
  cfg.trials_per_point = 200;
  for (Scheme s : {Scheme::smc, Scheme::smc_dual, Scheme::smc_fused}) {
    cfg.scheme = s;
    const auto points = run_sweep(cfg, 2);
    REQUIRE(points.size() == 1);
    CHECK(points[0].sigma2 == 0.0);
    CHECK(points[0].frame_errors == 0);
    CHECK(points[0].bler == 0.0);
    CHECK(points[0].bound_bler == 0.0);
  }
}

TEST_CASE("sweep output is deterministic and worker-count independent") {
  const SimConfig cfg = small_config();
  const auto p1 = run_sweep(cfg, 1);
  const auto p2 = run_sweep(cfg, 1);
  const auto p8 = run_sweep(cfg, 8);
  const std::string c1 = strip_wall_time(to_csv(cfg, p1));
  CHECK(c1 == strip_wall_time(to_csv(cfg, p2)));
  CHECK(c1 == strip_wall_time(to_csv(cfg, p8)));
  CHECK(p1[0].frame_errors == p8[0].frame_errors);
  CHECK(p1[0].user1_errors == p8[0].user1_errors);
  CHECK(p1[0].user2_errors == p8[0].user2_errors);
}

TEST_CASE("csv carries the documented columns and config fields") {
  const SimConfig cfg = small_config();
  const auto points = run_sweep(cfg, 4);
  const std::string csv = to_csv(cfg, points);
  CHECK(csv.find("scheme,m,n,K,channel,seed,snr_db,trials,frame_errors,bler,user1_errors,"
                 "user2_errors,bound_bler,bound_variant,wall_time_seconds") != std::string::npos);
  CHECK(csv.find("smc,8,16,2,rayleigh,3,") != std::string::npos);
  CHECK(csv.find("exact-expectation") != std::string::npos);
  // one comment, one header, one line per point
  const long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 2 + static_cast<long>(points.size()));
}

TEST_CASE("json mirror carries the same rows") {
  const SimConfig cfg = small_config();
  const auto points = run_sweep(cfg, 4);
  const nlohmann::json j = nlohmann::json::parse(to_json(cfg, points));
  CHECK(j["config"]["scheme"] == "smc");
  CHECK(j["config"]["m"] == 8);
  REQUIRE(j["points"].size() == points.size());
  CHECK(j["points"][0]["trials"] == points[0].trials);
  CHECK(j["points"][0]["frame_errors"] == points[0].frame_errors);
  CHECK(j["points"][1]["snr_db"] == 15.0);
}

TEST_CASE("svc rows have no analytic bound") {
  SimConfig cfg = small_config();
  cfg.scheme = Scheme::svc;
  cfg.trials_per_point = 50;
  const auto points = run_sweep(cfg, 2);
  CHECK(std::isnan(points[0].bound_bler));
  CHECK(points[0].user2_errors == 0);
  const nlohmann::json j = nlohmann::json::parse(to_json(cfg, points));
  CHECK(j["points"][0]["bound_bler"].is_null());
}

TEST_CASE("comp_combine with one view equals block_mp_decode") {
  const Dictionary a = generate_bernoulli(8, 16, 5);
  const int cap = payload_bits(16, 2);
  for (int t = 0; t < 50; ++t) {
    Rng rng(stream_key(6, t, stream::payload));
    const SmcCodeword cw =
        smc_encode(rng.next_u64() >> (64 - cap), rng.next_u64() >> (64 - cap), 16, 2);
    const double sigma2 = snr_to_sigma2(8.0, a, 2, Scheme::smc);
    ChannelRealization ch = sample_channel(8, ChannelMode::rayleigh, sigma2, 6, t);
    Eigen::MatrixXcd y = transmit(cw, a, ch, 6, t);
    const DecodeResult direct = block_mp_decode(y, a, ch.h, 2);
    const DecodeResult combined = comp_combine({ReceivedFrame{y, ch}}, a, 2);
    CHECK(direct.pairs == combined.pairs);
    CHECK(direct.payload1 == combined.payload1);
    CHECK(direct.payload2 == combined.payload2);
    CHECK(direct.winner_scores == combined.winner_scores);
  }
}

TEST_CASE("comp_combine rejects an empty view list") {
  const Dictionary a = generate_bernoulli(8, 16, 5);
  CHECK_THROWS_AS(comp_combine({}, a, 2), std::invalid_argument);
}

TEST_CASE("two noiseless views recover exactly") {
  const Dictionary a = generate_bernoulli(16, 32, 7);
  const int cap = payload_bits(32, 2);
  for (int t = 0; t < 50; ++t) {
    Rng rng(stream_key(8, t, stream::payload));
    const std::uint64_t p1 = rng.next_u64() >> (64 - cap);
    const std::uint64_t p2 = rng.next_u64() >> (64 - cap);
    const SmcCodeword cw = smc_encode(p1, p2, 32, 2);
    std::vector<ReceivedFrame> views;
    for (int v = 0; v < 2; ++v) {
      ChannelRealization ch = sample_channel(16, ChannelMode::rayleigh, 0.0, 8, t, v);
      views.push_back(ReceivedFrame{transmit(cw, a, ch, 8, t, v), ch});
    }
    const DecodeResult res = comp_combine(views, a, 2);
    CHECK(res.ok);
    CHECK(res.payload1 == p1);
    CHECK(res.payload2 == p2);
  }
}

TEST_CASE("comp sweep runs through the config path") {
  SimConfig cfg = small_config();
  cfg.comp_points = 2;
  cfg.trials_per_point = 100;
  const auto points = run_sweep(cfg, 2);
  CHECK(points.size() == 2);
  const auto again = run_sweep(cfg, 5);
  CHECK(points[0].frame_errors == again[0].frame_errors);
}

TEST_CASE("validation suite passes on a healthy build") {
  const auto results = run_validation();
  for (const CheckResult& r : results) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
  const std::string report = format_report(results);
  CHECK(report.find("[PASS]") != std::string::npos);
  CHECK(report.find("measured=") != std::string::npos);
  CHECK(report.find("tol=") != std::string::npos);
  CHECK(all_passed(results));
}

}  // TEST_SUITE
