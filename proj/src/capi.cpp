#include "smc/smc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "analysis.hpp"
#include "channel.hpp"
#include "codec.hpp"
#include "decoder.hpp"
#include "dictionary.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "validate.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <typename F>
smc_status wrap(F&& f) noexcept {
  try {
    return f();
  } catch (const smc::ConfigError& e) {
    set_error(e.what());
    return SMC_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SMC_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return SMC_ERR_OUT_OF_RANGE;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SMC_ERR_DOMAIN;
  } catch (const std::overflow_error& e) {
    set_error(e.what());
    return SMC_ERR_OVERFLOW;
  } catch (const std::length_error& e) {
    set_error(e.what());
    return SMC_ERR_GUARD;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SMC_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return SMC_ERR_INTERNAL;
  }
}

smc_status require(bool ok, const char* message) {
  if (!ok) {
    set_error(message);
    return SMC_ERR_INVALID_ARGUMENT;
  }
  return SMC_OK;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

smc::Scheme to_scheme(smc_scheme s) {
  switch (s) {
    case SMC_SCHEME_SVC: return smc::Scheme::svc;
    case SMC_SCHEME_SMC: return smc::Scheme::smc;
    case SMC_SCHEME_SMC_DUAL: return smc::Scheme::smc_dual;
    case SMC_SCHEME_SMC_FUSED: return smc::Scheme::smc_fused;
  }
  throw std::invalid_argument("unknown scheme");
}

nlohmann::json pairs_json(const std::vector<std::pair<int, int>>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [r, c] : pairs) out.push_back({r, c});
  return out;
}

}  // namespace

extern "C" {

struct smc_dictionary {
  smc::Dictionary d;
};

struct smc_sim_config {
  smc::SimConfig cfg;
};

const char* smc_status_name(smc_status status) {
  switch (status) {
    case SMC_OK: return "ok";
    case SMC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SMC_ERR_OUT_OF_RANGE: return "out of range";
    case SMC_ERR_DOMAIN: return "domain error";
    case SMC_ERR_OVERFLOW: return "overflow";
    case SMC_ERR_GUARD: return "enumeration guard exceeded";
    case SMC_ERR_CONFIG: return "invalid config";
    case SMC_ERR_IO: return "io error";
    case SMC_ERR_VALIDATION_FAILED: return "validation failed";
    case SMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* smc_last_error(void) { return g_last_error.c_str(); }

smc_status smc_dictionary_create_bernoulli(int32_t rows, int32_t cols, uint64_t seed,
                                           smc_dictionary** out) {
  if (smc_status s = require(out != nullptr, "out must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *out = new smc_dictionary{smc::generate_bernoulli(rows, cols, seed)};
    return SMC_OK;
  });
}

void smc_dictionary_destroy(smc_dictionary* d) { delete d; }

int32_t smc_dictionary_rows(const smc_dictionary* d) { return d ? d->d.rows : 0; }
int32_t smc_dictionary_cols(const smc_dictionary* d) { return d ? d->d.cols : 0; }

smc_status smc_dictionary_coherence(const smc_dictionary* d, double* mu) {
  if (smc_status s = require(d && mu, "d and mu must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *mu = smc::coherence(d->d);
    return SMC_OK;
  });
}

smc_status smc_dictionary_entries(const smc_dictionary* d, double* buf, size_t len) {
  if (smc_status s = require(d && buf, "d and buf must not be NULL"); s != SMC_OK) return s;
  const size_t need = static_cast<size_t>(d->d.rows) * d->d.cols;
  if (smc_status s = require(len >= need, "buffer too small"); s != SMC_OK) return s;
  for (int i = 0; i < d->d.rows; ++i) {
    for (int j = 0; j < d->d.cols; ++j) buf[static_cast<size_t>(i) * d->d.cols + j] = d->d.entries(i, j);
  }
  return SMC_OK;
}

smc_status smc_payload_bits(int32_t n, int32_t k, int32_t* bits) {
  if (smc_status s = require(bits != nullptr, "bits must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *bits = smc::payload_bits(n, k);
    return SMC_OK;
  });
}

smc_status smc_rank_to_subset(uint64_t rank, int32_t n, int32_t k, uint32_t* support) {
  if (smc_status s = require(support != nullptr, "support must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    const std::vector<int> sub = smc::rank_to_subset(rank, n, k);
    for (int i = 0; i < k; ++i) support[i] = static_cast<uint32_t>(sub[i]);
    return SMC_OK;
  });
}

smc_status smc_subset_to_rank(const uint32_t* support, int32_t n, int32_t k, uint64_t* rank) {
  if (smc_status s = require(support && rank, "support and rank must not be NULL"); s != SMC_OK) {
    return s;
  }
  return wrap([&] {
    std::vector<int> sub(support, support + k);
    *rank = smc::subset_to_rank(sub, n, k);
    return SMC_OK;
  });
}

smc_status smc_chi_sq_exp(double alpha, int32_t m, double* out) {
  if (smc_status s = require(out != nullptr, "out must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *out = smc::chi_sq_exp(alpha, m);
    return SMC_OK;
  });
}

smc_status smc_block_success_prob(const smc_bound_params* p, double* out) {
  if (smc_status s = require(p && out, "p and out must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *out = smc::block_success_prob(
        {p->m, p->n, p->k, p->mu, p->s_sum, p->sigma2,
         p->variant == SMC_BOUND_PAPER_LITERAL ? smc::BoundVariant::paper_literal
                                               : smc::BoundVariant::exact_expectation});
    return SMC_OK;
  });
}

smc_status smc_bler_upper_bound(const smc_bound_params* p, double* out) {
  if (smc_status s = require(p && out, "p and out must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *out = smc::bler_upper_bound(
        {p->m, p->n, p->k, p->mu, p->s_sum, p->sigma2,
         p->variant == SMC_BOUND_PAPER_LITERAL ? smc::BoundVariant::paper_literal
                                               : smc::BoundVariant::exact_expectation});
    return SMC_OK;
  });
}

smc_status smc_snr_to_sigma2(double snr_db, int32_t m, int32_t k, smc_scheme scheme,
                             double* sigma2) {
  if (smc_status s = require(sigma2 != nullptr, "sigma2 must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *sigma2 = smc::snr_to_sigma2(snr_db, m, k, to_scheme(scheme));
    return SMC_OK;
  });
}

smc_status smc_efficiency(int32_t n, int32_t k, int32_t m, smc_scheme scheme,
                          int32_t* payload_bits, int32_t* channel_uses, double* bits_per_use) {
  return wrap([&] {
    const smc::Efficiency e = smc::efficiency(n, k, m, to_scheme(scheme));
    if (payload_bits) *payload_bits = e.payload_bits;
    if (channel_uses) *channel_uses = e.channel_uses;
    if (bits_per_use) *bits_per_use = e.bits_per_use;
    return SMC_OK;
  });
}

smc_status smc_sim_config_parse(const char* text, smc_sim_config** out) {
  if (smc_status s = require(text && out, "text and out must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    *out = new smc_sim_config{smc::parse_config(text)};
    return SMC_OK;
  });
}

smc_status smc_sim_config_load(const char* path, smc_sim_config** out) {
  if (smc_status s = require(path && out, "path and out must not be NULL"); s != SMC_OK) return s;
  return wrap([&]() -> smc_status {
    try {
      *out = new smc_sim_config{smc::load_config(path)};
    } catch (const smc::ConfigError&) {
      throw;
    } catch (const std::runtime_error& e) {
      set_error(e.what());
      return SMC_ERR_IO;
    }
    return SMC_OK;
  });
}

void smc_sim_config_destroy(smc_sim_config* cfg) { delete cfg; }

smc_status smc_simulate(const smc_sim_config* cfg, int32_t workers, smc_format format,
                        char** report) {
  if (smc_status s = require(cfg && report, "cfg and report must not be NULL"); s != SMC_OK) {
    return s;
  }
  return wrap([&] {
    const int w = workers > 0 ? workers
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::vector<smc::BlerPoint> points = smc::run_sweep(cfg->cfg, w);
    const std::string text = format == SMC_FORMAT_JSON ? smc::to_json(cfg->cfg, points)
                                                       : smc::to_csv(cfg->cfg, points);
    *report = dup_string(text);
    return SMC_OK;
  });
}

smc_status smc_validate(char** report) {
  if (smc_status s = require(report != nullptr, "report must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    const std::vector<smc::CheckResult> results = smc::run_validation();
    *report = dup_string(smc::format_report(results));
    if (!smc::all_passed(results)) {
      set_error("one or more validation checks failed");
      return SMC_ERR_VALIDATION_FAILED;
    }
    return SMC_OK;
  });
}

smc_status smc_roundtrip(int32_t m, int32_t n, int32_t k, uint64_t seed,
                         const char* payload1_hex, const char* payload2_hex, int32_t* ok,
                         char** report) {
  if (smc_status s = require(report != nullptr, "report must not be NULL"); s != SMC_OK) return s;
  return wrap([&] {
    const smc::Dictionary a = smc::generate_bernoulli(m, n, seed);
    const int cap = smc::payload_bits(n, k);
    smc::Rng rng(smc::stream_key(seed, smc::stream::payload));
    const std::uint64_t p1 = payload1_hex ? smc::hex_to_payload(payload1_hex, cap)
                                          : (cap > 0 ? rng.next_u64() >> (64 - cap) : 0);
    const std::uint64_t p2 = payload2_hex ? smc::hex_to_payload(payload2_hex, cap)
                                          : (cap > 0 ? rng.next_u64() >> (64 - cap) : 0);
    const smc::SmcCodeword cw = smc::smc_encode(p1, p2, n, k);
    const smc::ChannelRealization ch =
        smc::sample_channel(m, smc::ChannelMode::rayleigh, 0.0, seed, 0);
    const Eigen::MatrixXcd y = smc::transmit(cw, a, ch, seed, 0);
    const smc::DecodeResult primary = smc::block_mp_decode(y, a, ch.h, k);
    const smc::DecodeResult dual = smc::dual_decode(y, a, ch.h, k);

    auto path_json = [&](const smc::DecodeResult& r) {
      return nlohmann::json{{"ok", r.ok},
                            {"payload1", smc::payload_to_hex(r.payload1, cap)},
                            {"payload2", smc::payload_to_hex(r.payload2, cap)},
                            {"pairs", pairs_json(r.pairs)},
                            {"match", r.ok && r.payload1 == p1 && r.payload2 == p2}};
    };
    std::vector<std::pair<int, int>> sent_pairs;
    for (const smc::SmcEntry& e : cw.entries) sent_pairs.emplace_back(e.row, e.col);
    const bool both = primary.ok && dual.ok && primary.payload1 == p1 &&
                      primary.payload2 == p2 && dual.payload1 == p1 && dual.payload2 == p2;
    nlohmann::json root{{"m", m},
                        {"n", n},
                        {"k", k},
                        {"seed", seed},
                        {"payload_bits", cap},
                        {"sent",
                         {{"payload1", smc::payload_to_hex(p1, cap)},
                          {"payload2", smc::payload_to_hex(p2, cap)},
                          {"pairs", pairs_json(sent_pairs)}}},
                        {"primary", path_json(primary)},
                        {"dual", path_json(dual)},
                        {"ok", both}};
    if (ok) *ok = both ? 1 : 0;
    *report = dup_string(root.dump(2) + "\n");
    return SMC_OK;
  });
}

void smc_string_free(char* s) { std::free(s); }

}  // extern "C"
