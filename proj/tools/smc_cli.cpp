// Command-line front end for the smc shared library.
//
//   smc_cli simulate --config sweep.cfg --out results.csv
//   smc_cli bound --m 16 --n 32 --k 2 --mu 0.625 --snr-db 0 5 10
//   smc_cli validate
//   smc_cli capacity --n 32 --k 2 --m 16 --scheme smc
//   smc_cli roundtrip --m 16 --n 32 --k 2 --seed 7

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smc/smc.h"

namespace {

int fail(smc_status status, const char* where) {
  std::cerr << where << ": " << smc_status_name(status) << ": " << smc_last_error() << "\n";
  return 1;
}

bool write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse matrix coding link-level simulator"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo BLER sweep from a config file");
  std::string cfg_path, out_path, format = "csv";
  int workers = 0;
  sim->add_option("--config", cfg_path, "flat key=value config file")->required();
  sim->add_option("--out", out_path, "output path (default stdout)");
  sim->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("--workers", workers, "worker threads (0 = hardware)");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the closed-form BLER upper bound");
  int bm = 0, bn = 0, bk = 0;
  double bmu = 0.0, bs_sum = -1.0;
  std::vector<double> bsnr;
  std::string bvariant = "exact-expectation";
  bound->add_option("--m", bm, "rows of the dictionary")->required();
  bound->add_option("--n", bn, "columns of the dictionary")->required();
  bound->add_option("--k", bk, "per-frame sparsity")->required();
  bound->add_option("--mu", bmu, "dictionary coherence in [0,1)")->required();
  bound->add_option("--snr-db", bsnr, "SNR points in dB")->required()->expected(-1);
  bound->add_option("--s-sum", bs_sum, "sum of sparse values (default k)");
  bound->add_option("--variant", bvariant, "exact-expectation or paper-literal")
      ->check(CLI::IsMember({"exact-expectation", "paper-literal"}));
  bound->add_option("--out", out_path, "output path (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "run the identity/validation suites");

  // capacity
  auto* capacity = app.add_subcommand("capacity", "payload bits and bits per channel use");
  int cn = 0, ck = 0, cm = 0;
  std::string cscheme = "smc";
  capacity->add_option("--n", cn)->required();
  capacity->add_option("--k", ck)->required();
  capacity->add_option("--m", cm)->required();
  capacity->add_option("--scheme", cscheme)->check(CLI::IsMember({"svc", "smc"}));

  // roundtrip
  auto* roundtrip = app.add_subcommand("roundtrip", "single-frame noiseless encode/decode");
  int rm = 0, rn = 0, rk = 0;
  std::uint64_t rseed = 0;
  std::string rp1, rp2;
  roundtrip->add_option("--m", rm)->required();
  roundtrip->add_option("--n", rn)->required();
  roundtrip->add_option("--k", rk)->required();
  roundtrip->add_option("--seed", rseed)->required();
  roundtrip->add_option("--payload1", rp1, "hex payload for user 1 (default from seed)");
  roundtrip->add_option("--payload2", rp2, "hex payload for user 2 (default from seed)");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    smc_sim_config* cfg = nullptr;
    if (smc_status s = smc_sim_config_load(cfg_path.c_str(), &cfg); s != SMC_OK) {
      return fail(s, "simulate");
    }
    char* report = nullptr;
    const smc_format fmt = format == "json" ? SMC_FORMAT_JSON : SMC_FORMAT_CSV;
    const smc_status s = smc_simulate(cfg, workers, fmt, &report);
    smc_sim_config_destroy(cfg);
    if (s != SMC_OK) return fail(s, "simulate");
    const bool ok = write_output(out_path, report);
    smc_string_free(report);
    return ok ? 0 : 1;
  }

  if (bound->parsed()) {
    smc_bound_params p{};
    p.m = bm;
    p.n = bn;
    p.k = bk;
    p.mu = bmu;
    p.s_sum = bs_sum < 0 ? static_cast<double>(bk) : bs_sum;
    p.variant = bvariant == "paper-literal" ? SMC_BOUND_PAPER_LITERAL : SMC_BOUND_EXACT_EXPECTATION;
    std::string csv = "snr_db,sigma2,variant,bler_bound\n";
    for (double snr : bsnr) {
      double sigma2 = 0.0, value = 0.0;
      if (smc_status s = smc_snr_to_sigma2(snr, bm, bk, SMC_SCHEME_SMC, &sigma2); s != SMC_OK) {
        return fail(s, "bound");
      }
      p.sigma2 = sigma2;
      if (smc_status s = smc_bler_upper_bound(&p, &value); s != SMC_OK) return fail(s, "bound");
      char line[128];
      std::snprintf(line, sizeof line, "%g,%.12g,%s,%.12g\n", snr, sigma2, bvariant.c_str(), value);
      csv += line;
    }
    return write_output(out_path, csv.c_str()) ? 0 : 1;
  }

  if (validate->parsed()) {
    char* report = nullptr;
    const smc_status s = smc_validate(&report);
    if (report) {
      std::cout << report;
      smc_string_free(report);
    }
    if (s == SMC_OK) return 0;
    if (s == SMC_ERR_VALIDATION_FAILED) return 2;
    return fail(s, "validate");
  }

  if (capacity->parsed()) {
    int32_t bits = 0, uses = 0;
    double rate = 0.0;
    const smc_scheme scheme = cscheme == "svc" ? SMC_SCHEME_SVC : SMC_SCHEME_SMC;
    if (smc_status s = smc_efficiency(cn, ck, cm, scheme, &bits, &uses, &rate); s != SMC_OK) {
      return fail(s, "capacity");
    }
    std::printf("scheme=%s n=%d k=%d m=%d payload_bits=%d channel_uses=%d bits_per_use=%g\n",
                cscheme.c_str(), cn, ck, cm, bits, uses, rate);
    return 0;
  }

  if (roundtrip->parsed()) {
    char* report = nullptr;
    int32_t ok = 0;
    const smc_status s =
        smc_roundtrip(rm, rn, rk, rseed, rp1.empty() ? nullptr : rp1.c_str(),
                      rp2.empty() ? nullptr : rp2.c_str(), &ok, &report);
    if (s != SMC_OK) return fail(s, "roundtrip");
    std::cout << report;
    smc_string_free(report);
    return ok ? 0 : 2;
  }

  return 0;
}
