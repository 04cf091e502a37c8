#include "validate.hpp"

#include <cmath>
#include <cstdio>

#include "analysis.hpp"
#include "channel.hpp"
#include "decoder.hpp"
#include "rng.hpp"

namespace smc {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

CheckResult make(const char* name, double measured, double expected, double tol) {
  return CheckResult{name, measured, expected, tol, std::abs(measured - expected) <= tol};
}

CheckResult make_upper(const char* name, double measured, double limit) {
  return CheckResult{name, measured, limit, 0.0, measured <= limit};
}

std::uint64_t draw_payload(Rng& rng, int bits) {
  return bits > 0 ? rng.next_u64() >> (64 - bits) : 0;
}

Dictionary random_dictionary(Rng& rng, int min_m = 2, int max_m = 16) {
  const int m = min_m + static_cast<int>(rng.next_u64() % (max_m - min_m + 1));
  const int n = m + static_cast<int>(rng.next_u64() % (2 * m - m + 1));
  return generate_bernoulli(m, n, rng.next_u64());
}

}  // namespace

CheckResult check_column_norms(std::uint64_t seed) {
  Rng rng(stream_key(seed, 0xc01u));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Dictionary d = random_dictionary(rng);
    for (int j = 0; j < d.cols; ++j) {
      worst = std::max(worst, std::abs(d.entries.col(j).norm() - 1.0));
    }
  }
  return make("dictionary_column_norms", worst, 0.0, 1e-12);
}

CheckResult check_gram_quantization(std::uint64_t seed) {
  // Bernoulli column correlations are sums of m terms +-1/m, so m * <ai, aj>
  // must sit on an integer.
  Rng rng(stream_key(seed, 0x96a3u));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Dictionary d = random_dictionary(rng);
    const MatrixXd gram = d.entries.transpose() * d.entries;
    for (int a = 0; a < d.cols; ++a) {
      for (int b = a + 1; b < d.cols; ++b) {
        const double scaled = gram(a, b) * d.rows;
        worst = std::max(worst, std::abs(scaled - std::round(scaled)));
      }
    }
  }
  return make("bernoulli_gram_quantization", worst, 0.0, 1e-9);
}

CheckResult check_eq2_identity(std::uint64_t seed) {
  // vec(Y^H) against an explicitly built (HA (x) I_m) acting on vec(A X^T),
  // real instances, noiseless.
  Rng rng(stream_key(seed, 0xe92u));
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const int m = 2 + static_cast<int>(rng.next_u64() % 7);   // 2..8
    const int n = m + static_cast<int>(rng.next_u64() % (13 - m));  // m..12
    const int k = 1 + static_cast<int>(rng.next_u64() % std::min(2, n - 1));
    const Dictionary a = generate_bernoulli(m, n, rng.next_u64());
    const int cap = payload_bits(n, k);
    const std::uint64_t p1 = draw_payload(rng, cap);
    const std::uint64_t p2 = draw_payload(rng, cap);
    const SmcCodeword cw = smc_encode(p1, p2, n, k);
    const std::uint64_t chseed = rng.next_u64();
    const ChannelRealization ch = sample_channel(m, ChannelMode::real_gaussian, 0.0, chseed, 0);
    const MatrixXcd y = transmit(cw, a, ch, chseed, 0);

    MatrixXd x_dense = MatrixXd::Zero(n, n);
    for (const SmcEntry& e : cw.entries) x_dense(e.row, e.col) = e.value;

    // phi[(i, r), (j, c)] = h_i A(i, j) [r == c]
    MatrixXd phi = MatrixXd::Zero(m * m, n * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = ch.h(i).real() * a.entries(i, j);
        for (int r = 0; r < m; ++r) phi(i * m + r, j * m + r) = v;
      }
    }
    // x = vec(A X^T): x[j*m + i] = sum_l A(i, l) X(j, l)
    VectorXd x_vec = VectorXd::Zero(n * m);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += a.entries(i, l) * x_dense(j, l);
        x_vec(j * m + i) = s;
      }
    }
    const VectorXd lhs = vectorize(y).real();
    const double denom = lhs.norm();
    if (denom == 0.0) continue;
    worst = std::max(worst, (lhs - phi * x_vec).norm() / denom);
  }
  return make_upper("eq2_vectorization_identity", worst, 1e-10);
}

CheckResult check_eq4_self(const Dictionary& d) {
  const VectorXcd h = VectorXcd::Ones(d.rows);
  double worst = 0.0;
  for (int i = 0; i < d.cols; ++i) {
    worst = std::max(worst, std::abs(block_correlation(d, h, i, i).real() - d.rows));
  }
  return make("eq4_self_correlation", worst, 0.0, 1e-9);
}

CheckResult check_eq4_cross(const Dictionary& d) {
  const VectorXcd h = VectorXcd::Ones(d.rows);
  const double cap = d.rows * coherence(d);
  double worst = -cap;
  for (int i = 0; i < d.cols; ++i) {
    for (int j = 0; j < d.cols; ++j) {
      if (i == j) continue;
      worst = std::max(worst, std::abs(block_correlation(d, h, i, j)) - cap);
    }
  }
  return make_upper("eq4_cross_correlation_margin", worst, 1e-9);
}

CheckResult check_eq4_sweep(std::uint64_t seed) {
  Rng rng(stream_key(seed, 0xe94u));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Dictionary d = random_dictionary(rng);
    const CheckResult self = check_eq4_self(d);
    const CheckResult cross = check_eq4_cross(d);
    worst = std::max({worst, self.measured, cross.measured});
  }
  return make_upper("eq4_block_correlations", worst, 1e-9);
}

CheckResult check_z_statistic_mean(std::uint64_t seed) {
  // Projection of real noise onto a normalized block column.
  const double sigma2 = 1.7;
  const int m = 16;
  const Dictionary d = generate_bernoulli(m, 32, seed);
  Rng rng(stream_key(seed, 0x257au));
  const VectorXd u = d.entries.col(3);
  const double s = std::sqrt(sigma2 * 0.5);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    double z = 0.0;
    for (int r = 0; r < m; ++r) z += u(r) * (s * rng.next_gaussian());
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / draws;
  return make("z_statistic_mean", mean, 0.0, 0.01 * std::sqrt(sigma2));
}

CheckResult check_z_statistic_variance(std::uint64_t seed) {
  const double sigma2 = 1.7;
  const int m = 16;
  const Dictionary d = generate_bernoulli(m, 32, seed);
  Rng rng(stream_key(seed, 0x257bu));
  const VectorXd u = d.entries.col(3);
  const double s = std::sqrt(sigma2 * 0.5);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    double z = 0.0;
    for (int r = 0; r < m; ++r) z += u(r) * (s * rng.next_gaussian());
    sum += z;
    sum_sq += z * z;
  }
  const double var = sum_sq / draws - (sum / draws) * (sum / draws);
  return make("z_statistic_variance", var, sigma2 / 2.0, 0.03 * sigma2 / 2.0);
}

CheckResult check_chi_sq_expectation(std::uint64_t seed) {
  // E[exp(-alpha ||h||^2)] over complex-gaussian h against (1+alpha)^{-m}.
  const double alphas[] = {0.1, 1.0, 2.0};
  const int ms[] = {2, 4, 8};
  const int draws = 1000000;
  double worst = 0.0;
  for (int m : ms) {
    Rng rng(stream_key(seed, 0xc41u, m));
    double sums[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < draws; ++i) {
      double x = 0.0;
      for (int j = 0; j < m; ++j) x += std::norm(rng.next_cgaussian(1.0));
      for (int t = 0; t < 3; ++t) sums[t] += std::exp(-alphas[t] * x);
    }
    for (int t = 0; t < 3; ++t) {
      const double expect = chi_sq_exp(alphas[t], m);
      worst = std::max(worst, std::abs(sums[t] / draws - expect) / expect);
    }
  }
  return make_upper("chi_sq_exp_monte_carlo_rel_err", worst, 0.01);
}

CheckResult check_q_bound() {
  double worst = -1.0;
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    worst = std::max(worst, q_function(x) - std::exp(-x * x / 2.0));
  }
  return make_upper("q_function_chernoff_bound", worst, 0.0);
}

CheckResult check_noise_variance(std::uint64_t seed) {
  const double sigma2 = 0.8;
  const int m = 10;
  const Dictionary a = generate_bernoulli(m, m, 1);
  const SmcCodeword zero{m, {}, 0, 0};
  double sum_sq = 0.0;
  long count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ChannelRealization ch =
        sample_channel(m, ChannelMode::awgn, sigma2, seed, trial);
    const MatrixXcd y = transmit(zero, a, ch, seed, trial);
    sum_sq += y.squaredNorm();
    count += m * m;
  }
  return make("noise_entry_variance", sum_sq / count, sigma2, 0.03 * sigma2);
}

CheckResult check_noise_independence(std::uint64_t seed) {
  const double sigma2 = 0.8;
  const int m = 10;
  const Dictionary a = generate_bernoulli(m, m, 1);
  const SmcCodeword zero{m, {}, 0, 0};
  double sum_re = 0.0, sum_im = 0.0, sum_re_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
  long count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ChannelRealization ch =
        sample_channel(m, ChannelMode::awgn, sigma2, seed, trial);
    const MatrixXcd y = transmit(zero, a, ch, seed, trial);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        const double re = y(i, j).real(), im = y(i, j).imag();
        sum_re += re;
        sum_im += im;
        sum_re_im += re * im;
        sum_re2 += re * re;
        sum_im2 += im * im;
        ++count;
      }
    }
  }
  const double cov = sum_re_im / count - (sum_re / count) * (sum_im / count);
  const double var_re = sum_re2 / count - (sum_re / count) * (sum_re / count);
  const double var_im = sum_im2 / count - (sum_im / count) * (sum_im / count);
  const double corr = cov / std::sqrt(var_re * var_im);
  return make("noise_re_im_correlation", corr, 0.0, 0.02);
}

CheckResult check_transmit_oracle(std::uint64_t seed) {
  // Noiseless transmit against a naive triple-loop product.
  Rng rng(stream_key(seed, 0x7a60u));
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const Dictionary a = random_dictionary(rng);
    const int m = a.rows, n = a.cols;
    const int k = 1 + static_cast<int>(rng.next_u64() % std::min(2, n - 1));
    const int cap = payload_bits(n, k);
    const std::uint64_t p1 = draw_payload(rng, cap);
    const std::uint64_t p2 = draw_payload(rng, cap);
    const SmcCodeword cw = smc_encode(p1, p2, n, k);
    const std::uint64_t chseed = rng.next_u64();
    const ChannelRealization ch = sample_channel(m, ChannelMode::rayleigh, 0.0, chseed, 0);
    const MatrixXcd y = transmit(cw, a, ch, chseed, 0);

    MatrixXcd x_dense = MatrixXcd::Zero(n, n);
    for (const SmcEntry& e : cw.entries) x_dense(e.row, e.col) = e.value;
    MatrixXcd expected = MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        std::complex<double> s = 0.0;
        for (int p = 0; p < n; ++p) {
          for (int q = 0; q < n; ++q) {
            s += ch.h(i) * a.entries(i, p) * x_dense(p, q) * std::conj(a.entries(j, q));
          }
        }
        expected(i, j) = s;
      }
    }
    const double denom = expected.norm();
    if (denom == 0.0) continue;
    worst = std::max(worst, (y - expected).norm() / denom);
  }
  return make_upper("transmit_naive_product_rel_err", worst, 1e-12);
}

std::vector<CheckResult> run_validation(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(check_column_norms(seed));
  results.push_back(check_gram_quantization(seed));
  results.push_back(check_transmit_oracle(seed));
  results.push_back(check_eq2_identity(seed));
  results.push_back(check_eq4_sweep(seed));
  results.push_back(check_z_statistic_mean(seed));
  results.push_back(check_z_statistic_variance(seed));
  results.push_back(check_chi_sq_expectation(seed));
  results.push_back(check_q_bound());
  results.push_back(check_noise_variance(seed));
  results.push_back(check_noise_independence(seed));
  return results;
}

bool all_passed(std::span<const CheckResult> results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string format_report(std::span<const CheckResult> results) {
  std::string out;
  char buf[256];
  for (const CheckResult& r : results) {
    std::snprintf(buf, sizeof buf, "[%s] %-36s measured=%-14.6g expected=%-10.6g tol=%g\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.expected, r.tolerance);
    out += buf;
  }
  const long failed =
      std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; });
  out += failed == 0 ? "all checks passed\n"
                     : std::to_string(failed) + " check(s) failed\n";
  return out;
}

}  // namespace smc
