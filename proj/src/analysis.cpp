#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smc {

namespace {

void check_params(const BoundParams& p) {
  if (p.m < 1 || p.n < 1 || p.k < 0) throw std::invalid_argument("bound: bad dimensions");
  if (p.mu < 0.0 || p.mu >= 1.0) throw std::invalid_argument("bound: mu must be in [0, 1)");
  if (p.sigma2 < 0.0) throw std::invalid_argument("bound: sigma2 must be >= 0");
  if (p.s_sum < 0.0) throw std::invalid_argument("bound: s_sum must be >= 0");
}

// Success probability of one greedy comparison: 1 - pA - pC clamped into
// [0, 1], with A the matched-vs-mismatched margin exponent and C the
// matched-magnitude exponent, beta_t = m, beta_i = m*mu.
double comparison_success(const BoundParams& p) {
  if (p.sigma2 <= 0.0) return 1.0;
  const double beta_t = static_cast<double>(p.m);
  const double beta_i = p.m * p.mu;
  const double s2 = p.s_sum * p.s_sum;
  const double a = (beta_t - beta_i) * (beta_t - beta_i) * s2 / (2.0 * p.sigma2);
  const double c = beta_t * beta_t * s2 / p.sigma2;
  double pa, pc;
  if (p.variant == BoundVariant::exact_expectation) {
    pa = chi_sq_exp(a, p.m);
    pc = chi_sq_exp(c, p.m);
  } else {
    // Literal published form: diverges for exponents below 1.
    pa = std::pow(a, -p.m);
    pc = std::pow(c, -p.m);
  }
  return std::clamp(1.0 - pa - pc, 0.0, 1.0);
}

}  // namespace

double chi_sq_exp(double alpha, int m) {
  if (alpha < 0.0 || m < 1) throw std::invalid_argument("chi_sq_exp: alpha >= 0, m >= 1");
  return std::pow(1.0 + alpha, -m);
}

double block_success_prob(const BoundParams& p) {
  check_params(p);
  return std::pow(comparison_success(p), p.n);
}

double bler_upper_bound(const BoundParams& p) {
  check_params(p);
  if (p.k == 0) return 0.0;
  return 1.0 - std::pow(comparison_success(p), static_cast<double>(p.k) * p.n);
}

std::complex<double> block_correlation(const Dictionary& a, const Eigen::VectorXcd& h, int i,
                                       int j) {
  if (i < 0 || i >= a.cols || j < 0 || j >= a.cols) {
    throw std::invalid_argument("block_correlation: index out of range");
  }
  if (h.size() != a.rows) throw std::invalid_argument("block_correlation: bad channel length");
  const Eigen::VectorXcd wi = h.cwiseProduct(a.entries.col(i).cast<std::complex<double>>());
  const Eigen::VectorXcd wj = h.cwiseProduct(a.entries.col(j).cast<std::complex<double>>());
  const double ni = wi.norm();
  const double nj = wj.norm();
  if (ni <= 0.0 || nj <= 0.0) throw std::domain_error("block_correlation: degenerate channel");
  return static_cast<double>(a.rows) * wi.dot(wj) / (ni * nj);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

Efficiency efficiency(int n, int k, int m, Scheme scheme) {
  if (m < 1) throw std::invalid_argument("efficiency: m must be positive");
  const int per_user = payload_bits(n, k);
  Efficiency e;
  if (scheme == Scheme::svc) {
    e.payload_bits = per_user;
    e.channel_uses = m;
  } else {
    e.payload_bits = 2 * per_user;
    e.channel_uses = m * m;
  }
  e.bits_per_use = static_cast<double>(e.payload_bits) / e.channel_uses;
  return e;
}

}  // namespace smc
