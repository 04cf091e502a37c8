#pragma once

#include <Eigen/Dense>
#include <complex>

#include "codec.hpp"
#include "dictionary.hpp"

namespace smc {

// exact_expectation keeps the +1 from the chi-squared expectation
// E[exp(-a x)] = (1+a)^{-m} and is the default; paper_literal evaluates the
// published closed form, which drops the +1 and can leave [0, 1], so both
// variants clamp. Every output records which variant produced it.
enum class BoundVariant { exact_expectation, paper_literal };

struct BoundParams {
  int m = 0;
  int n = 0;
  int k = 0;
  double mu = 0.0;     // dictionary coherence, in [0, 1)
  double s_sum = 0.0;  // sum of sparse values; K for unit values
  double sigma2 = 0.0;
  BoundVariant variant = BoundVariant::exact_expectation;
};

// E[exp(-alpha x)] for x a sum of m unit-mean exponentials: (1+alpha)^{-m}.
double chi_sq_exp(double alpha, int m);

// Per-block success lower bound, clamped to [0, 1]; 1 in the noiseless limit.
double block_success_prob(const BoundParams& p);

// 1 - (1 - pA - pC)^{Kn}, the closed-form BLER upper bound.
double bler_upper_bound(const BoundParams& p);

// Block correlation beta_{i,j}: m * <h.a_i, h.a_j> / (|h.a_i| |h.a_j|),
// the sum of the m identical per-column normalized correlations between
// blocks i and j of the expanded dictionary. Equals m for i = j and m*mu in
// magnitude at the worst pair when h is flat.
std::complex<double> block_correlation(const Dictionary& a, const Eigen::VectorXcd& h, int i,
                                       int j);

// Gaussian tail probability Q(x).
double q_function(double x);

struct Efficiency {
  int payload_bits = 0;  // total information bits per frame
  int channel_uses = 0;
  double bits_per_use = 0.0;
};

// svc: floor(log2 C(n,K)) bits over m uses (one user).
// smc: twice that over m^2 uses (two users jointly).
Efficiency efficiency(int n, int k, int m, Scheme scheme);

}  // namespace smc
