#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "codec.hpp"
#include "dictionary.hpp"

namespace smc {

// rayleigh: h_i ~ CN(0,1), complex noise, variance sigma2 per entry.
// awgn: h = all-ones, complex noise.
// real_gaussian: h_i ~ N(0,1) real, real noise with variance sigma2/2 per
// entry (the real half of the complex model; block/noise projections then
// come out N(0, sigma2/2), which is what the reliability identities assume).
enum class ChannelMode { rayleigh, awgn, real_gaussian };

struct ChannelRealization {
  Eigen::VectorXcd h;
  double sigma2 = 0.0;
  ChannelMode mode = ChannelMode::rayleigh;
};

// Frame observed by the receiver; decoding assumes known CSI.
struct ReceivedFrame {
  Eigen::MatrixXcd y;
  ChannelRealization channel;
};

// Fading vector of length m, deterministic in (seed, trial, lane).
Eigen::VectorXcd sample_fading(int m, ChannelMode mode, std::uint64_t seed,
                               std::uint64_t trial, std::uint64_t lane = 0);

ChannelRealization sample_channel(int m, ChannelMode mode, double sigma2, std::uint64_t seed,
                                  std::uint64_t trial, std::uint64_t lane = 0);

// Y = diag(h) A X A^H + N. Noise is deterministic in (seed, trial, lane).
Eigen::MatrixXcd transmit(const SmcCodeword& x, const Dictionary& a,
                          const ChannelRealization& ch, std::uint64_t seed, std::uint64_t trial,
                          std::uint64_t lane = 0);

// y = diag(h) A s + n, the SVC baseline observation.
Eigen::VectorXcd transmit_svc(const SvcCodeword& s, const Dictionary& a,
                              const ChannelRealization& ch, std::uint64_t seed,
                              std::uint64_t trial, std::uint64_t lane = 0);

// sigma^2 giving the requested per-entry receive SNR under unit-power fading
// and unit sparse values: P_rx = K/m^2 for SMC (entries of A X A^H), K/m for
// the SVC baseline (entries of A s), with +-1/sqrt(m) dictionaries.
double snr_to_sigma2(double snr_db, int m, int k, Scheme scheme = Scheme::smc);
double snr_to_sigma2(double snr_db, const Dictionary& a, int k, Scheme scheme = Scheme::smc);

}  // namespace smc
