#include "channel.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace smc {

Eigen::VectorXcd sample_fading(int m, ChannelMode mode, std::uint64_t seed,
                               std::uint64_t trial, std::uint64_t lane) {
  if (m < 1) throw std::invalid_argument("sample_fading: m must be positive");
  Eigen::VectorXcd h(m);
  switch (mode) {
    case ChannelMode::awgn:
      h.setOnes();
      break;
    case ChannelMode::rayleigh: {
      Rng rng(stream_key(seed, trial, stream::fading, lane));
      for (int i = 0; i < m; ++i) h(i) = rng.next_cgaussian(1.0);
      break;
    }
    case ChannelMode::real_gaussian: {
      Rng rng(stream_key(seed, trial, stream::fading, lane));
      for (int i = 0; i < m; ++i) h(i) = rng.next_gaussian();
      break;
    }
  }
  return h;
}

ChannelRealization sample_channel(int m, ChannelMode mode, double sigma2, std::uint64_t seed,
                                  std::uint64_t trial, std::uint64_t lane) {
  if (sigma2 < 0.0) throw std::invalid_argument("sample_channel: sigma2 must be >= 0");
  return ChannelRealization{sample_fading(m, mode, seed, trial, lane), sigma2, mode};
}

namespace {

void add_noise(Eigen::Ref<Eigen::MatrixXcd> y, ChannelMode mode, double sigma2,
               std::uint64_t seed, std::uint64_t trial, std::uint64_t lane) {
  if (sigma2 <= 0.0) return;
  Rng rng(stream_key(seed, trial, stream::noise, lane));
  if (mode == ChannelMode::real_gaussian) {
    const double s = std::sqrt(sigma2 * 0.5);
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, j) += s * rng.next_gaussian();
    }
  } else {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, j) += rng.next_cgaussian(sigma2);
    }
  }
}

}  // namespace

Eigen::MatrixXcd transmit(const SmcCodeword& x, const Dictionary& a,
                          const ChannelRealization& ch, std::uint64_t seed, std::uint64_t trial,
                          std::uint64_t lane) {
  if (x.dim != a.cols) throw std::invalid_argument("transmit: codeword dim != dictionary cols");
  if (ch.h.size() != a.rows) throw std::invalid_argument("transmit: channel length != rows");
  const int m = a.rows;
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(m, m);
  for (const SmcEntry& e : x.entries) {
    if (e.row < 0 || e.row >= x.dim || e.col < 0 || e.col >= x.dim) {
      throw std::invalid_argument("transmit: entry index out of range");
    }
    const Eigen::VectorXcd u = ch.h.cwiseProduct(a.entries.col(e.row).cast<std::complex<double>>());
    // A^H row c is conj(a_c)^T; entries are real.
    y.noalias() += (e.value * u) * a.entries.col(e.col).transpose().cast<std::complex<double>>();
  }
  add_noise(y, ch.mode, ch.sigma2, seed, trial, lane);
  return y;
}

Eigen::VectorXcd transmit_svc(const SvcCodeword& s, const Dictionary& a,
                              const ChannelRealization& ch, std::uint64_t seed,
                              std::uint64_t trial, std::uint64_t lane) {
  if (s.length != a.cols) throw std::invalid_argument("transmit_svc: length != dictionary cols");
  if (ch.h.size() != a.rows) throw std::invalid_argument("transmit_svc: channel length != rows");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(a.rows);
  for (std::size_t t = 0; t < s.support.size(); ++t) {
    y += s.values[t] * a.entries.col(s.support[t]).cast<std::complex<double>>();
  }
  y = ch.h.cwiseProduct(y);
  Eigen::Map<Eigen::MatrixXcd> as_matrix(y.data(), y.size(), 1);
  add_noise(as_matrix, ch.mode, ch.sigma2, seed, trial, lane);
  return y;
}

double snr_to_sigma2(double snr_db, int m, int k, Scheme scheme) {
  if (m < 1) throw std::invalid_argument("snr_to_sigma2: m must be positive");
  const double md = static_cast<double>(m);
  const double p_rx = scheme == Scheme::svc ? k / md : k / (md * md);
  return p_rx / std::pow(10.0, snr_db / 10.0);
}

double snr_to_sigma2(double snr_db, const Dictionary& a, int k, Scheme scheme) {
  return snr_to_sigma2(snr_db, a.rows, k, scheme);
}

}  // namespace smc
