#include "dictionary.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace smc {

Dictionary generate_bernoulli(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("generate_bernoulli: dimensions must be positive");
  }
  Dictionary d{m, n, seed, Eigen::MatrixXd(m, n)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const std::uint64_t base = stream_key(seed, stream::dictionary);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const std::uint64_t bit = mix64(base ^ (static_cast<std::uint64_t>(i) * n + j)) >> 63;
      d.entries(i, j) = bit ? scale : -scale;
    }
  }
  return d;
}

double coherence(const Dictionary& d) {
  if (d.cols < 2) {
    throw std::domain_error("coherence: needs at least two columns");
  }
  const Eigen::MatrixXd gram = d.entries.transpose() * d.entries;
  double mu = 0.0;
  for (int i = 0; i < d.cols; ++i) {
    for (int j = i + 1; j < d.cols; ++j) {
      mu = std::max(mu, std::abs(gram(i, j)));
    }
  }
  return mu;
}

Dictionary time_spreading(const Dictionary& d) {
  return Dictionary{d.cols, d.rows, d.seed, d.entries.transpose()};
}

bool columns_unit_norm(const Dictionary& d, double rel_tol) {
  for (int j = 0; j < d.cols; ++j) {
    if (std::abs(d.entries.col(j).norm() - 1.0) > rel_tol) return false;
  }
  return true;
}

}  // namespace smc
