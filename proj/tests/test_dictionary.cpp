#include <doctest.h>

#include <cmath>

#include "dictionary.hpp"
#include "oracles.hpp"

using namespace smc;

TEST_SUITE("dictionary") {

TEST_CASE("single entry has magnitude one") {
  const Dictionary d = generate_bernoulli(1, 1, 0);
  CHECK(std::abs(std::abs(d.entries(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("entries are +-1/sqrt(m) and columns unit norm") {
  const Dictionary d = generate_bernoulli(4, 8, 7);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 8; ++j) CHECK(std::abs(d.entries(i, j)) == doctest::Approx(0.5).epsilon(1e-15));
  }
  CHECK(columns_unit_norm(d));
}

TEST_CASE("regeneration is bit-identical") {
  const Dictionary a = generate_bernoulli(4, 8, 7);
  const Dictionary b = generate_bernoulli(4, 8, 7);
  CHECK(a.entries == b.entries);
  const Dictionary c = generate_bernoulli(4, 8, 8);
  CHECK(a.entries != c.entries);
}

TEST_CASE("zero dimensions rejected") {
  CHECK_THROWS_AS(generate_bernoulli(0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_bernoulli(4, 0, 1), std::invalid_argument);
}

TEST_CASE("coherence of orthonormal columns is zero") {
  Dictionary d{4, 4, 0, Eigen::MatrixXd::Identity(4, 4)};
  CHECK(coherence(d) == doctest::Approx(0.0));
}

TEST_CASE("coherence of duplicated column is one") {
  Dictionary d{4, 2, 0, Eigen::MatrixXd::Zero(4, 2)};
  d.entries.col(0).setConstant(0.5);
  d.entries.col(1).setConstant(0.5);
  CHECK(coherence(d) == doctest::Approx(1.0));
}

TEST_CASE("coherence needs two columns") {
  const Dictionary d = generate_bernoulli(4, 1, 3);
  CHECK_THROWS_AS(coherence(d), std::domain_error);
}

TEST_CASE("coherence matches the brute-force pairwise oracle") {
  const Dictionary d = generate_bernoulli(16, 32, 1);
  CHECK(coherence(d) == oracle::brute_force_coherence(d.entries));
}

TEST_CASE("coherence in [0,1] and gram entries quantized to 1/m") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dictionary d = generate_bernoulli(8, 16, seed);
    const double mu = coherence(d);
    CHECK(mu >= 0.0);
    CHECK(mu <= 1.0);
    for (int i = 0; i < d.cols; ++i) {
      CHECK(std::abs(d.entries.col(i).norm() - 1.0) < 1e-12);
      for (int j = i + 1; j < d.cols; ++j) {
        const double scaled = d.entries.col(i).dot(d.entries.col(j)) * d.rows;
        CHECK(std::abs(scaled - std::round(scaled)) < 1e-12);
      }
    }
  }
}

TEST_CASE("time spreading is the transpose for real entries") {
  const Dictionary d = generate_bernoulli(4, 8, 7);
  const Dictionary b = time_spreading(d);
  CHECK(b.rows == 8);
  CHECK(b.cols == 4);
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j) CHECK(b.entries(j, i) == d.entries(i, j));
  }
  // rows of B are unit norm
  for (int i = 0; i < b.rows; ++i) {
    CHECK(b.entries.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("time spreading applied twice is the identity") {
  const Dictionary d = generate_bernoulli(5, 9, 21);
  const Dictionary dd = time_spreading(time_spreading(d));
  CHECK(dd.entries == d.entries);
  CHECK(dd.rows == d.rows);
  CHECK(dd.cols == d.cols);
}

}  // TEST_SUITE
