#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace smc {

// Spreading dictionary A (m x n, unit-norm columns). Immutable after
// construction; regeneration from (rows, cols, seed) is bit-identical.
struct Dictionary {
  int rows = 0;  // m, channel resources per dimension
  int cols = 0;  // n, codeword dimension
  std::uint64_t seed = 0;
  Eigen::MatrixXd entries;
};

// Entries +-1/sqrt(m), i.i.d. equiprobable, one counter-based draw per
// entry keyed on (seed, linear index). Columns are unit-norm by construction.
Dictionary generate_bernoulli(int m, int n, std::uint64_t seed);

// mu = max over i != j of |<a_i, a_j>|. Requires >= 2 columns.
double coherence(const Dictionary& d);

// Time-spreading dictionary B = A^H. Entries are real, so this is the plain
// transpose; rows of the result are unit-norm.
Dictionary time_spreading(const Dictionary& d);

// Every column norm within rel_tol of 1.
bool columns_unit_norm(const Dictionary& d, double rel_tol = 1e-12);

}  // namespace smc
