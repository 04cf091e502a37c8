#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "codec.hpp"
#include "dictionary.hpp"

namespace smc {

enum class DecodePath { primary, dual, fused };

// energy: sum over columns of |<u_j, y_k>|^2 (default, standard block
// matching statistic). signed_sum: |sum over columns of <u_j, y_k>|, the
// literal correlation used by the reliability derivation; kept behind a
// flag for bound-replication studies.
enum class BlockScoreRule { energy, signed_sum };

struct DecodeResult {
  std::vector<std::pair<int, int>> pairs;  // (row, col), recovery order
  std::uint64_t payload1 = 0;
  std::uint64_t payload2 = 0;
  std::vector<double> winner_scores;     // per-iteration winning block score
  std::vector<double> runner_up_scores;  // per-iteration second best
  DecodePath path = DecodePath::primary;
  bool ok = false;  // exactly K pairs recovered
};

// y = vec(Y^H): column-stacking of the conjugate transpose.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& y);

// Energy of Y's columns captured by block j: with u_j = (h . a_j)/|h . a_j|,
// sum_k |<u_j, Y[:,k]>|^2. Never materializes the m^2 x nm expansion.
double block_score(const Eigen::MatrixXcd& y, const Dictionary& a, const Eigen::VectorXcd& h,
                   int j, BlockScoreRule rule = BlockScoreRule::energy);

// Greedy block matching pursuit, K iterations, no reselection, closed-form
// per-column projection for the residual update (no matrix inversion).
DecodeResult block_mp_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                             const Eigen::VectorXcd& h, int k,
                             BlockScoreRule rule = BlockScoreRule::energy);

// Same algorithm on Y^H with the user roles exchanged (column support is
// selected block-wise, row support recovered per block). With B = A^H both
// paths share the one dictionary.
DecodeResult dual_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                         const Eigen::VectorXcd& h, int k,
                         BlockScoreRule rule = BlockScoreRule::energy);

// Runs primary and dual; on disagreement keeps the path with the larger
// total winning score (ties go to primary).
DecodeResult fused_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                          const Eigen::VectorXcd& h, int k,
                          BlockScoreRule rule = BlockScoreRule::energy);

// Exhaustive minimum-distance decoding over all C(n,K)^2 codewords; ties
// broken by smallest (payload1, payload2). Refuses above 10^6 candidates.
DecodeResult ml_oracle_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                              const Eigen::VectorXcd& h, int k);

// Multi-view primary decode: block scores summed across views, residuals
// kept per view. Single view reduces exactly to block_mp_decode.
DecodeResult block_mp_decode_views(const std::vector<ReceivedFrame>& views, const Dictionary& a,
                                   int k, BlockScoreRule rule = BlockScoreRule::energy);

struct SvcDecodeResult {
  std::vector<int> support;  // sorted
  std::uint64_t payload = 0;
  std::vector<double> winner_scores;
  bool ok = false;
};

// Matching pursuit with channel-weighted normalized columns, K iterations,
// no reselection.
SvcDecodeResult svc_mp_decode(const Eigen::VectorXcd& y, const Dictionary& a,
                              const Eigen::VectorXcd& h, int k);

}  // namespace smc
