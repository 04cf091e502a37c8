#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smc {

enum class Scheme { svc, smc, smc_dual, smc_fused };

// C(n, k). Throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

// Payload capacity of one user: floor(log2 C(n, k)) bits.
int payload_bits(int n, int k);

// Lexicographic unranking of K-subsets of [0, n); inverse of subset_to_rank.
std::vector<int> rank_to_subset(std::uint64_t rank, int n, int k);
std::uint64_t subset_to_rank(std::span<const int> support, int n, int k);

struct SvcCodeword {
  int length = 0;
  std::vector<int> support;    // sorted, strictly increasing
  std::vector<double> values;  // unit magnitude, fixed at 1.0
};

struct SmcEntry {
  int row = 0;
  int col = 0;
  double value = 1.0;
};

// Sparse n x n matrix holding two users' payloads: sorted row support from
// payload1 paired in rank order with sorted column support from payload2.
struct SmcCodeword {
  int dim = 0;
  std::vector<SmcEntry> entries;
  std::uint64_t payload1 = 0;
  std::uint64_t payload2 = 0;
};

SvcCodeword svc_encode(std::uint64_t payload, int n, int k);
SmcCodeword smc_encode(std::uint64_t payload1, std::uint64_t payload2, int n, int k);

// Payloads encoded by a set of recovered (row, col) pairs; the inverse of
// smc_encode up to pair order (only the two supports matter).
std::pair<std::uint64_t, std::uint64_t> payloads_from_pairs(
    std::span<const std::pair<int, int>> pairs, int n, int k);

// Hex payload form used at CLI boundaries; most-significant-bit first.
std::string payload_to_hex(std::uint64_t payload, int bits);
std::uint64_t hex_to_payload(std::string_view hex, int bits);

}  // namespace smc
