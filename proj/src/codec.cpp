#include "codec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace smc {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

int payload_bits(int n, int k) {
  const std::uint64_t c = binomial(n, k);
  if (c == 0) throw std::invalid_argument("payload_bits: k > n");
  return std::bit_width(c) - 1;
}

std::vector<int> rank_to_subset(std::uint64_t rank, int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("rank_to_subset: bad dimensions");
  if (rank >= binomial(n, k)) throw std::out_of_range("rank_to_subset: rank out of range");
  std::vector<int> support;
  support.reserve(k);
  int v = 0;
  for (int t = k; t >= 1; --t) {
    for (;; ++v) {
      const std::uint64_t c = binomial(n - 1 - v, t - 1);
      if (rank < c) {
        support.push_back(v++);
        break;
      }
      rank -= c;
    }
  }
  return support;
}

std::uint64_t subset_to_rank(std::span<const int> support, int n, int k) {
  if (static_cast<int>(support.size()) != k) {
    throw std::invalid_argument("subset_to_rank: support size != k");
  }
  int prev = -1;
  for (int s : support) {
    if (s <= prev || s >= n) {
      throw std::invalid_argument("subset_to_rank: support not strictly increasing in [0, n)");
    }
    prev = s;
  }
  std::uint64_t rank = 0;
  prev = -1;
  for (int t = 0; t < k; ++t) {
    for (int v = prev + 1; v < support[t]; ++v) rank += binomial(n - 1 - v, k - 1 - t);
    prev = support[t];
  }
  return rank;
}

namespace {

// Valid payloads are ranks below C(n,k). Values at or above 2^capacity are
// never produced by the bit mapping but still denote valid codewords.
void check_payload(std::uint64_t payload, int n, int k) {
  const std::uint64_t c = binomial(n, k);
  if (payload >= c) {
    throw std::invalid_argument("payload " + std::to_string(payload) +
                                " is not a valid rank: C(" + std::to_string(n) + "," +
                                std::to_string(k) + ") = " + std::to_string(c));
  }
}

}  // namespace

SvcCodeword svc_encode(std::uint64_t payload, int n, int k) {
  check_payload(payload, n, k);
  SvcCodeword cw;
  cw.length = n;
  cw.support = rank_to_subset(payload, n, k);
  cw.values.assign(cw.support.size(), 1.0);
  return cw;
}

SmcCodeword smc_encode(std::uint64_t payload1, std::uint64_t payload2, int n, int k) {
  check_payload(payload1, n, k);
  check_payload(payload2, n, k);
  const std::vector<int> rows = rank_to_subset(payload1, n, k);
  const std::vector<int> cols = rank_to_subset(payload2, n, k);
  SmcCodeword cw;
  cw.dim = n;
  cw.payload1 = payload1;
  cw.payload2 = payload2;
  cw.entries.reserve(k);
  for (int t = 0; t < k; ++t) cw.entries.push_back({rows[t], cols[t], 1.0});
  return cw;
}

std::pair<std::uint64_t, std::uint64_t> payloads_from_pairs(
    std::span<const std::pair<int, int>> pairs, int n, int k) {
  std::vector<int> rows, cols;
  rows.reserve(pairs.size());
  cols.reserve(pairs.size());
  for (const auto& [r, c] : pairs) {
    rows.push_back(r);
    cols.push_back(c);
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  return {subset_to_rank(rows, n, k), subset_to_rank(cols, n, k)};
}

std::string payload_to_hex(std::uint64_t payload, int bits) {
  int nibbles = std::max(1, (bits + 3) / 4);
  while (nibbles < 16 && (payload >> (4 * nibbles)) != 0) ++nibbles;
  std::string out(nibbles, '0');
  for (int i = nibbles - 1; i >= 0; --i, payload >>= 4) {
    out[i] = "0123456789abcdef"[payload & 0xf];
  }
  return out;
}

std::uint64_t hex_to_payload(std::string_view hex, int bits) {
  if (hex.empty() || hex.size() > 16) throw std::invalid_argument("hex payload: bad length");
  std::uint64_t v = 0;
  for (char c : hex) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw std::invalid_argument("hex payload: invalid character");
    v = (v << 4) | static_cast<std::uint64_t>(digit);
  }
  if (bits < 64 && (v >> bits)) {
    throw std::invalid_argument("hex payload: value exceeds " + std::to_string(bits) + " bits");
  }
  return v;
}

}  // namespace smc
