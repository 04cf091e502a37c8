#include "decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace smc {

namespace {

using Eigen::MatrixXcd;
using Eigen::RowVectorXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

MatrixXcd to_complex(const Eigen::MatrixXd& m) { return m.cast<cplx>(); }

// One receiver view prepared for the greedy pass. `left` holds the block
// signature vectors (one column per block); `right` holds the signatures
// used to recover the partner index from the estimated block row.
struct View {
  MatrixXcd residual;
  MatrixXcd left;
  VectorXd left_norm2;
  MatrixXcd right;
  VectorXd right_norm2;
};

struct CoreResult {
  std::vector<int> blocks;
  std::vector<int> partners;
  std::vector<double> winner_scores;
  std::vector<double> runner_up_scores;
  bool ok = false;
};

// Greedy block selection across views. Residual update is the closed-form
// per-column projection onto the selected block signature; the expanded
// blocks have disjoint column supports, so the least-squares solve reduces
// to one scalar division per column and no matrix is ever inverted.
CoreResult greedy_core(std::vector<View>& views, int n, int k, BlockScoreRule rule) {
  CoreResult res;
  std::vector<char> used(n, 0);
  std::vector<VectorXd> partner_scores;
  for (int t = 0; t < k; ++t) {
    VectorXd scores = VectorXd::Zero(n);
    std::vector<MatrixXcd> correlations;
    correlations.reserve(views.size());
    for (View& v : views) {
      MatrixXcd corr = v.left.adjoint() * v.residual;  // n x m
      if (rule == BlockScoreRule::energy) {
        scores += (corr.rowwise().squaredNorm().array() /
                   v.left_norm2.array().max(1e-300))
                      .matrix();
      } else {
        scores += (corr.rowwise().sum().cwiseAbs2().array() /
                   v.left_norm2.array().max(1e-300))
                      .matrix();
      }
      correlations.push_back(std::move(corr));
    }
    int best = -1, second = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      bool selectable = false;
      for (const View& v : views) selectable = selectable || v.left_norm2(j) > 0.0;
      if (!selectable) continue;
      if (best < 0 || scores(j) > scores(best)) {
        second = best;
        best = j;
      } else if (second < 0 || scores(j) > scores(second)) {
        second = j;
      }
    }
    if (best < 0) break;  // fewer than K selectable blocks
    used[best] = 1;
    res.blocks.push_back(best);
    res.winner_scores.push_back(scores(best));
    res.runner_up_scores.push_back(second >= 0 ? scores(second) : 0.0);

    VectorXd pscore = VectorXd::Zero(n);
    for (std::size_t vi = 0; vi < views.size(); ++vi) {
      View& v = views[vi];
      if (v.left_norm2(best) <= 0.0) continue;
      const RowVectorXcd g = correlations[vi].row(best) / v.left_norm2(best);
      v.residual.noalias() -= v.left.col(best) * g;
      const VectorXcd proj = v.right.adjoint() * g.transpose();
      pscore += (proj.cwiseAbs2().array() / v.right_norm2.array().max(1e-300)).matrix();
    }
    partner_scores.push_back(std::move(pscore));
  }

  // Partner assignment. Normally each iteration just takes its argmax; if
  // two iterations claim the same index, the higher-scoring one keeps it and
  // the other falls back to its best remaining candidate.
  const int kt = static_cast<int>(res.blocks.size());
  std::vector<int> order(kt);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return partner_scores[a].maxCoeff() > partner_scores[b].maxCoeff();
  });
  std::vector<char> taken(n, 0);
  res.partners.assign(kt, -1);
  for (int t : order) {
    int pick = -1;
    for (int c = 0; c < n; ++c) {
      if (taken[c]) continue;
      if (pick < 0 || partner_scores[t](c) > partner_scores[t](pick)) pick = c;
    }
    res.partners[t] = pick;
    if (pick >= 0) taken[pick] = 1;
  }
  res.ok = kt == k && std::none_of(res.partners.begin(), res.partners.end(),
                                   [](int p) { return p < 0; });
  return res;
}

View make_primary_view(const MatrixXcd& y, const Dictionary& a, const VectorXcd& h) {
  if (y.rows() != y.cols()) throw std::invalid_argument("decode: Y must be square");
  if (y.rows() != a.rows) throw std::invalid_argument("decode: Y size != dictionary rows");
  if (h.size() != a.rows) throw std::invalid_argument("decode: channel length != rows");
  View v;
  v.residual = y;
  v.left = h.asDiagonal() * to_complex(a.entries);
  v.left_norm2 = v.left.colwise().squaredNorm();
  // Partner signature for column c is conj(a_c), so the recovery statistic
  // is |sum_k a_c[k] g[k]|, the correlation of g with row c of B = A^H.
  v.right = to_complex(a.entries).conjugate();
  v.right_norm2 = v.right.colwise().squaredNorm();
  return v;
}

View make_dual_view(const MatrixXcd& y, const Dictionary& a, const VectorXcd& h) {
  if (y.rows() != y.cols()) throw std::invalid_argument("decode: Y must be square");
  if (y.rows() != a.rows) throw std::invalid_argument("decode: Y size != dictionary rows");
  if (h.size() != a.rows) throw std::invalid_argument("decode: channel length != rows");
  // Y^H = A X^H (diag(h) A)^H: blocks select the column support with plain
  // dictionary columns; the channel weight moves into the row estimate.
  View v;
  v.residual = y.adjoint();
  v.left = to_complex(a.entries);
  v.left_norm2 = v.left.colwise().squaredNorm();
  v.right = (h.asDiagonal() * to_complex(a.entries)).conjugate();
  v.right_norm2 = v.right.colwise().squaredNorm();
  return v;
}

DecodeResult finish(CoreResult&& core, const Dictionary& a, int k, bool dual) {
  DecodeResult r;
  r.path = dual ? DecodePath::dual : DecodePath::primary;
  r.winner_scores = std::move(core.winner_scores);
  r.runner_up_scores = std::move(core.runner_up_scores);
  r.ok = core.ok;
  for (std::size_t t = 0; t < core.blocks.size(); ++t) {
    const int row = dual ? core.partners[t] : core.blocks[t];
    const int col = dual ? core.blocks[t] : core.partners[t];
    r.pairs.emplace_back(row, col);
  }
  if (r.ok) {
    const auto [p1, p2] = payloads_from_pairs(r.pairs, a.cols, k);
    r.payload1 = p1;
    r.payload2 = p2;
  }
  return r;
}

}  // namespace

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& y) {
  if (y.rows() != y.cols()) throw std::invalid_argument("vectorize: matrix must be square");
  const Eigen::Index m = y.rows();
  Eigen::VectorXcd out(m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.segment(i * m, m) = y.row(i).conjugate().transpose();
  }
  return out;
}

double block_score(const Eigen::MatrixXcd& y, const Dictionary& a, const Eigen::VectorXcd& h,
                   int j, BlockScoreRule rule) {
  if (j < 0 || j >= a.cols) throw std::invalid_argument("block_score: block index out of range");
  if (h.size() != a.rows) throw std::invalid_argument("block_score: channel length != rows");
  const VectorXcd w = h.cwiseProduct(a.entries.col(j).cast<cplx>());
  const double norm2 = w.squaredNorm();
  if (norm2 <= 0.0) throw std::domain_error("block_score: degenerate channel, |h . a_j| = 0");
  const RowVectorXcd corr = w.adjoint() * y;
  if (rule == BlockScoreRule::energy) return corr.squaredNorm() / norm2;
  return std::abs(corr.sum()) / std::sqrt(norm2);
}

DecodeResult block_mp_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                             const Eigen::VectorXcd& h, int k, BlockScoreRule rule) {
  if (k < 1) throw std::invalid_argument("decode: k must be >= 1");
  std::vector<View> views{make_primary_view(y, a, h)};
  return finish(greedy_core(views, a.cols, k, rule), a, k, false);
}

DecodeResult dual_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                         const Eigen::VectorXcd& h, int k, BlockScoreRule rule) {
  if (k < 1) throw std::invalid_argument("decode: k must be >= 1");
  std::vector<View> views{make_dual_view(y, a, h)};
  return finish(greedy_core(views, a.cols, k, rule), a, k, true);
}

DecodeResult fused_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                          const Eigen::VectorXcd& h, int k, BlockScoreRule rule) {
  DecodeResult primary = block_mp_decode(y, a, h, k, rule);
  DecodeResult dual = dual_decode(y, a, h, k, rule);
  const double sp = std::accumulate(primary.winner_scores.begin(), primary.winner_scores.end(), 0.0);
  const double sd = std::accumulate(dual.winner_scores.begin(), dual.winner_scores.end(), 0.0);
  const bool agree = primary.ok && dual.ok && primary.payload1 == dual.payload1 &&
                     primary.payload2 == dual.payload2;
  DecodeResult out;
  if (!dual.ok || agree) out = std::move(primary);
  else if (!primary.ok) out = std::move(dual);
  else out = sp >= sd ? std::move(primary) : std::move(dual);
  out.path = DecodePath::fused;
  return out;
}

DecodeResult block_mp_decode_views(const std::vector<ReceivedFrame>& views, const Dictionary& a,
                                   int k, BlockScoreRule rule) {
  if (views.empty()) throw std::invalid_argument("decode: empty view list");
  if (k < 1) throw std::invalid_argument("decode: k must be >= 1");
  std::vector<View> prepared;
  prepared.reserve(views.size());
  for (const ReceivedFrame& f : views) prepared.push_back(make_primary_view(f.y, a, f.channel.h));
  return finish(greedy_core(prepared, a.cols, k, rule), a, k, false);
}

DecodeResult ml_oracle_decode(const Eigen::MatrixXcd& y, const Dictionary& a,
                              const Eigen::VectorXcd& h, int k) {
  if (k < 1) throw std::invalid_argument("ml_oracle_decode: k must be >= 1");
  if (y.rows() != y.cols() || y.rows() != a.rows) {
    throw std::invalid_argument("ml_oracle_decode: dimension mismatch");
  }
  if (h.size() != a.rows) throw std::invalid_argument("ml_oracle_decode: channel length != rows");
  const int n = a.cols;
  if (k > n) throw std::invalid_argument("ml_oracle_decode: k > n");
  const std::uint64_t count = binomial(n, k);
  if (count > 1000u) {  // C(n,k)^2 candidates capped at 10^6
    throw std::length_error("ml_oracle_decode: candidate count exceeds 10^6 guard");
  }

  const MatrixXcd ha = h.asDiagonal() * to_complex(a.entries);
  const MatrixXcd corr_table = ha.adjoint() * y * to_complex(a.entries);
  const MatrixXcd gu = ha.adjoint() * ha;
  const Eigen::MatrixXd gv = a.entries.transpose() * a.entries;

  std::vector<std::vector<int>> subsets(count);
  for (std::uint64_t r = 0; r < count; ++r) subsets[r] = rank_to_subset(r, n, k);

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best1 = 0, best2 = 0;
  for (std::uint64_t r1 = 0; r1 < count; ++r1) {
    const std::vector<int>& rows = subsets[r1];
    for (std::uint64_t r2 = 0; r2 < count; ++r2) {
      const std::vector<int>& cols = subsets[r2];
      // ||Y - S||_F^2 - ||Y||_F^2 = -2 Re<S, Y> + ||S||^2 with
      // S = sum_t u_{rows[t]} v_{cols[t]}^H.
      cplx sy = 0.0;
      double ss = 0.0;
      for (int i = 0; i < k; ++i) {
        sy += corr_table(rows[i], cols[i]);
        for (int j = 0; j < k; ++j) {
          ss += (gu(rows[i], rows[j]) * gv(cols[j], cols[i])).real();
        }
      }
      const double objective = ss - 2.0 * sy.real();
      if (objective < best) {
        best = objective;
        best1 = r1;
        best2 = r2;
      }
    }
  }
  DecodeResult r;
  r.path = DecodePath::primary;
  r.ok = true;
  r.payload1 = best1;
  r.payload2 = best2;
  const std::vector<int> rows = subsets[best1];
  const std::vector<int> cols = subsets[best2];
  for (int i = 0; i < k; ++i) r.pairs.emplace_back(rows[i], cols[i]);
  return r;
}

SvcDecodeResult svc_mp_decode(const Eigen::VectorXcd& y, const Dictionary& a,
                              const Eigen::VectorXcd& h, int k) {
  if (k < 1) throw std::invalid_argument("svc_mp_decode: k must be >= 1");
  if (y.size() != a.rows || h.size() != a.rows) {
    throw std::invalid_argument("svc_mp_decode: dimension mismatch");
  }
  const int n = a.cols;
  const MatrixXcd weighted = h.asDiagonal() * to_complex(a.entries);
  const VectorXd norm2 = weighted.colwise().squaredNorm();
  VectorXcd residual = y;
  SvcDecodeResult res;
  std::vector<char> used(n, 0);
  for (int t = 0; t < k; ++t) {
    int best = -1;
    double best_score = 0.0;
    cplx best_corr = 0.0;
    for (int j = 0; j < n; ++j) {
      if (used[j] || norm2(j) <= 0.0) continue;
      const cplx corr = weighted.col(j).dot(residual);  // <w_j, r>
      const double score = std::norm(corr) / norm2(j);
      if (best < 0 || score > best_score) {
        best = j;
        best_score = score;
        best_corr = corr;
      }
    }
    if (best < 0) break;
    used[best] = 1;
    res.support.push_back(best);
    res.winner_scores.push_back(best_score);
    residual -= weighted.col(best) * (best_corr / norm2(best));
  }
  res.ok = static_cast<int>(res.support.size()) == k;
  if (res.ok) {
    std::sort(res.support.begin(), res.support.end());
    res.payload = subset_to_rank(res.support, n, k);
  }
  return res;
}

}  // namespace smc
