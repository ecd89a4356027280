#include "qldpc/osd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qldpc {

double log_probability_score(const std::vector<double>& priors, const BinVector& e) {
  double score = 0.0;
  for (std::size_t j : e.support()) score += std::log(priors[j] / (1.0 - priors[j]));
  return score;
}

std::optional<BinVector> osd_decode(const DecodingProblem& problem, const BinVector& syndrome,
                                    const std::vector<double>& llr_out, const OsdConfig& cfg) {
  const BinMatrix& h = problem.checks;
  const std::size_t n = h.cols();
  if (llr_out.size() != n || syndrome.size() != h.rows()) {
    throw std::invalid_argument("osd_decode: expected " + std::to_string(n) + " LLRs and " +
                                std::to_string(h.rows()) + " syndrome bits");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return llr_out[a] < llr_out[b]; });

  Elimination e = eliminate(h.select_columns(order));
  auto base = e.solve(syndrome);
  if (!base) return std::nullopt;

  // Solutions in permuted coordinates; pivot bits follow from non-pivot flips
  // through the reduced columns.
  std::vector<double> cost(n);
  for (std::size_t j = 0; j < n; ++j) {
    double p = problem.priors[order[j]];
    cost[j] = std::log((1.0 - p) / p);
  }
  auto unpermute = [&](const BinVector& x) {
    BinVector out(n);
    for (std::size_t j : x.support()) out.set(order[j]);
    return out;
  };
  auto weighted = [&](const BinVector& x) {
    double w = 0.0;
    for (std::size_t j : x.support()) w += cost[j];
    return w;
  };

  BinVector best = *base;
  if (cfg.variant == OsdVariant::Osd0) return unpermute(best);

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> non_pivot;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) non_pivot.push_back(j);
  }
  // Flipping non-pivot column j toggles pivot bit pivots[r] wherever reduced[r][j] = 1.
  const BinMatrix reduced_t = e.reduced.transpose();
  auto flip_effect = [&](std::size_t j) {
    BinVector delta(n);
    delta.set(j);
    auto col = reduced_t.row_words(j);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      if ((col[r / 64] >> (r % 64)) & 1U) delta.flip(e.pivots[r]);
    }
    return delta;
  };

  double best_cost = weighted(best);
  auto consider = [&](const BinVector& candidate) {
    double c = weighted(candidate);
    if (c < best_cost) {
      best_cost = c;
      best = candidate;
    }
  };

  std::vector<BinVector> effects;
  effects.reserve(non_pivot.size());
  for (std::size_t j : non_pivot) effects.push_back(flip_effect(j));
  for (const BinVector& d : effects) consider(*base ^ d);
  const std::size_t lambda = std::min(cfg.order, non_pivot.size());
  for (std::size_t a = 0; a < lambda; ++a) {
    for (std::size_t b = a + 1; b < lambda; ++b) consider(*base ^ effects[a] ^ effects[b]);
  }
  return unpermute(best);
}

}  // namespace qldpc
