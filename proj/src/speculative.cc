#include "qldpc/speculative.h"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qldpc {

void SpeculativeConfig::validate() const {
  if (phi_size < 1) throw std::invalid_argument("SpeculativeConfig: phi_size must be >= 1");
  if (w_max < 1) throw std::invalid_argument("SpeculativeConfig: w_max must be >= 1");
  if (n_s == 0 && w_max > phi_size) {
    throw std::invalid_argument("SpeculativeConfig: exhaustive enumeration needs w_max <= phi_size");
  }
  if (parallelism < 1) throw std::invalid_argument("SpeculativeConfig: parallelism must be >= 1");
  bp.validate();
}

CandidateSet select_candidates(const std::vector<std::uint32_t>& flip_counts,
                               std::size_t phi_size) {
  if (phi_size > flip_counts.size()) {
    throw std::invalid_argument("select_candidates: phi_size " + std::to_string(phi_size) +
                                " exceeds " + std::to_string(flip_counts.size()) + " bits");
  }
  std::vector<std::size_t> order(flip_counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return flip_counts[a] > flip_counts[b];
  });
  order.resize(phi_size);
  CandidateSet out;
  out.padded = !order.empty() && flip_counts[order.back()] == 0;
  out.bits = std::move(order);
  return out;
}

namespace {

// C(n, k) saturating at `cap + 1`.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::size_t>(c);
}

// Calls fn(positions) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n || k == 0) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<TestVector> gen_test_vectors(const std::vector<std::size_t>& candidates,
                                         std::size_t w_max, std::size_t n_s, Rng& rng) {
  std::vector<TestVector> out;
  const std::size_t n = candidates.size();
  auto emit = [&](const std::vector<std::size_t>& positions) {
    TestVector t;
    for (std::size_t p : positions) t.support.push_back(candidates[p]);
    std::sort(t.support.begin(), t.support.end());
    t.weight = t.support.size();
    t.ordinal = out.size();
    out.push_back(std::move(t));
  };
  for (std::size_t w = 1; w <= std::min(w_max, n); ++w) {
    if (n_s == 0 || binomial_capped(n, w, n_s) <= n_s) {
      for_each_combination(n, w, emit);
      continue;
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> pool(n);
    while (seen.size() < n_s) {
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t i = 0; i < w; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
      std::vector<std::size_t> pick(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(w));
      std::sort(pick.begin(), pick.end());
      if (seen.insert(pick).second) emit(pick);
    }
  }
  return out;
}

std::string source_label(DecodeSource source, std::size_t ordinal) {
  switch (source) {
    case DecodeSource::InitialBp:
      return "InitialBp";
    case DecodeSource::TestVector:
      return "TestVector(" + std::to_string(ordinal) + ")";
    case DecodeSource::Failure:
      return "Failure";
  }
  return "?";
}

namespace {

struct Branch {
  bool converged = false;
  std::size_t iterations = 0;
  BinVector e_hat;
};

Branch run_branch(const MinSumDecoder& decoder, const BinVector& syndrome, const TestVector& t,
                  const BpConfig& cfg) {
  BinVector flipped = syndrome;
  for (std::size_t bit : t.support) {
    auto col = decoder.columns().row_words(bit);
    auto dst = flipped.words();
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= col[w];
  }
  BpOutcome inner = decoder.decode(flipped, cfg, false);
  Branch b{inner.converged, inner.iterations, {}};
  if (inner.converged) {
    b.e_hat = std::move(inner.e_hat);
    for (std::size_t bit : t.support) b.e_hat.flip(bit);
  }
  return b;
}

// Shared first stage: initial BP with oscillation tracking, then test vectors.
// Returns true when the initial run already decoded.
bool initial_stage(const MinSumDecoder& decoder, const BinVector& syndrome,
                   const SpeculativeConfig& cfg, Rng& rng, SpeculativeResult& result,
                   std::vector<TestVector>& vectors) {
  cfg.validate();
  BpOutcome initial = decoder.decode(syndrome, cfg.bp, true);
  result.initial_iterations = initial.iterations;
  result.serial_iterations = initial.iterations;
  result.wall_iterations = initial.iterations;
  if (initial.converged) {
    result.source = DecodeSource::InitialBp;
    result.e_hat = std::move(initial.e_hat);
    return true;
  }
  result.source = DecodeSource::Failure;
  result.e_hat = std::move(initial.e_hat);
  result.candidates =
      select_candidates(initial.flip_counts, std::min(cfg.phi_size, decoder.num_bits()));
  vectors = gen_test_vectors(result.candidates.bits, cfg.w_max, cfg.n_s, rng);
  result.num_test_vectors = vectors.size();
  return false;
}

}  // namespace

SpeculativeResult speculative_decode(const MinSumDecoder& decoder, const BinVector& syndrome,
                                     const SpeculativeConfig& cfg, Rng& rng) {
  SpeculativeResult result;
  std::vector<TestVector> vectors;
  if (initial_stage(decoder, syndrome, cfg, rng, result, vectors)) return result;

  const std::size_t count = vectors.size();
  std::vector<Branch> branches(count);
  std::atomic<std::size_t> best{count};
  const int threads = static_cast<int>(cfg.parallelism);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::size_t i = 0; i < count; ++i) {
    if (i > best.load(std::memory_order_relaxed)) continue;
    branches[i] = run_branch(decoder, syndrome, vectors[i], cfg.bp);
    if (branches[i].converged) {
      std::size_t current = best.load(std::memory_order_relaxed);
      while (i < current && !best.compare_exchange_weak(current, i, std::memory_order_relaxed)) {
      }
    }
  }

  const std::size_t winner = best.load();
  const std::size_t last = winner < count ? winner + 1 : count;
  std::size_t longest = 0;
  for (std::size_t i = 0; i < last; ++i) {
    result.serial_iterations += branches[i].iterations;
    longest = std::max(longest, branches[i].iterations);
  }
  result.wall_iterations += longest;
  if (winner < count) {
    result.source = DecodeSource::TestVector;
    result.ordinal = winner;
    result.e_hat = std::move(branches[winner].e_hat);
  }
  return result;
}

SpeculativeResult speculative_decode_serial(const MinSumDecoder& decoder,
                                            const BinVector& syndrome,
                                            const SpeculativeConfig& cfg, Rng& rng) {
  SpeculativeResult result;
  std::vector<TestVector> vectors;
  if (initial_stage(decoder, syndrome, cfg, rng, result, vectors)) return result;

  std::size_t longest = 0;
  for (const TestVector& t : vectors) {
    Branch b = run_branch(decoder, syndrome, t, cfg.bp);
    result.serial_iterations += b.iterations;
    longest = std::max(longest, b.iterations);
    if (b.converged) {
      result.source = DecodeSource::TestVector;
      result.ordinal = t.ordinal;
      result.e_hat = std::move(b.e_hat);
      break;
    }
  }
  result.wall_iterations += longest;
  return result;
}

HitRates precision_recall(const std::vector<std::size_t>& phi, const BinVector& error) {
  std::size_t hits = 0;
  for (std::size_t b : phi) {
    if (b < error.size() && error.get(b)) ++hits;
  }
  const std::size_t weight = error.weight();
  HitRates r;
  r.precision = phi.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(phi.size());
  r.recall = weight == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(weight);
  return r;
}

}  // namespace qldpc
