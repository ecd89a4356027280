#include "qldpc/bp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qldpc/codes.h"
#include "qldpc/rng.h"
#include "test_util.h"

using namespace qldpc;
using qldpc::testing::hamming_checks;
using qldpc::testing::random_matrix;

namespace {

struct Reference {
  bool converged = false;
  std::vector<int> e_hat;
  std::vector<double> llr;
  std::vector<int> flips;
  std::size_t iterations = 0;
};

// Dense textbook min-sum on an explicit M x N message table. Shares only the
// message update rules with the library; no edge lists or packed bits.
Reference reference_min_sum(const std::vector<std::vector<int>>& h, const std::vector<double>& priors,
                            const std::vector<int>& s, std::size_t max_iters, double clamp) {
  const std::size_t m = h.size();
  const std::size_t n = priors.size();
  auto clip = [clamp](double x) { return std::max(-clamp, std::min(clamp, x)); };
  std::vector<double> lambda(n);
  for (std::size_t v = 0; v < n; ++v) lambda[v] = std::log((1 - priors[v]) / priors[v]);
  std::vector<std::vector<double>> c2v(m, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> v2c(m, std::vector<double>(n, 0.0));
  Reference out;
  out.e_hat.assign(n, 0);
  out.llr.assign(n, 0.0);
  out.flips.assign(n, 0);
  std::vector<int> previous(n, 0);
  for (std::size_t it = 1; it <= max_iters; ++it) {
    double alpha = 1.0 - std::pow(2.0, -static_cast<double>(it));
    for (std::size_t v = 0; v < n; ++v) {
      double total = lambda[v];
      for (std::size_t c = 0; c < m; ++c) {
        if (h[c][v]) total += c2v[c][v];
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (h[c][v]) v2c[c][v] = clip(total - c2v[c][v]);
      }
    }
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!h[c][v]) continue;
        bool negative = s[c] != 0;
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < n; ++u) {
          if (u == v || !h[c][u]) continue;
          if (v2c[c][u] < 0) negative = !negative;
          smallest = std::min(smallest, std::fabs(v2c[c][u]));
        }
        c2v[c][v] = clip(negative ? -alpha * smallest : alpha * smallest);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      double total = lambda[v];
      for (std::size_t c = 0; c < m; ++c) {
        if (h[c][v]) total += c2v[c][v];
      }
      out.llr[v] = clip(total);
      out.e_hat[v] = out.llr[v] <= 0 ? 1 : 0;
      if (it > 1 && out.e_hat[v] != previous[v]) ++out.flips[v];
    }
    previous = out.e_hat;
    out.iterations = it;
    bool ok = true;
    for (std::size_t c = 0; c < m; ++c) {
      int parity = 0;
      for (std::size_t v = 0; v < n; ++v) parity ^= h[c][v] & out.e_hat[v];
      ok = ok && parity == s[c];
    }
    if (ok) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::vector<std::vector<int>> dense(const BinMatrix& h) {
  std::vector<std::vector<int>> d(h.rows(), std::vector<int>(h.cols()));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) d[r][c] = h.get(r, c);
  }
  return d;
}

}  // namespace

TEST(DampingFactor, Sequence) {
  EXPECT_DOUBLE_EQ(damping_factor(1), 0.5);
  EXPECT_DOUBLE_EQ(damping_factor(2), 0.75);
  EXPECT_DOUBLE_EQ(damping_factor(3), 0.875);
  EXPECT_DOUBLE_EQ(damping_factor(10), 1.0 - 1.0 / 1024.0);
  EXPECT_THROW(damping_factor(0), std::invalid_argument);
}

TEST(BpDecode, ZeroSyndromeConvergesImmediately) {
  DecodingProblem problem{hamming_checks(), std::vector<double>(7, 0.05)};
  BpOutcome out = bp_decode(problem, BinVector(3), BpConfig{});
  EXPECT_TRUE(out.converged);
  EXPECT_EQ(out.iterations, 1U);
  EXPECT_TRUE(out.e_hat.is_zero());
  for (double l : out.llr_out) EXPECT_GT(l, 0.0);
}

TEST(BpDecode, TwoBitCheckHandComputed) {
  // One check on two bits, s = 1. After iteration i the marginals are
  // lambda_1 - alpha_i lambda_2 and lambda_2 - alpha_i lambda_1.
  DecodingProblem problem{BinMatrix::from_rows({{1, 1}}), {0.1, 0.2}};
  BpOutcome out = bp_decode(problem, BinVector::from_bits({1}), BpConfig{});
  ASSERT_TRUE(out.converged);
  EXPECT_EQ(out.iterations, 2U);
  EXPECT_EQ(out.e_hat, BinVector::from_bits({0, 1}));
  EXPECT_NEAR(out.llr_out[0], std::log(9.0) - 0.75 * std::log(4.0), 1e-12);
  EXPECT_NEAR(out.llr_out[1], std::log(4.0) - 0.75 * std::log(9.0), 1e-12);
}

TEST(BpDecode, SymmetricTieNeverConverges) {
  // Equal priors: both marginals stay at lambda 2^-i > 0, nothing ever flips.
  DecodingProblem problem{BinMatrix::from_rows({{1, 1}}), {0.1, 0.1}};
  BpConfig cfg;
  cfg.max_iters = 20;
  BpOutcome out = bp_decode(problem, BinVector::from_bits({1}), cfg);
  EXPECT_FALSE(out.converged);
  EXPECT_EQ(out.iterations, 20U);
  EXPECT_TRUE(out.e_hat.is_zero());
  EXPECT_NEAR(out.llr_out[0], std::log(9.0) * std::ldexp(1.0, -20), 1e-15);
  EXPECT_EQ(out.flip_counts, (std::vector<std::uint32_t>{0, 0}));
}

TEST(BpDecode, HammingSingleErrors) {
  DecodingProblem problem{hamming_checks(), std::vector<double>(7, 0.05)};
  MinSumDecoder decoder(problem);
  for (std::size_t j = 0; j < 6; ++j) {
    BinVector e(7);
    e.set(j);
    BpOutcome out = decoder.decode(decoder.syndrome_of(e), BpConfig{});
    EXPECT_TRUE(out.converged) << j;
    EXPECT_EQ(out.e_hat, e) << j;
  }
}

TEST(BpDecode, ExactZeroMarginalDecidesFlipped) {
  // Bit 6 touches all three checks. In the first iteration bits 2, 4 and 5
  // each receive -alpha_1 lambda from two unsatisfied checks, landing exactly
  // on zero, and a zero marginal decides 1.
  MinSumDecoder decoder({hamming_checks(), std::vector<double>(7, 0.05)});
  BpOutcome out = decoder.decode(BinVector::from_bits({1, 1, 1}), BpConfig{});
  ASSERT_TRUE(out.converged);
  EXPECT_EQ(out.iterations, 1U);
  EXPECT_EQ(out.e_hat, BinVector::from_support(7, {2, 4, 5, 6}));
  EXPECT_EQ(out.llr_out[2], 0.0);
  EXPECT_NEAR(out.llr_out[6], -0.5 * std::log(19.0), 1e-12);
}

TEST(BpDecode, DegreeOneCheckIsSaturated) {
  DecodingProblem problem{BinMatrix::from_rows({{1, 0}, {1, 1}}), {0.1, 0.1}};
  BpOutcome out = bp_decode(problem, BinVector::from_bits({1, 1}), BpConfig{});
  ASSERT_TRUE(out.converged);
  EXPECT_EQ(out.e_hat, BinVector::from_bits({1, 0}));
}

TEST(BpDecode, MatchesDenseReference) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = 2 + rng.below(8);
    std::size_t n = m + 1 + rng.below(10);
    BinMatrix h = random_matrix(m, n, rng, 0.35);
    std::vector<double> priors(n);
    for (double& p : priors) p = 0.01 + 0.2 * rng.uniform();
    BinVector e = qldpc::testing::random_vector(n, rng, 0.15);
    MinSumDecoder decoder({h, priors});
    BinVector s = decoder.syndrome_of(e);
    BpConfig cfg;
    cfg.max_iters = 30;
    BpOutcome got = decoder.decode(s, cfg);

    std::vector<int> s_dense(m);
    for (std::size_t c = 0; c < m; ++c) s_dense[c] = s.get(c);
    Reference want = reference_min_sum(dense(h), priors, s_dense, cfg.max_iters, cfg.llr_clamp);

    ASSERT_EQ(got.converged, want.converged) << trial;
    ASSERT_EQ(got.iterations, want.iterations) << trial;
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_EQ(got.e_hat.get(v), want.e_hat[v] != 0) << trial;
      EXPECT_NEAR(got.llr_out[v], want.llr[v], 1e-9) << trial;
      EXPECT_EQ(got.flip_counts[v], static_cast<std::uint32_t>(want.flips[v])) << trial;
    }
  }
}

TEST(BpDecode, Invariants) {
  CssCode code = build_code(builtin_code_spec("bb72"));
  MinSumDecoder decoder({code.hx, std::vector<double>(code.n, 0.05)});
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    BinVector e = qldpc::testing::random_vector(code.n, rng, 0.05);
    BinVector s = decoder.syndrome_of(e);
    BpConfig cfg;
    BpOutcome out = decoder.decode(s, cfg);
    EXPECT_LE(out.iterations, cfg.max_iters);
    if (out.converged) {
      EXPECT_EQ(decoder.syndrome_of(out.e_hat), s);
    }
    std::uint32_t total = 0;
    for (std::uint32_t f : out.flip_counts) total += f;
    EXPECT_LE(total, code.n * (out.iterations - 1));
    for (double l : out.llr_out) EXPECT_LE(std::fabs(l), cfg.llr_clamp);
    // Tracking oscillations never changes the decode itself.
    BpOutcome plain = decoder.decode(s, cfg, false);
    EXPECT_EQ(plain.e_hat, out.e_hat);
    EXPECT_EQ(plain.iterations, out.iterations);
    EXPECT_TRUE(plain.flip_counts.empty());
  }
}

TEST(BpDecode, SyndromeOfMatchesMatVec) {
  Rng rng(9);
  BinMatrix h = random_matrix(12, 30, rng, 0.3);
  MinSumDecoder decoder({h, std::vector<double>(30, 0.1)});
  for (int trial = 0; trial < 50; ++trial) {
    BinVector e = qldpc::testing::random_vector(30, rng);
    EXPECT_EQ(decoder.syndrome_of(e), mat_vec(h, e));
  }
}

TEST(BpDecode, RejectsBadInput) {
  EXPECT_THROW(MinSumDecoder({hamming_checks(), std::vector<double>(6, 0.1)}), std::invalid_argument);
  EXPECT_THROW(MinSumDecoder({hamming_checks(), std::vector<double>(7, 0.0)}), std::invalid_argument);
  MinSumDecoder decoder({hamming_checks(), std::vector<double>(7, 0.1)});
  EXPECT_THROW(decoder.decode(BinVector(4), BpConfig{}), std::invalid_argument);
  BpConfig bad;
  bad.max_iters = 0;
  EXPECT_THROW(decoder.decode(BinVector(3), bad), std::invalid_argument);
}

TEST(BpConfig, DampingLabel) {
  BpConfig cfg;
  EXPECT_EQ(cfg.damping_label(), "adaptive(1-2^-i)");
  cfg.damping = DampingRule::Fixed;
  cfg.fixed_alpha = 0.625;
  EXPECT_EQ(cfg.damping_label(), "fixed(0.625)");
}
