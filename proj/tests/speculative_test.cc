#include "qldpc/speculative.h"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "qldpc/codes.h"
#include "test_util.h"

using namespace qldpc;

namespace {

// Syndromes on which plain BP fails, drawn at a high error rate.
std::vector<BinVector> hard_syndromes(const MinSumDecoder& decoder, std::size_t count,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BinVector> out;
  BpConfig cfg;
  while (out.size() < count) {
    BinVector e = qldpc::testing::random_vector(decoder.num_bits(), rng, 0.07);
    BinVector s = decoder.syndrome_of(e);
    if (!decoder.decode(s, cfg, false).converged) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(SelectCandidates, OrderAndTies) {
  CandidateSet c = select_candidates({0, 3, 1, 3, 0, 2}, 4);
  EXPECT_EQ(c.bits, (std::vector<std::size_t>{1, 3, 5, 2}));
  EXPECT_FALSE(c.padded);
  CandidateSet padded = select_candidates({0, 2, 0, 0}, 3);
  EXPECT_EQ(padded.bits, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_TRUE(padded.padded);
  EXPECT_THROW(select_candidates({1, 2}, 3), std::invalid_argument);
}

TEST(GenTestVectors, ExhaustiveCountsAndOrder) {
  Rng rng(1);
  std::vector<TestVector> tv = gen_test_vectors({5, 3, 9}, 2, 0, rng);
  ASSERT_EQ(tv.size(), 6U);
  std::vector<std::vector<std::size_t>> supports;
  for (const TestVector& t : tv) supports.push_back(t.support);
  EXPECT_EQ(supports, (std::vector<std::vector<std::size_t>>{
                          {5}, {3}, {9}, {3, 5}, {5, 9}, {3, 9}}));
  for (std::size_t i = 0; i < tv.size(); ++i) EXPECT_EQ(tv[i].ordinal, i);

  std::vector<std::size_t> phi{0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_EQ(gen_test_vectors(phi, 1, 0, rng).size(), 8U);
  EXPECT_EQ(gen_test_vectors(phi, 2, 0, rng).size(), 36U);
  EXPECT_EQ(gen_test_vectors(phi, 3, 0, rng).size(), 92U);
}

TEST(GenTestVectors, SampledClassesAreDistinctAndSorted) {
  Rng rng(4);
  std::vector<std::size_t> phi{10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  std::vector<TestVector> tv = gen_test_vectors(phi, 3, 5, rng);
  // Weight 1 has 10 > 5 members, so every class is sampled to exactly 5.
  ASSERT_EQ(tv.size(), 15U);
  std::set<std::vector<std::size_t>> seen;
  std::size_t last_weight = 0;
  for (const TestVector& t : tv) {
    EXPECT_GE(t.weight, last_weight);
    last_weight = t.weight;
    EXPECT_EQ(t.support.size(), t.weight);
    EXPECT_TRUE(std::is_sorted(t.support.begin(), t.support.end()));
    for (std::size_t b : t.support) EXPECT_TRUE(b >= 10 && b < 20);
    EXPECT_TRUE(seen.insert(t.support).second);
  }
  // A class with at most n_s members is enumerated in full.
  EXPECT_EQ(gen_test_vectors({1, 2, 3}, 2, 5, rng).size(), 6U);
}

TEST(GenTestVectors, SamplingIsUniform) {
  // 15 pairs out of 6 candidates, one drawn per call; chi-square with 14 dof.
  Rng rng(12);
  std::vector<std::size_t> phi{0, 1, 2, 3, 4, 5};
  std::map<std::vector<std::size_t>, int> counts;
  const int draws = 30'000;
  for (int i = 0; i < draws; ++i) {
    std::vector<TestVector> tv = gen_test_vectors(phi, 2, 1, rng);
    ASSERT_EQ(tv.size(), 2U);
    ++counts[tv[1].support];
  }
  ASSERT_EQ(counts.size(), 15U);
  double expected = draws / 15.0;
  double chi2 = 0;
  for (const auto& [support, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 36.12);  // 0.999 quantile
}

TEST(SpeculativeDecode, ConvergedInitialRunIsReturnedAsIs) {
  MinSumDecoder decoder({qldpc::testing::hamming_checks(), std::vector<double>(7, 0.05)});
  BinVector e = BinVector::from_support(7, {4});
  Rng rng(1);
  SpeculativeResult r = speculative_decode(decoder, decoder.syndrome_of(e), SpeculativeConfig{}, rng);
  EXPECT_EQ(r.source, DecodeSource::InitialBp);
  EXPECT_EQ(r.label(), "InitialBp");
  EXPECT_EQ(r.e_hat, e);
  EXPECT_EQ(r.serial_iterations, r.initial_iterations);
  EXPECT_EQ(r.num_test_vectors, 0U);
}

TEST(SpeculativeDecode, BreaksSymmetricTie) {
  // Plain BP stalls on a two-bit check with equal priors; flipping either
  // candidate leaves a zero syndrome that converges in one iteration.
  MinSumDecoder decoder({BinMatrix::from_rows({{1, 1}}), {0.1, 0.1}});
  SpeculativeConfig cfg;
  cfg.phi_size = 2;
  Rng rng(1);
  SpeculativeResult r = speculative_decode(decoder, BinVector::from_bits({1}), cfg, rng);
  EXPECT_EQ(r.source, DecodeSource::TestVector);
  EXPECT_EQ(r.label(), "TestVector(0)");
  EXPECT_TRUE(r.candidates.padded);
  EXPECT_EQ(r.e_hat, BinVector::from_bits({1, 0}));
  EXPECT_EQ(r.initial_iterations, 50U);
  EXPECT_EQ(r.serial_iterations, 51U);
  EXPECT_EQ(r.wall_iterations, 51U);
}

TEST(SpeculativeDecode, ParallelMatchesSerialReference) {
  CssCode code = build_code(builtin_code_spec("bb72"));
  MinSumDecoder decoder({code.hx, std::vector<double>(code.n, 0.07)});
  for (const BinVector& s : hard_syndromes(decoder, 40, 3)) {
    for (std::size_t n_s : {0U, 4U}) {
      SpeculativeConfig cfg;
      cfg.w_max = 2;
      cfg.n_s = n_s;
      Rng serial_rng(8);
      SpeculativeResult want = speculative_decode_serial(decoder, s, cfg, serial_rng);
      for (std::size_t threads : {1U, 2U, 4U}) {
        cfg.parallelism = threads;
        Rng rng(8);
        SpeculativeResult got = speculative_decode(decoder, s, cfg, rng);
        EXPECT_EQ(got.source, want.source);
        EXPECT_EQ(got.ordinal, want.ordinal);
        EXPECT_EQ(got.e_hat, want.e_hat);
        EXPECT_EQ(got.serial_iterations, want.serial_iterations);
        EXPECT_EQ(got.wall_iterations, want.wall_iterations);
        EXPECT_EQ(got.candidates.bits, want.candidates.bits);
      }
    }
  }
}

TEST(SpeculativeDecode, Invariants) {
  CssCode code = build_code(builtin_code_spec("bb72"));
  MinSumDecoder decoder({code.hx, std::vector<double>(code.n, 0.07)});
  SpeculativeConfig cfg;
  cfg.w_max = 2;
  int recovered = 0;
  for (const BinVector& s : hard_syndromes(decoder, 40, 11)) {
    Rng rng(2);
    SpeculativeResult r = speculative_decode(decoder, s, cfg, rng);
    EXPECT_EQ(r.initial_iterations, cfg.bp.max_iters);
    EXPECT_EQ(r.candidates.bits.size(), cfg.phi_size);
    EXPECT_EQ(r.num_test_vectors, 36U);
    EXPECT_LE(r.wall_iterations, r.serial_iterations);
    EXPECT_GE(r.wall_iterations, r.initial_iterations);
    EXPECT_LE(r.serial_iterations, r.initial_iterations + r.num_test_vectors * cfg.bp.max_iters);
    if (r.success()) {
      ++recovered;
      // The restored estimate explains the original syndrome.
      EXPECT_EQ(decoder.syndrome_of(r.e_hat), s);
      EXPECT_LT(r.ordinal, r.num_test_vectors);
    } else {
      EXPECT_EQ(r.serial_iterations, r.initial_iterations + r.num_test_vectors * cfg.bp.max_iters);
      EXPECT_EQ(r.wall_iterations, r.initial_iterations + cfg.bp.max_iters);
    }
  }
  EXPECT_GT(recovered, 0);
}

TEST(SpeculativeConfig, Validation) {
  SpeculativeConfig cfg;
  cfg.phi_size = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.phi_size = 2;
  cfg.w_max = 3;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.n_s = 1;
  EXPECT_NO_THROW(cfg.validate());
  cfg.parallelism = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(PrecisionRecall, Examples) {
  BinVector e = BinVector::from_support(10, {1, 4, 7});
  HitRates r = precision_recall({4, 5, 7, 9}, e);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 2.0 / 3.0);
  HitRates none = precision_recall({}, e);
  EXPECT_DOUBLE_EQ(none.precision, 0.0);
  EXPECT_DOUBLE_EQ(none.recall, 0.0);
  EXPECT_DOUBLE_EQ(precision_recall({1}, BinVector(10)).recall, 1.0);
}
