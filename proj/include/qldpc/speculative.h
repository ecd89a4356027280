#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qldpc/bp.h"
#include "qldpc/gf2.h"
#include "qldpc/rng.h"

namespace qldpc {

struct SpeculativeConfig {
  std::size_t phi_size = 8;
  std::size_t w_max = 1;
  std::size_t n_s = 0;  // 0 selects exhaustive enumeration
  BpConfig bp;
  std::size_t parallelism = 1;

  void validate() const;
};

struct CandidateSet {
  std::vector<std::size_t> bits;  // most frequently flipped first
  bool padded = false;            // fewer than phi_size bits ever flipped
};

/// Top `phi_size` bits by flip count, ties broken by ascending index.
/// Bits that never flipped only appear as padding.
CandidateSet select_candidates(const std::vector<std::uint32_t>& flip_counts,
                               std::size_t phi_size);

struct TestVector {
  std::vector<std::size_t> support;  // sorted bit indices, all drawn from the candidate set
  std::size_t weight = 0;
  std::size_t ordinal = 0;

  BinVector to_vector(std::size_t num_bits) const {
    return BinVector::from_support(num_bits, support);
  }
};

/// Test vectors over `candidates`, ordered by weight then enumeration order.
///
/// With n_s == 0 every subset of weight 1..w_max is produced, combinations
/// taken lexicographically over positions in the candidate list. Otherwise
/// each weight class gets n_s distinct uniformly drawn subsets (in draw
/// order), or all of them when the class has at most n_s members.
std::vector<TestVector> gen_test_vectors(const std::vector<std::size_t>& candidates,
                                         std::size_t w_max, std::size_t n_s, Rng& rng);

enum class DecodeSource { InitialBp, TestVector, Failure };

std::string source_label(DecodeSource source, std::size_t ordinal);

struct SpeculativeResult {
  BinVector e_hat;
  DecodeSource source = DecodeSource::Failure;
  std::size_t ordinal = 0;  // winning test vector when source == TestVector
  std::size_t serial_iterations = 0;
  std::size_t wall_iterations = 0;
  std::size_t initial_iterations = 0;
  CandidateSet candidates;  // empty when the initial run converged
  std::size_t num_test_vectors = 0;

  bool success() const { return source != DecodeSource::Failure; }
  std::string label() const { return source_label(source, ordinal); }
};

/// BP with oscillation-guided test vectors, batch evaluated in parallel.
///
/// After a failed initial run, every test vector t is decoded on s ^ H t
/// and a converged estimate is restored as e' ^ t. The lowest-ordinal
/// success wins, so the result does not depend on `parallelism`; work above
/// the current best ordinal may be skipped.
///
/// serial_iterations counts the initial run plus every test vector up to and
/// including the winner (all of them on failure). wall_iterations is the
/// initial run plus the longest run among those same vectors.
SpeculativeResult speculative_decode(const MinSumDecoder& decoder, const BinVector& syndrome,
                                     const SpeculativeConfig& cfg, Rng& rng);

/// Serial reference: test vectors one at a time in ordinal order, stopping
/// at the first success.
SpeculativeResult speculative_decode_serial(const MinSumDecoder& decoder,
                                            const BinVector& syndrome,
                                            const SpeculativeConfig& cfg, Rng& rng);

struct HitRates {
  double precision = 0.0;
  double recall = 0.0;
};

/// precision = |supp(e) & phi| / |phi|, recall = |supp(e) & phi| / |supp(e)|
/// (recall is 1 for e = 0, precision 0 for an empty phi).
HitRates precision_recall(const std::vector<std::size_t>& phi, const BinVector& error);

}  // namespace qldpc
