#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qldpc/gf2.h"

namespace qldpc {

/// Syndrome decoding problem: H (M checks x N bits) and per-bit priors.
struct DecodingProblem {
  BinMatrix checks;
  std::vector<double> priors;

  /// Throws std::invalid_argument unless priors.size() == N and each is in (0, 0.5].
  void validate() const;
};

enum class DampingRule {
  Adaptive,  // alpha_i = 1 - 2^-i
  Fixed,
};

struct BpConfig {
  std::size_t max_iters = 50;
  DampingRule damping = DampingRule::Adaptive;
  double fixed_alpha = 1.0;
  double llr_clamp = 64.0;

  void validate() const;
  /// Records which damping rule ran, e.g. "adaptive(1-2^-i)" or "fixed(0.625)".
  std::string damping_label() const;
};

/// alpha_i = 1 - 2^-i for iteration i >= 1.
double damping_factor(std::size_t iteration);

struct BpOutcome {
  bool converged = false;
  BinVector e_hat;
  std::vector<double> llr_out;
  std::vector<std::uint32_t> flip_counts;  // empty when oscillation tracking is off
  std::size_t iterations = 0;
};

/// Flooding-schedule normalized min-sum decoder over a fixed Tanner graph.
///
/// The graph and channel LLRs are built once; decode() is const and may be
/// called concurrently from many threads.
class MinSumDecoder {
 public:
  explicit MinSumDecoder(DecodingProblem problem);

  const DecodingProblem& problem() const { return problem_; }
  std::size_t num_checks() const { return num_checks_; }
  std::size_t num_bits() const { return num_bits_; }

  /// Columns of H as rows, for syndrome-domain flips.
  const BinMatrix& columns() const { return columns_; }

  /// Hard-decision flip counts between consecutive iterations are recorded
  /// when `track_oscillations` is set.
  BpOutcome decode(const BinVector& syndrome, const BpConfig& cfg,
                   bool track_oscillations = true) const;

  /// H e, computed on the Tanner graph.
  BinVector syndrome_of(const BinVector& e) const;

 private:
  DecodingProblem problem_;
  std::size_t num_checks_ = 0;
  std::size_t num_bits_ = 0;
  BinMatrix columns_;
  std::vector<double> channel_llr_;
  // Edges ordered by check; check c owns [check_start_[c], check_start_[c+1]).
  std::vector<std::size_t> check_start_;
  std::vector<std::uint32_t> edge_bit_;
  // Bit-major view: bit v owns bit_edges_[bit_start_[v] .. bit_start_[v+1]).
  std::vector<std::size_t> bit_start_;
  std::vector<std::uint32_t> bit_edges_;
};

/// One-shot convenience wrapper with oscillation tracking on.
BpOutcome bp_decode(const DecodingProblem& problem, const BinVector& syndrome,
                    const BpConfig& cfg);

}  // namespace qldpc
