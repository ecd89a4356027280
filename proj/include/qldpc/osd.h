#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qldpc/bp.h"
#include "qldpc/gf2.h"

namespace qldpc {

enum class OsdVariant { Osd0, CombinationSweep };

struct OsdConfig {
  OsdVariant variant = OsdVariant::CombinationSweep;
  std::size_t order = 10;  // lambda; ignored for Osd0
};

/// sum_{j : e_j = 1} log(p_j / (1 - p_j)); larger is more probable.
double log_probability_score(const std::vector<double>& priors, const BinVector& e);

/// Ordered statistics post-processing of BP soft output.
///
/// Columns are ranked by ascending `llr_out` (most likely flipped first, ties
/// by index) and the first rank(H) independent ones form the information
/// set. OSD-0 solves on that set with every other bit zero. The combination
/// sweep also tries each single non-pivot bit and each pair among the first
/// `order` non-pivot bits, keeping the best log-probability score (earliest
/// candidate on ties). Returns nullopt when s is outside the column space.
std::optional<BinVector> osd_decode(const DecodingProblem& problem, const BinVector& syndrome,
                                    const std::vector<double>& llr_out, const OsdConfig& cfg);

}  // namespace qldpc
