#include "qldpc/bp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qldpc {

void DecodingProblem::validate() const {
  if (priors.size() != checks.cols()) {
    throw std::invalid_argument("DecodingProblem: " + std::to_string(priors.size()) +
                                " priors for " + checks.shape_string() + " check matrix");
  }
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (!(priors[i] > 0.0 && priors[i] <= 0.5)) {
      throw std::invalid_argument("DecodingProblem: prior " + std::to_string(i) +
                                  " outside (0, 0.5]");
    }
  }
}

void BpConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("BpConfig: max_iters must be >= 1");
  if (damping == DampingRule::Fixed && !(fixed_alpha > 0.0 && fixed_alpha <= 1.0)) {
    throw std::invalid_argument("BpConfig: fixed damping must be in (0, 1]");
  }
  if (!(llr_clamp > 0.0)) throw std::invalid_argument("BpConfig: llr_clamp must be positive");
}

std::string BpConfig::damping_label() const {
  if (damping == DampingRule::Adaptive) return "adaptive(1-2^-i)";
  std::ostringstream out;
  out << "fixed(" << fixed_alpha << ")";
  return out.str();
}

double damping_factor(std::size_t iteration) {
  if (iteration < 1) throw std::invalid_argument("damping_factor: iteration starts at 1");
  return 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(iteration, 1100)));
}

MinSumDecoder::MinSumDecoder(DecodingProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  const BinMatrix& h = problem_.checks;
  num_checks_ = h.rows();
  num_bits_ = h.cols();
  columns_ = h.transpose();

  channel_llr_.resize(num_bits_);
  for (std::size_t v = 0; v < num_bits_; ++v) {
    double p = problem_.priors[v];
    channel_llr_[v] = std::log((1.0 - p) / p);
  }

  check_start_.assign(num_checks_ + 1, 0);
  std::vector<std::size_t> degree(num_bits_, 0);
  for (std::size_t c = 0; c < num_checks_; ++c) {
    for (std::size_t v : h.row_support(c)) {
      edge_bit_.push_back(static_cast<std::uint32_t>(v));
      ++degree[v];
    }
    check_start_[c + 1] = edge_bit_.size();
  }
  bit_start_.assign(num_bits_ + 1, 0);
  for (std::size_t v = 0; v < num_bits_; ++v) bit_start_[v + 1] = bit_start_[v] + degree[v];
  bit_edges_.resize(edge_bit_.size());
  std::vector<std::size_t> fill(bit_start_.begin(), bit_start_.end() - 1);
  for (std::size_t e = 0; e < edge_bit_.size(); ++e) {
    bit_edges_[fill[edge_bit_[e]]++] = static_cast<std::uint32_t>(e);
  }
}

BinVector MinSumDecoder::syndrome_of(const BinVector& e) const {
  if (e.size() != num_bits_) {
    throw std::invalid_argument("syndrome_of: error length " + std::to_string(e.size()) +
                                " for " + std::to_string(num_bits_) + " bits");
  }
  BinVector s(num_checks_);
  for (std::size_t c = 0; c < num_checks_; ++c) {
    bool parity = false;
    for (std::size_t e_idx = check_start_[c]; e_idx < check_start_[c + 1]; ++e_idx) {
      parity ^= e.get(edge_bit_[e_idx]);
    }
    if (parity) s.set(c);
  }
  return s;
}

BpOutcome MinSumDecoder::decode(const BinVector& syndrome, const BpConfig& cfg,
                                bool track_oscillations) const {
  if (syndrome.size() != num_checks_) {
    throw std::invalid_argument("bp decode: syndrome length " + std::to_string(syndrome.size()) +
                                " for " + problem_.checks.shape_string() + " check matrix");
  }
  cfg.validate();
  const double clamp = cfg.llr_clamp;
  auto clip = [clamp](double x) { return std::clamp(x, -clamp, clamp); };

  const std::size_t num_edges = edge_bit_.size();
  std::vector<double> c2v(num_edges, 0.0);
  std::vector<double> v2c(num_edges, 0.0);

  BpOutcome out;
  out.e_hat = BinVector(num_bits_);
  out.llr_out.assign(num_bits_, 0.0);
  if (track_oscillations) out.flip_counts.assign(num_bits_, 0);
  BinVector previous(num_bits_);

  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    const double alpha =
        cfg.damping == DampingRule::Adaptive ? damping_factor(it) : cfg.fixed_alpha;

    // Variable to check: channel LLR plus all other incoming check messages.
    for (std::size_t v = 0; v < num_bits_; ++v) {
      double total = channel_llr_[v];
      for (std::size_t k = bit_start_[v]; k < bit_start_[v + 1]; ++k) total += c2v[bit_edges_[k]];
      for (std::size_t k = bit_start_[v]; k < bit_start_[v + 1]; ++k) {
        std::uint32_t e = bit_edges_[k];
        v2c[e] = clip(total - c2v[e]);
      }
    }

    // Check to variable: scaled min-sum with the syndrome sign.
    for (std::size_t c = 0; c < num_checks_; ++c) {
      const std::size_t begin = check_start_[c];
      const std::size_t end = check_start_[c + 1];
      double min1 = std::numeric_limits<double>::infinity();
      double min2 = min1;
      std::size_t argmin = end;
      bool negative = syndrome.get(c);
      for (std::size_t e = begin; e < end; ++e) {
        double mag = std::fabs(v2c[e]);
        if (v2c[e] < 0.0) negative = !negative;
        if (mag < min1) {
          min2 = min1;
          min1 = mag;
          argmin = e;
        } else if (mag < min2) {
          min2 = mag;
        }
      }
      for (std::size_t e = begin; e < end; ++e) {
        // Exclude this edge's own sign and magnitude.
        bool sign = negative != (v2c[e] < 0.0);
        double mag = alpha * (e == argmin ? min2 : min1);
        c2v[e] = clip(sign ? -mag : mag);
      }
    }

    // Marginals and hard decision.
    BinVector& e_hat = out.e_hat;
    for (std::size_t v = 0; v < num_bits_; ++v) {
      double total = channel_llr_[v];
      for (std::size_t k = bit_start_[v]; k < bit_start_[v + 1]; ++k) total += c2v[bit_edges_[k]];
      out.llr_out[v] = clip(total);
      e_hat.set(v, out.llr_out[v] <= 0.0);
    }
    if (track_oscillations && it > 1) {
      BinVector flipped = e_hat ^ previous;
      for (std::size_t v : flipped.support()) ++out.flip_counts[v];
    }
    previous = e_hat;
    out.iterations = it;
    if (syndrome_of(e_hat) == syndrome) {
      out.converged = true;
      break;
    }
  }
  return out;
}

BpOutcome bp_decode(const DecodingProblem& problem, const BinVector& syndrome,
                    const BpConfig& cfg) {
  return MinSumDecoder(problem).decode(syndrome, cfg, true);
}

}  // namespace qldpc
