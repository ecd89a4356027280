#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qldpc/bp.h"
#include "qldpc/codes.h"
#include "qldpc/dem.h"
#include "qldpc/osd.h"
#include "qldpc/rng.h"
#include "qldpc/speculative.h"

namespace qldpc {

enum class NoiseKind {
  CodeCapacity,  // independent X and Z flips, each at rate p
  Depolarizing,  // X, Y, Z each at p/3; per-sector priors 2p/3
  Dem,           // mechanisms fire independently with their priors
};

struct NoiseSpec {
  NoiseKind kind = NoiseKind::CodeCapacity;
  double p = 0.0;

  static NoiseSpec code_capacity(double p) { return {NoiseKind::CodeCapacity, p}; }
  static NoiseSpec depolarizing(double p) { return {NoiseKind::Depolarizing, p}; }
  static NoiseSpec dem() { return {NoiseKind::Dem, 0.0}; }

  void validate() const;
  /// Prior each sector decoder sees.
  double sector_prior() const;
};

/// Which Pauli component a CSS sector decodes. Z errors are seen by H_X and
/// judged against lx; X errors by H_Z and judged against lz.
enum class Sector { X, Z };

DecodingProblem sector_problem(const CssCode& code, Sector sector, double prior);

/// Independent Bernoulli(p) bits.
BinVector sample_error(std::size_t n, double p, Rng& rng);
/// Bit j set with probability priors[j].
BinVector sample_error(const std::vector<double>& priors, Rng& rng);

struct PauliError {
  BinVector x;
  BinVector z;
};
/// Code-capacity sample on n qubits (CodeCapacity or Depolarizing noise).
PauliError sample_pauli_error(const NoiseSpec& noise, std::size_t n, Rng& rng);

/// Nonconverged decodes count as failures. A converged estimate whose
/// syndrome differs from the true error's throws std::logic_error.
bool is_logical_failure(const CssCode& code, Sector sector, const BinVector& error,
                        const BinVector& estimate, bool converged);
bool is_logical_failure(const DetectorModel& model, const BinVector& error,
                        const BinVector& estimate, bool converged);

enum class DecoderKind { Bp, Speculative, BpOsd };

struct DecoderConfig {
  DecoderKind kind = DecoderKind::Bp;
  BpConfig bp;               // Bp and BpOsd
  SpeculativeConfig spec;    // Speculative (carries its own BpConfig)
  OsdConfig osd;             // BpOsd

  static DecoderConfig plain_bp(BpConfig bp);
  static DecoderConfig speculative(SpeculativeConfig spec);
  static DecoderConfig bp_osd(BpConfig bp, OsdConfig osd);

  const BpConfig& inner_bp() const { return kind == DecoderKind::Speculative ? spec.bp : bp; }
  void validate() const;
  /// e.g. "BP50", "SPEC50-phi8-w1", "BP1000-OSD10".
  std::string label() const;
};

/// What a simulation decodes: a CSS code under code-capacity noise, or a
/// detector error model.
struct SimTarget {
  std::variant<CssCode, DetectorModel> problem;
  std::string name;
  std::optional<std::size_t> rounds;  // d for the per-round rate

  static SimTarget from_code(CssCode code);
  static SimTarget from_model(DetectorModel model, std::string name,
                              std::optional<std::size_t> rounds = std::nullopt);
  bool is_code() const { return std::holds_alternative<CssCode>(problem); }
};

struct StopRule {
  enum class Kind { Shots, LogicalErrors } kind = Kind::Shots;
  std::size_t count = 0;
  std::size_t max_shots = 10'000'000;  // cap for LogicalErrors

  static StopRule shots(std::size_t n) { return {Kind::Shots, n, n}; }
  static StopRule logical_errors(std::size_t n, std::size_t max_shots = 10'000'000) {
    return {Kind::LogicalErrors, n, max_shots};
  }
};

struct SimOptions {
  std::size_t threads = 1;
  std::size_t batch_size = 1000;  // fixed so results never depend on `threads`
};

struct SimReport {
  std::string target;
  std::string decoder;
  std::string damping;
  std::string noise;
  double p = 0.0;
  std::uint64_t seed = 0;

  std::size_t shots = 0;
  std::size_t logical_errors = 0;
  std::size_t nonconverged_shots = 0;  // shots where some decode never satisfied its syndrome
  double ler = 0.0;
  std::optional<double> ler_per_round;
  std::optional<std::size_t> d_rounds;

  // Per-decode statistics (two decodes per shot for CSS codes, one for a DEM).
  std::size_t decodes = 0;
  std::size_t bp_failures = 0;  // initial BP runs that did not converge
  double mean_iterations = 0.0;  // initial BP run, nonconverged counted at max_iters
  double mean_serial_iterations = 0.0;
  double mean_wall_iterations = 0.0;
  std::vector<std::size_t> iteration_histogram;  // [i-1] = decodes converged at iteration i
  std::vector<double> nonconvergence_curve;       // [i-1] = fraction not converged within i
  std::vector<std::size_t> source_counts;         // InitialBp, TestVector/OSD, Failure
  std::optional<double> precision_mean;           // over initial BP failures (speculative)
  std::optional<double> recall_mean;
  std::size_t precision_samples = 0;
};

/// 1 - (1 - ler)^(1/d).
double ler_per_round(double ler, std::size_t d);

/// Sample, decode and judge shots until the stop rule fires.
///
/// Shot i draws from Rng(seed, i), so the set of shots and every per-shot
/// result are independent of the thread count; aggregation runs in shot
/// order. LogicalErrors stops at the end of the first batch that reaches the
/// target.
SimReport run_sim(const SimTarget& target, const DecoderConfig& decoder, const NoiseSpec& noise,
                  const StopRule& stop, std::uint64_t seed, const SimOptions& options = {});

struct ShotPlan {
  std::size_t base_shots = 10'000;
  std::size_t low_ler_shots = 100'000;
  double low_ler_threshold = 1e-3;
};

struct ComplexityPoint {
  std::string decoder;
  double mean_serial_iterations = 0.0;
  double ler = 0.0;
  std::size_t shots = 0;
};

/// One (mean serial iterations, LER) point per decoder; points whose LER
/// falls below the threshold are rerun with the larger shot count.
std::vector<ComplexityPoint> complexity_curve(const SimTarget& target,
                                              const std::vector<DecoderConfig>& decoders,
                                              const NoiseSpec& noise, const ShotPlan& plan,
                                              std::uint64_t seed, const SimOptions& options = {});

// Result files.
std::string report_to_json(const SimReport& report);
/// Versioned header: a `#` schema comment followed by the column names.
std::string csv_header();
std::string csv_row(const SimReport& report);

}  // namespace qldpc
