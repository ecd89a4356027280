#include "qldpc/sim.h"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

namespace qldpc {

void NoiseSpec::validate() const {
  if (kind != NoiseKind::Dem && !(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("NoiseSpec: p must lie in (0, 0.5)");
  }
}

double NoiseSpec::sector_prior() const {
  return kind == NoiseKind::Depolarizing ? 2.0 * p / 3.0 : p;
}

DecodingProblem sector_problem(const CssCode& code, Sector sector, double prior) {
  const BinMatrix& h = sector == Sector::Z ? code.hx : code.hz;
  return {h, std::vector<double>(code.n, prior)};
}

BinVector sample_error(std::size_t n, double p, Rng& rng) {
  BinVector e(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(p)) e.set(i);
  }
  return e;
}

BinVector sample_error(const std::vector<double>& priors, Rng& rng) {
  BinVector e(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (rng.bernoulli(priors[i])) e.set(i);
  }
  return e;
}

PauliError sample_pauli_error(const NoiseSpec& noise, std::size_t n, Rng& rng) {
  PauliError err{BinVector(n), BinVector(n)};
  if (noise.kind == NoiseKind::CodeCapacity) {
    err.x = sample_error(n, noise.p, rng);
    err.z = sample_error(n, noise.p, rng);
  } else if (noise.kind == NoiseKind::Depolarizing) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!rng.bernoulli(noise.p)) continue;
      switch (rng.below(3)) {
        case 0:
          err.x.set(q);
          break;
        case 1:
          err.x.set(q);
          err.z.set(q);
          break;
        default:
          err.z.set(q);
      }
    }
  } else {
    throw std::invalid_argument("sample_pauli_error: DEM noise has no qubit errors");
  }
  return err;
}

namespace {

bool judge(const BinMatrix& checks, const BinMatrix& logicals, const BinVector& error,
           const BinVector& estimate, bool converged) {
  if (!converged) return true;
  if (mat_vec(checks, error) != mat_vec(checks, estimate)) {
    throw std::logic_error("decoder returned a converged estimate with the wrong syndrome");
  }
  return mat_vec(logicals, error ^ estimate).any();
}

}  // namespace

bool is_logical_failure(const CssCode& code, Sector sector, const BinVector& error,
                        const BinVector& estimate, bool converged) {
  return sector == Sector::Z ? judge(code.hx, code.lx, error, estimate, converged)
                             : judge(code.hz, code.lz, error, estimate, converged);
}

bool is_logical_failure(const DetectorModel& model, const BinVector& error,
                        const BinVector& estimate, bool converged) {
  return judge(model.checks, model.observables, error, estimate, converged);
}

DecoderConfig DecoderConfig::plain_bp(BpConfig bp) {
  DecoderConfig c;
  c.kind = DecoderKind::Bp;
  c.bp = bp;
  return c;
}

DecoderConfig DecoderConfig::speculative(SpeculativeConfig spec) {
  DecoderConfig c;
  c.kind = DecoderKind::Speculative;
  c.bp = spec.bp;
  c.spec = std::move(spec);
  return c;
}

DecoderConfig DecoderConfig::bp_osd(BpConfig bp, OsdConfig osd) {
  DecoderConfig c;
  c.kind = DecoderKind::BpOsd;
  c.bp = bp;
  c.osd = osd;
  return c;
}

void DecoderConfig::validate() const {
  if (kind == DecoderKind::Speculative) {
    spec.validate();
  } else {
    bp.validate();
  }
}

std::string DecoderConfig::label() const {
  std::ostringstream out;
  switch (kind) {
    case DecoderKind::Bp:
      out << "BP" << bp.max_iters;
      break;
    case DecoderKind::Speculative:
      out << "SPEC" << spec.bp.max_iters << "-phi" << spec.phi_size << "-w" << spec.w_max;
      if (spec.n_s > 0) out << "-ns" << spec.n_s;
      break;
    case DecoderKind::BpOsd:
      out << "BP" << bp.max_iters << "-OSD";
      if (osd.variant == OsdVariant::Osd0) {
        out << "0";
      } else {
        out << osd.order;
      }
      break;
  }
  return out.str();
}

SimTarget SimTarget::from_code(CssCode code) {
  SimTarget t;
  t.name = code.spec.name.empty() ? "code" : code.spec.name;
  t.problem = std::move(code);
  return t;
}

SimTarget SimTarget::from_model(DetectorModel model, std::string name,
                                std::optional<std::size_t> rounds) {
  SimTarget t;
  t.problem = std::move(model);
  t.name = std::move(name);
  t.rounds = rounds;
  return t;
}

double ler_per_round(double ler, std::size_t d) {
  if (d < 1) throw std::invalid_argument("ler_per_round: d must be >= 1");
  if (!(ler >= 0.0 && ler < 1.0)) throw std::invalid_argument("ler_per_round: ler must be in [0, 1)");
  if (d == 1) return ler;
  // 1 - exp(log1p(-ler)/d) keeps precision for small ler.
  return -std::expm1(std::log1p(-ler) / static_cast<double>(d));
}

namespace {

struct Task {
  MinSumDecoder decoder;
  BinMatrix logicals;
};

struct DecodeRecord {
  bool converged = false;
  bool failure = false;
  bool initial_converged = false;
  std::size_t initial_iterations = 0;
  std::size_t serial_iterations = 0;
  std::size_t wall_iterations = 0;
  int source = 0;  // 0 initial BP, 1 post-processing, 2 failure
  bool has_rates = false;
  HitRates rates;
};

struct ShotRecord {
  bool failure = false;
  bool nonconverged = false;
  std::vector<DecodeRecord> decodes;
};

DecodeRecord decode_one(const Task& task, const DecoderConfig& cfg, const BinVector& error,
                        Rng& rng) {
  const BinVector syndrome = task.decoder.syndrome_of(error);
  DecodeRecord rec;
  BinVector estimate;
  switch (cfg.kind) {
    case DecoderKind::Bp: {
      BpOutcome out = task.decoder.decode(syndrome, cfg.bp, false);
      rec.converged = rec.initial_converged = out.converged;
      rec.initial_iterations = rec.serial_iterations = rec.wall_iterations = out.iterations;
      rec.source = out.converged ? 0 : 2;
      estimate = std::move(out.e_hat);
      break;
    }
    case DecoderKind::Speculative: {
      SpeculativeResult out = speculative_decode(task.decoder, syndrome, cfg.spec, rng);
      rec.converged = out.success();
      rec.initial_converged = out.source == DecodeSource::InitialBp;
      rec.initial_iterations = out.initial_iterations;
      rec.serial_iterations = out.serial_iterations;
      rec.wall_iterations = out.wall_iterations;
      rec.source = out.source == DecodeSource::InitialBp ? 0
                   : out.source == DecodeSource::TestVector ? 1
                                                            : 2;
      if (!rec.initial_converged) {
        rec.has_rates = true;
        rec.rates = precision_recall(out.candidates.bits, error);
      }
      estimate = std::move(out.e_hat);
      break;
    }
    case DecoderKind::BpOsd: {
      BpOutcome out = task.decoder.decode(syndrome, cfg.bp, false);
      rec.initial_converged = out.converged;
      rec.initial_iterations = rec.serial_iterations = rec.wall_iterations = out.iterations;
      if (out.converged) {
        rec.converged = true;
        estimate = std::move(out.e_hat);
      } else if (auto osd = osd_decode(task.decoder.problem(), syndrome, out.llr_out, cfg.osd)) {
        rec.converged = true;
        rec.source = 1;
        estimate = std::move(*osd);
      } else {
        rec.source = 2;
        estimate = std::move(out.e_hat);
      }
      break;
    }
  }
  if (rec.converged && task.decoder.syndrome_of(estimate) != syndrome) {
    throw std::logic_error("decoder returned a converged estimate with the wrong syndrome");
  }
  rec.failure = !rec.converged || mat_vec(task.logicals, error ^ estimate).any();
  return rec;
}

}  // namespace

SimReport run_sim(const SimTarget& target, const DecoderConfig& decoder, const NoiseSpec& noise,
                  const StopRule& stop, std::uint64_t seed, const SimOptions& options) {
  decoder.validate();
  if (options.batch_size < 1) throw std::invalid_argument("run_sim: batch_size must be >= 1");

  std::vector<Task> tasks;
  std::vector<double> dem_priors;
  std::size_t num_qubits = 0;
  if (const auto* code = std::get_if<CssCode>(&target.problem)) {
    if (noise.kind == NoiseKind::Dem) {
      throw std::invalid_argument("run_sim: a CSS code target needs code-capacity noise");
    }
    noise.validate();
    num_qubits = code->n;
    tasks.push_back({MinSumDecoder(sector_problem(*code, Sector::Z, noise.sector_prior())), code->lx});
    tasks.push_back({MinSumDecoder(sector_problem(*code, Sector::X, noise.sector_prior())), code->lz});
  } else {
    const auto& model = std::get<DetectorModel>(target.problem);
    if (noise.kind != NoiseKind::Dem) {
      throw std::invalid_argument("run_sim: a detector model target needs DEM noise");
    }
    dem_priors = model.priors();
    tasks.push_back({MinSumDecoder(DecodingProblem{model.checks, dem_priors}), model.observables});
  }

  auto run_shot = [&](std::size_t shot) {
    Rng rng(seed, shot);
    ShotRecord rec;
    std::vector<BinVector> errors;
    if (target.is_code()) {
      PauliError pe = sample_pauli_error(noise, num_qubits, rng);
      errors.push_back(std::move(pe.z));  // Z errors -> H_X sector
      errors.push_back(std::move(pe.x));
    } else {
      errors.push_back(sample_error(dem_priors, rng));
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      Rng aux(seed, shot, t + 1);
      DecodeRecord d = decode_one(tasks[t], decoder, errors[t], aux);
      rec.failure = rec.failure || d.failure;
      rec.nonconverged = rec.nonconverged || !d.converged;
      rec.decodes.push_back(d);
    }
    return rec;
  };

  const std::size_t max_iters = decoder.inner_bp().max_iters;
  SimReport report;
  report.target = target.name;
  report.decoder = decoder.label();
  report.damping = decoder.inner_bp().damping_label();
  report.noise = noise.kind == NoiseKind::CodeCapacity   ? "capacity"
                 : noise.kind == NoiseKind::Depolarizing ? "depolarizing"
                                                         : "dem";
  report.p = noise.p;
  report.seed = seed;
  report.iteration_histogram.assign(max_iters, 0);
  report.source_counts.assign(3, 0);

  double initial_sum = 0, serial_sum = 0, wall_sum = 0, precision_sum = 0, recall_sum = 0;
  const std::size_t limit = stop.kind == StopRule::Kind::Shots ? stop.count : stop.max_shots;
  const int threads = static_cast<int>(std::max<std::size_t>(options.threads, 1));

  while (report.shots < limit) {
    if (stop.kind == StopRule::Kind::LogicalErrors && report.logical_errors >= stop.count) break;
    const std::size_t batch = std::min(options.batch_size, limit - report.shots);
    const std::size_t first = report.shots;
    std::vector<ShotRecord> records(batch);
    std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 8) num_threads(threads) if (threads > 1)
    for (std::size_t i = 0; i < batch; ++i) {
      try {
        records[i] = run_shot(first + i);
      } catch (...) {
#pragma omp critical
        error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);

    for (const ShotRecord& rec : records) {
      ++report.shots;
      report.logical_errors += rec.failure ? 1 : 0;
      report.nonconverged_shots += rec.nonconverged ? 1 : 0;
      for (const DecodeRecord& d : rec.decodes) {
        ++report.decodes;
        initial_sum += static_cast<double>(d.initial_iterations);
        serial_sum += static_cast<double>(d.serial_iterations);
        wall_sum += static_cast<double>(d.wall_iterations);
        if (d.initial_converged) {
          ++report.iteration_histogram[d.initial_iterations - 1];
        } else {
          ++report.bp_failures;
        }
        ++report.source_counts[static_cast<std::size_t>(d.source)];
        if (d.has_rates) {
          ++report.precision_samples;
          precision_sum += d.rates.precision;
          recall_sum += d.rates.recall;
        }
      }
    }
  }

  if (report.shots > 0) {
    report.ler = static_cast<double>(report.logical_errors) / static_cast<double>(report.shots);
  }
  if (report.decodes > 0) {
    const double decodes = static_cast<double>(report.decodes);
    report.mean_iterations = initial_sum / decodes;
    report.mean_serial_iterations = serial_sum / decodes;
    report.mean_wall_iterations = wall_sum / decodes;
    std::size_t converged = 0;
    report.nonconvergence_curve.reserve(max_iters);
    for (std::size_t count : report.iteration_histogram) {
      converged += count;
      report.nonconvergence_curve.push_back(1.0 - static_cast<double>(converged) / decodes);
    }
  }
  if (report.precision_samples > 0) {
    const double n = static_cast<double>(report.precision_samples);
    report.precision_mean = precision_sum / n;
    report.recall_mean = recall_sum / n;
  }
  if (target.rounds) {
    report.d_rounds = target.rounds;
    if (report.ler < 1.0) report.ler_per_round = ler_per_round(report.ler, *target.rounds);
  }
  return report;
}

std::vector<ComplexityPoint> complexity_curve(const SimTarget& target,
                                              const std::vector<DecoderConfig>& decoders,
                                              const NoiseSpec& noise, const ShotPlan& plan,
                                              std::uint64_t seed, const SimOptions& options) {
  std::vector<ComplexityPoint> points;
  for (const DecoderConfig& cfg : decoders) {
    SimReport r = run_sim(target, cfg, noise, StopRule::shots(plan.base_shots), seed, options);
    if (r.ler < plan.low_ler_threshold && plan.low_ler_shots > plan.base_shots) {
      r = run_sim(target, cfg, noise, StopRule::shots(plan.low_ler_shots), seed, options);
    }
    points.push_back({cfg.label(), r.mean_serial_iterations, r.ler, r.shots});
  }
  return points;
}

}  // namespace qldpc
