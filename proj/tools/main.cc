// qldpc: construct codes, decode single syndromes, run Monte Carlo studies.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.h"
#include "qldpc/bp.h"
#include "qldpc/codes.h"
#include "qldpc/dem.h"
#include "qldpc/osd.h"
#include "qldpc/sim.h"
#include "qldpc/speculative.h"

#ifndef QLDPC_VERSION
#define QLDPC_VERSION "unversioned"
#endif

namespace fs = std::filesystem;
using namespace qldpc;

namespace {

// Bad flag combinations and unusable inputs; reported without a stack of context.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out.empty() ? "-" : out;
}

// ---------------------------------------------------------------------------
// Problem sources

struct ProblemArgs {
  std::string builtin;
  std::string spec;
  std::string dem;
  bool no_merge = false;
};

void add_problem_options(CLI::App* app, ProblemArgs& a) {
  auto* b = app->add_option("--builtin", a.builtin, "Builtin code: bb72 bb144 bb288 cbb126 cbb154 gb254");
  auto* s = app->add_option("--spec", a.spec, "Code specification file");
  auto* d = app->add_option("--dem", a.dem, "Detector error model, .dem text or native .json");
  b->excludes(s)->excludes(d);
  s->excludes(d);
  app->add_flag("--no-merge", a.no_merge, "Keep DEM mechanisms with identical signatures separate");
}

struct Problem {
  std::optional<CssCode> code;
  std::optional<DetectorModel> model;
  std::string name;
  std::string kind;
  std::string source;
  std::string hash;
};

Problem load_problem(const ProblemArgs& a) {
  Problem p;
  if (!a.builtin.empty()) {
    try {
      p.code = build_code(builtin_code_spec(a.builtin));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    p.kind = "builtin";
    p.source = a.builtin;
  } else if (!a.spec.empty()) {
    CodeSpec spec;
    try {
      spec = parse_code_spec(read_text(a.spec));
    } catch (const SpecParseError& e) {
      throw UsageError(a.spec + ": " + e.what());
    }
    if (spec.name.empty()) spec.name = fs::path(a.spec).stem().string();
    p.code = build_code(spec);
    p.kind = "spec";
    p.source = a.spec;
  } else if (!a.dem.empty()) {
    try {
      p.model = load_detector_model(a.dem);
    } catch (const DemParseError& e) {
      throw UsageError(a.dem + ": " + e.what());
    }
    if (!a.no_merge) p.model = merge_duplicates(*p.model);
    p.kind = "dem";
    p.source = a.dem;
    p.name = fs::path(a.dem).stem().string();
    p.hash = cli::problem_hash(*p.model);
    return p;
  } else {
    throw UsageError("one of --builtin, --spec or --dem is required");
  }
  p.name = p.code->spec.name;
  p.hash = cli::problem_hash(*p.code);
  return p;
}

// ---------------------------------------------------------------------------
// Decoder flags

struct DecoderArgs {
  std::string decoder = "bp";
  std::size_t max_iters = 50;
  std::string damping = "adaptive";
  std::size_t phi = 8;
  std::size_t wmax = 1;
  std::size_t ns = 0;
  bool exhaustive = false;
  std::string osd = "cs";
  std::size_t osd_order = 10;
};

void add_decoder_options(CLI::App* app, DecoderArgs& a) {
  app->add_option("--decoder", a.decoder, "bp, spec or bposd")
      ->check(CLI::IsMember({"bp", "spec", "bposd"}))
      ->capture_default_str();
  app->add_option("--max-iters", a.max_iters, "BP iteration limit")->capture_default_str();
  app->add_option("--damping", a.damping, "adaptive, or fixed:<alpha>")->capture_default_str();
  app->add_option("--phi", a.phi, "Candidate set size")->capture_default_str();
  app->add_option("--wmax", a.wmax, "Largest test-vector weight")->capture_default_str();
  app->add_option("--ns", a.ns, "Test vectors sampled per weight (0 = all)")->capture_default_str();
  app->add_flag("--exhaustive", a.exhaustive, "Enumerate every test vector (requires --ns 0)");
  app->add_option("--osd", a.osd, "OSD variant: cs or 0")
      ->check(CLI::IsMember({"cs", "0"}))
      ->capture_default_str();
  app->add_option("--osd-order", a.osd_order, "Combination sweep order")->capture_default_str();
}

BpConfig make_bp(const DecoderArgs& a) {
  BpConfig bp;
  bp.max_iters = a.max_iters;
  if (a.damping == "adaptive") {
    bp.damping = DampingRule::Adaptive;
  } else if (a.damping.rfind("fixed:", 0) == 0) {
    bp.damping = DampingRule::Fixed;
    try {
      bp.fixed_alpha = std::stod(a.damping.substr(6));
    } catch (const std::exception&) {
      throw UsageError("--damping: cannot read alpha in '" + a.damping + "'");
    }
  } else {
    throw UsageError("--damping must be 'adaptive' or 'fixed:<alpha>'");
  }
  return bp;
}

DecoderConfig make_decoder(const DecoderArgs& a, std::size_t parallelism) {
  if (a.exhaustive && a.ns > 0) throw UsageError("--exhaustive conflicts with --ns " + std::to_string(a.ns));
  BpConfig bp = make_bp(a);
  DecoderConfig cfg;
  if (a.decoder == "bp") {
    cfg = DecoderConfig::plain_bp(bp);
  } else if (a.decoder == "spec") {
    SpeculativeConfig s;
    s.phi_size = a.phi;
    s.w_max = a.wmax;
    s.n_s = a.ns;
    s.bp = bp;
    s.parallelism = parallelism;
    cfg = DecoderConfig::speculative(s);
  } else {
    OsdConfig osd;
    osd.variant = a.osd == "0" ? OsdVariant::Osd0 : OsdVariant::CombinationSweep;
    osd.order = a.osd_order;
    cfg = DecoderConfig::bp_osd(bp, osd);
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// code

struct CodeArgs {
  ProblemArgs problem;
  std::optional<std::size_t> distance_budget;
  std::string export_prefix;
};

void write_matrix(const std::string& path, const BinMatrix& m) {
  std::string text;
  for (std::size_t r = 0; r < m.rows(); ++r) text += m.row(r).to_string() + "\n";
  write_text(path, text);
}

int cmd_code(const CodeArgs& a) {
  if (!a.problem.dem.empty()) throw UsageError("code takes --builtin or --spec, not --dem");
  Problem p = load_problem(a.problem);
  const CssCode& code = *p.code;
  const bool css = mul(code.hx, code.hz.transpose()).is_zero();
  std::cout << "code: " << p.name << " (" << format_code_spec(code.spec) << ")\n";
  std::cout << "n=" << code.n << " k=" << code.k << "\n";
  std::cout << "rank_hx=" << rank(code.hx) << " rank_hz=" << rank(code.hz) << "\n";
  std::cout << "css_check=" << (css ? "pass" : "FAIL") << "\n";
  if (a.distance_budget) {
    std::cout << "distance_upper_bound=" << min_weight_logical_upper_bound(code, *a.distance_budget)
              << " (" << *a.distance_budget << " trials)\n";
  }
  if (!a.export_prefix.empty()) {
    write_matrix(a.export_prefix + ".hx.txt", code.hx);
    write_matrix(a.export_prefix + ".hz.txt", code.hz);
    write_matrix(a.export_prefix + ".lx.txt", code.lx);
    write_matrix(a.export_prefix + ".lz.txt", code.lz);
    std::cout << "exported " << a.export_prefix << ".{hx,hz,lx,lz}.txt\n";
  }
  return css ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decode

struct DecodeArgs {
  ProblemArgs problem;
  DecoderArgs decoder;
  std::string sector = "z";
  double p = 0.05;
  std::vector<std::size_t> error;
  std::string syndrome;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

BinVector read_syndrome(const std::string& source, std::size_t checks) {
  if (source == "zeros") return BinVector(checks);
  std::string text = read_text(source);
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
      throw UsageError(source + ": syndrome files hold only 0 and 1");
    }
  }
  if (bits.size() != checks) {
    throw UsageError(source + ": syndrome has " + std::to_string(bits.size()) + " bits, expected " +
                     std::to_string(checks));
  }
  return BinVector::from_bits(bits);
}

int cmd_decode(const DecodeArgs& a) {
  Problem p = load_problem(a.problem);
  DecoderConfig cfg = make_decoder(a.decoder, a.threads);

  DecodingProblem dp;
  BinMatrix logicals;
  std::string where;
  if (p.code) {
    if (!(a.p > 0.0 && a.p < 0.5)) throw UsageError("--p must lie in (0, 0.5)");
    Sector sector = a.sector == "x" ? Sector::X : Sector::Z;
    dp = sector_problem(*p.code, sector, a.p);
    logicals = sector == Sector::Z ? p.code->lx : p.code->lz;
    where = " sector=" + a.sector;
  } else {
    dp = {p.model->checks, p.model->priors()};
    logicals = p.model->observables;
  }
  MinSumDecoder decoder(dp);

  if (a.error.empty() == a.syndrome.empty()) throw UsageError("give exactly one of --error or --syndrome");
  std::optional<BinVector> error;
  BinVector syndrome;
  if (!a.error.empty()) {
    for (std::size_t bit : a.error) {
      if (bit >= decoder.num_bits()) {
        throw UsageError("--error bit " + std::to_string(bit) + " out of range for " +
                         std::to_string(decoder.num_bits()) + " bits");
      }
    }
    error = BinVector(decoder.num_bits());
    for (std::size_t bit : a.error) error->flip(bit);
    syndrome = decoder.syndrome_of(*error);
  } else {
    syndrome = read_syndrome(a.syndrome, decoder.num_checks());
  }

  bool converged = false;
  std::string method;
  std::size_t iterations = 0, serial = 0, wall = 0;
  BinVector estimate;
  Rng rng(a.seed);
  switch (cfg.kind) {
    case DecoderKind::Bp: {
      BpOutcome out = decoder.decode(syndrome, cfg.bp, false);
      converged = out.converged;
      method = converged ? "InitialBp" : "Failure";
      iterations = serial = wall = out.iterations;
      estimate = out.e_hat;
      break;
    }
    case DecoderKind::Speculative: {
      SpeculativeResult out = speculative_decode(decoder, syndrome, cfg.spec, rng);
      converged = out.success();
      method = out.label();
      iterations = out.initial_iterations;
      serial = out.serial_iterations;
      wall = out.wall_iterations;
      estimate = out.e_hat;
      if (!out.candidates.bits.empty()) {
        std::cout << "candidates: " << join(out.candidates.bits) << (out.candidates.padded ? " (padded)" : "")
                  << "\n";
      }
      break;
    }
    case DecoderKind::BpOsd: {
      BpOutcome out = decoder.decode(syndrome, cfg.bp, false);
      iterations = serial = wall = out.iterations;
      converged = out.converged;
      method = "InitialBp";
      estimate = out.e_hat;
      if (!converged) {
        if (auto osd = osd_decode(dp, syndrome, out.llr_out, cfg.osd)) {
          converged = true;
          method = "Osd";
          estimate = *osd;
        } else {
          method = "Failure";
        }
      }
      break;
    }
  }
  const bool satisfied = decoder.syndrome_of(estimate) == syndrome;

  std::cout << "problem: " << p.name << where << " checks=" << decoder.num_checks()
            << " bits=" << decoder.num_bits() << "\n";
  std::cout << "decoder: " << cfg.label() << " damping=" << cfg.inner_bp().damping_label() << "\n";
  std::cout << "method: " << method << "\n";
  std::cout << "converged: " << (converged ? "yes" : "no") << "\n";
  std::cout << "iterations: " << iterations << " (serial " << serial << ", wall " << wall << ")\n";
  std::cout << "syndrome_check: " << (satisfied ? "pass" : "fail") << "\n";
  std::cout << "estimate: " << join(estimate.support()) << "\n";
  if (error && converged) {
    bool logical = mat_vec(logicals, *error ^ estimate).any();
    std::cout << "logical: " << (logical ? "error" : "ok") << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  ProblemArgs problem;
  DecoderArgs decoder;
  std::string noise;
  std::string stop = "shots:10000";
  std::size_t max_shots = 10'000'000;
  std::optional<std::size_t> rounds;
  std::optional<double> label_p;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string out = "qldpc-sim";
  std::string config;
};

struct NoiseGrid {
  NoiseKind kind = NoiseKind::CodeCapacity;
  std::vector<double> ps;
};

NoiseGrid parse_noise(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--noise must look like capacity:<p>[,<p>...]");
  NoiseGrid g;
  std::string kind = text.substr(0, colon);
  if (kind == "capacity") {
    g.kind = NoiseKind::CodeCapacity;
  } else if (kind == "depolarizing") {
    g.kind = NoiseKind::Depolarizing;
  } else {
    throw UsageError("--noise kind must be capacity or depolarizing, got '" + kind + "'");
  }
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    try {
      std::size_t used = 0;
      double p = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      g.ps.push_back(p);
    } catch (const std::exception&) {
      throw UsageError("--noise: cannot read probability '" + item + "'");
    }
  }
  if (g.ps.empty()) throw UsageError("--noise lists no probabilities");
  return g;
}

StopRule parse_stop(const std::string& text, std::size_t max_shots) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::size_t count = 0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    count = std::stoull(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--stop must be shots:<N> or errors:<N>");
  }
  if (count == 0) throw UsageError("--stop count must be positive");
  if (kind == "shots") return StopRule::shots(count);
  if (kind == "errors") return StopRule::logical_errors(count, max_shots);
  throw UsageError("--stop must be shots:<N> or errors:<N>");
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& app, const std::vector<std::string>& argv,
                 const std::vector<std::string>& resolved) {
  Problem p = load_problem(a.problem);
  DecoderConfig cfg = make_decoder(a.decoder, 1);
  StopRule stop = parse_stop(a.stop, a.max_shots);

  std::vector<NoiseSpec> noises;
  SimTarget target;
  if (p.code) {
    if (a.noise.empty()) throw UsageError("code targets need --noise capacity:<p> or depolarizing:<p>");
    if (a.label_p) throw UsageError("--label-p only applies to --dem runs");
    NoiseGrid grid = parse_noise(a.noise);
    for (double x : grid.ps) {
      NoiseSpec n{grid.kind, x};
      try {
        n.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      noises.push_back(n);
    }
    target = SimTarget::from_code(*p.code);
    target.rounds = a.rounds;
  } else {
    if (!a.noise.empty()) throw UsageError("--noise does not apply to --dem; the model carries its priors");
    noises.push_back(NoiseSpec::dem());
    target = SimTarget::from_model(*p.model, p.name, a.rounds);
  }

  std::string csv = csv_header();
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  SimOptions options;
  options.threads = a.threads;
  for (const NoiseSpec& noise : noises) {
    SimReport r = run_sim(target, cfg, noise, stop, *a.seed, options);
    if (a.label_p) r.p = *a.label_p;
    csv += csv_row(r);
    reports.push_back(nlohmann::ordered_json::parse(report_to_json(r)));
    std::cout << r.target << " " << r.decoder << " " << r.noise << " p=" << r.p << " shots=" << r.shots
              << " errors=" << r.logical_errors << " ler=" << r.ler;
    if (r.ler_per_round) std::cout << " ler_per_round=" << *r.ler_per_round;
    std::cout << " mean_iters=" << r.mean_serial_iterations << "\n";
  }

  cli::RunManifest m;
  m.version = QLDPC_VERSION;
  m.command_line = argv;
  m.resolved_args = resolved;
  m.config = app.config_to_str(true, false);
  m.seed = *a.seed;
  m.threads = a.threads;
  m.input_kind = p.kind;
  m.input_source = p.source;
  m.input_hash = p.hash;
  m.csv_path = a.out + ".csv";
  m.json_path = a.out + ".json";
  m.csv_hash = cli::fnv1a_hex(csv);
  write_text(m.csv_path, csv);
  write_text(m.json_path, reports.dump(2) + "\n");
  write_text(a.out + ".manifest.json", cli::manifest_to_json(m));
  std::cout << "wrote " << m.csv_path << ", " << m.json_path << ", " << a.out << ".manifest.json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// config files and argument plumbing

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& s) { return s == flag || s.rfind(flag + "=", 0) == 0; });
}

// Expands `--config FILE` into flags the command line did not already set.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  if (!fs::exists(path)) throw UsageError("--config: cannot read " + path);
  std::vector<std::string> extra;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name.empty() || name == "config" || has_flag(out, "--" + name)) continue;
    std::string value;
    for (const std::string& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    if (value == "true") {
      extra.push_back("--" + name);
    } else if (value != "false") {
      extra.push_back("--" + name);
      extra.push_back(value);
    }
  }
  // Config values go right after the subcommand so positional use is unaffected.
  out.insert(out.begin() + (out.empty() ? 0 : 1), extra.begin(), extra.end());
  return out;
}

std::vector<std::string> replace_flag(std::vector<std::string> args, const std::string& flag,
                                      const std::string& value) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == flag) {
      ++i;
    } else if (args[i].rfind(flag + "=", 0) != 0) {
      out.push_back(args[i]);
    }
  }
  out.push_back(flag);
  out.push_back(value);
  return out;
}

int run(const std::vector<std::string>& argv);

int cmd_replay(const std::string& manifest_path, const std::string& out,
               std::optional<std::size_t> threads) {
  cli::RunManifest m = cli::manifest_from_json(read_text(manifest_path));
  std::vector<std::string> args = m.resolved_args;
  if (!out.empty()) args = replace_flag(args, "--out", out);
  if (threads) args = replace_flag(args, "--threads", std::to_string(*threads));
  std::cout << "replaying " << manifest_path << " (recorded by " << m.version << ")\n";
  if (int rc = run(args); rc != 0) return rc;
  std::string prefix = out;
  if (prefix.empty()) prefix = m.csv_path.substr(0, m.csv_path.size() - 4);
  std::string hash = cli::fnv1a_hex(read_text(prefix + ".csv"));
  if (hash != m.csv_hash) {
    std::cout << "replay: csv differs (" << hash << " vs recorded " << m.csv_hash << ")\n";
    return 3;
  }
  std::cout << "replay: csv identical (" << hash << ")\n";
  return 0;
}

int run(const std::vector<std::string>& argv) {
  CLI::App app{"Quantum LDPC decoding toolkit: min-sum BP, speculative post-processing, BP-OSD."};
  app.set_version_flag("--version", std::string(QLDPC_VERSION));
  app.require_subcommand(1);

  CodeArgs code_args;
  auto* code = app.add_subcommand("code", "Build a code and report its parameters");
  add_problem_options(code, code_args.problem);
  code->add_option("--distance", code_args.distance_budget,
                   "Randomized trials for an upper bound on the Z distance");
  code->add_option("--export", code_args.export_prefix, "Write hx, hz, lx, lz as 0/1 text");

  DecodeArgs decode_args;
  auto* decode = app.add_subcommand("decode", "Decode one syndrome and show what happened");
  add_problem_options(decode, decode_args.problem);
  add_decoder_options(decode, decode_args.decoder);
  decode->add_option("--sector", decode_args.sector, "Code sector: z (hx) or x (hz)")
      ->check(CLI::IsMember({"x", "z"}))
      ->capture_default_str();
  decode->add_option("--p", decode_args.p, "Per-bit prior for code targets")->capture_default_str();
  decode->add_option("--error", decode_args.error, "Bits of a synthetic error, comma separated")
      ->delimiter(',');
  decode->add_option("--syndrome", decode_args.syndrome, "'zeros' or a file of 0/1 characters");
  decode->add_option("--seed", decode_args.seed, "Seed for sampled test vectors")->capture_default_str();
  decode->add_option("--threads", decode_args.threads, "Threads for the test-vector batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo logical error rates; writes CSV, JSON, manifest");
  add_problem_options(sim, sim_args.problem);
  add_decoder_options(sim, sim_args.decoder);
  sim->add_option("--noise", sim_args.noise, "capacity:<p>[,<p>...] or depolarizing:<p>[,...]");
  sim->add_option("--stop", sim_args.stop, "shots:<N> or errors:<N>")->capture_default_str();
  sim->add_option("--max-shots", sim_args.max_shots, "Shot cap for errors:<N>")->capture_default_str();
  sim->add_option("--rounds", sim_args.rounds, "Syndrome rounds d, enables ler_per_round")
      ->check(CLI::PositiveNumber);
  sim->add_option("--label-p", sim_args.label_p, "Physical rate recorded in the p column of DEM runs");
  sim->add_option("--seed", sim_args.seed, "Master seed (required)")->required();
  sim->add_option("--threads", sim_args.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim->add_option("--out", sim_args.out, "Output prefix")->capture_default_str();
  sim->add_option("--config", sim_args.config, "key=value file supplying defaults for these flags");

  std::string manifest_path, replay_out;
  std::optional<std::size_t> replay_threads;
  auto* replay = app.add_subcommand("replay", "Rerun a simulate manifest and compare the CSV");
  replay->add_option("manifest", manifest_path, "Manifest written by simulate")->required();
  replay->add_option("--out", replay_out, "Output prefix (default: the recorded one)");
  replay->add_option("--threads", replay_threads, "Override the thread count")->check(CLI::PositiveNumber);

  std::vector<std::string> resolved;
  try {
    resolved = expand_config(argv);
    std::vector<std::string> reversed(resolved.rbegin(), resolved.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (code->parsed()) return cmd_code(code_args);
    if (decode->parsed()) return cmd_decode(decode_args);
    if (sim->parsed()) return cmd_simulate(sim_args, *sim, argv, resolved);
    return cmd_replay(manifest_path, replay_out, replay_threads);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(std::vector<std::string>(argv + 1, argv + argc)); }
