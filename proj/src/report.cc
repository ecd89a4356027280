#include <cstdio>

#include "json.hpp"

#include "qldpc/sim.h"

namespace qldpc {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string report_to_json(const SimReport& r) {
  nlohmann::ordered_json j;
  j["target"] = r.target;
  j["decoder"] = r.decoder;
  j["damping"] = r.damping;
  j["noise"] = r.noise;
  j["p"] = r.p;
  j["seed"] = r.seed;
  j["shots"] = r.shots;
  j["logical_errors"] = r.logical_errors;
  j["nonconverged_shots"] = r.nonconverged_shots;
  j["ler"] = r.ler;
  j["ler_per_round"] = r.ler_per_round ? nlohmann::ordered_json(*r.ler_per_round) : nullptr;
  j["d_rounds"] = r.d_rounds ? nlohmann::ordered_json(*r.d_rounds) : nullptr;
  j["decodes"] = r.decodes;
  j["bp_failures"] = r.bp_failures;
  j["mean_iterations"] = r.mean_iterations;
  j["mean_serial_iterations"] = r.mean_serial_iterations;
  j["mean_wall_iterations"] = r.mean_wall_iterations;
  j["iteration_histogram"] = r.iteration_histogram;
  j["nonconvergence_curve"] = r.nonconvergence_curve;
  j["source_counts"] = {{"initial_bp", r.source_counts.at(0)},
                        {"post_processing", r.source_counts.at(1)},
                        {"failure", r.source_counts.at(2)}};
  j["precision_mean"] = r.precision_mean ? nlohmann::ordered_json(*r.precision_mean) : nullptr;
  j["recall_mean"] = r.recall_mean ? nlohmann::ordered_json(*r.recall_mean) : nullptr;
  j["precision_samples"] = r.precision_samples;
  return j.dump(2) + "\n";
}

std::string csv_header() {
  return "# qldpc-sim-csv v1: p,shots,errors,ler,ler_per_round,mean_iters "
         "(mean_iters = mean serial BP iterations per decode; empty ler_per_round when no rounds)\n"
         "p,shots,errors,ler,ler_per_round,mean_iters\n";
}

std::string csv_row(const SimReport& r) {
  return fmt(r.p) + "," + std::to_string(r.shots) + "," + std::to_string(r.logical_errors) + "," +
         fmt(r.ler) + "," + (r.ler_per_round ? fmt(*r.ler_per_round) : std::string()) + "," +
         fmt(r.mean_serial_iterations) + "\n";
}

}  // namespace qldpc
