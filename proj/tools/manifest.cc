#include "manifest.h"

#include <cstdio>

#include "json.hpp"

namespace qldpc::cli {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void append_matrix(std::string& out, const char* tag, const BinMatrix& m) {
  out += tag;
  out += ' ' + m.shape_string() + '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) out += m.row(r).to_string() + '\n';
}

}  // namespace

std::string problem_hash(const CssCode& code) {
  std::string text;
  append_matrix(text, "hx", code.hx);
  append_matrix(text, "hz", code.hz);
  return fnv1a_hex(text);
}

std::string problem_hash(const DetectorModel& model) { return fnv1a_hex(serialize_dem(model)); }

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["kind"] = "qldpc-run-manifest";
  j["version"] = m.version;
  j["command_line"] = m.command_line;
  j["resolved_args"] = m.resolved_args;
  j["config"] = m.config;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  j["input"] = {{"kind", m.input_kind}, {"source", m.input_source}, {"hash", m.input_hash}};
  j["outputs"] = {{"csv", m.csv_path}, {"csv_hash", m.csv_hash}, {"json", m.json_path}};
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  auto j = nlohmann::json::parse(text);
  if (j.value("kind", "") != "qldpc-run-manifest") {
    throw std::runtime_error("not a qldpc run manifest");
  }
  RunManifest m;
  m.version = j.at("version").get<std::string>();
  m.command_line = j.at("command_line").get<std::vector<std::string>>();
  m.resolved_args = j.at("resolved_args").get<std::vector<std::string>>();
  m.config = j.at("config").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.threads = j.at("threads").get<std::size_t>();
  const auto& in = j.at("input");
  m.input_kind = in.at("kind").get<std::string>();
  m.input_source = in.at("source").get<std::string>();
  m.input_hash = in.at("hash").get<std::string>();
  const auto& out = j.at("outputs");
  m.csv_path = out.at("csv").get<std::string>();
  m.csv_hash = out.at("csv_hash").get<std::string>();
  m.json_path = out.at("json").get<std::string>();
  return m;
}

}  // namespace qldpc::cli
