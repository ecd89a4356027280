#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/codes.h"
#include "qldpc/dem.h"

namespace qldpc::cli {

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Identity of a decoding problem: hash over the check and logical matrices.
std::string problem_hash(const CssCode& code);
std::string problem_hash(const DetectorModel& model);

/// Everything needed to rerun a simulate invocation bit-identically.
struct RunManifest {
  std::string version;
  std::vector<std::string> command_line;   // as typed
  std::vector<std::string> resolved_args;  // config file expanded, replayable
  std::string config;                      // effective option values
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string input_kind;  // builtin | spec | dem
  std::string input_source;
  std::string input_hash;
  std::string csv_path;
  std::string csv_hash;
  std::string json_path;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(std::string_view text);

}  // namespace qldpc::cli
