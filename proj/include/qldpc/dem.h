#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/gf2.h"

namespace qldpc {

struct Mechanism {
  double probability = 0.0;
  std::vector<std::size_t> detectors;    // sorted, unique
  std::vector<std::size_t> observables;  // sorted, unique

  friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

/// Circuit-level decoding problem: column j of `checks` / `observables`
/// is mechanism j.
struct DetectorModel {
  std::size_t num_detectors = 0;
  std::size_t num_observables = 0;
  std::vector<Mechanism> mechanisms;
  BinMatrix checks;       // detectors x mechanisms
  BinMatrix observables;  // observables x mechanisms

  std::vector<double> priors() const;
  std::size_t num_mechanisms() const { return mechanisms.size(); }

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

class DemParseError : public std::runtime_error {
 public:
  DemParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Builds H and O from the mechanism list; validates ids and priors.
DetectorModel make_detector_model(std::size_t num_detectors, std::size_t num_observables,
                                  std::vector<Mechanism> mechanisms);

/// Parses the supported DEM dialect: error, detector, logical_observable,
/// shift_detectors, repeat blocks and `#` comments.
///
/// Components of an error joined by `^` are merged into one mechanism whose
/// detector and observable sets are the symmetric differences of the parts.
/// Zero-probability errors are dropped; p >= 0.5 is rejected.
DetectorModel parse_dem(std::string_view text);

/// Native JSON problem:
/// {"num_detectors", "num_observables", "mechanisms": [{"p", "detectors", "observables"}]}
DetectorModel parse_dem_json(std::string_view text);
std::string to_dem_json(const DetectorModel& model);

/// Flat DEM text; parse_dem(serialize_dem(m)) == m.
std::string serialize_dem(const DetectorModel& model);

/// Merges mechanisms with identical signatures: p <- p1(1-p2) + p2(1-p1).
/// Survivors keep the position of their first occurrence.
DetectorModel merge_duplicates(const DetectorModel& model);

/// Loads .dem or .json by extension (anything but .json is read as DEM text).
DetectorModel load_detector_model(const std::string& path);

}  // namespace qldpc
