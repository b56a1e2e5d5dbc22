#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbloch/variational.hpp"

namespace qbloch {

struct AcceptanceOptions {
  std::filesystem::path data_dir = "data";
  std::uint64_t seed = 7;  // random five-term pairs and the battery fallback
  SolverConfig solver;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs criteria 1..11 in order. A criterion that throws is reported as failed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// The random-q-term battery: data_dir/battery/*.json in name order, or
/// random_battery(60, seed) when fewer than 50 files are present.
std::vector<QTerm> load_battery(const AcceptanceOptions& opts);

/// "PASS  3  critical values: ... (0.01 s)"
std::string format_result(const CriterionResult& r);

}  // namespace qbloch
