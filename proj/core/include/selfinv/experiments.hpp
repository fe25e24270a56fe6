#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selfinv/stats.hpp"

namespace selfinv {

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t n = 0;  // 0 selects the experiment's documented default size
  double alpha = 0.01;
  double tol = 1e-8;
};

// One verified claim: the expected value, what was computed, the tolerance
// in force, and whether it held.
struct ClaimCheck {
  std::string claim;
  std::string expected;
  std::string observed;
  std::string tolerance;
  bool pass = false;
};

struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> specs;  // spec texts exercised
  std::vector<ClaimCheck> checks;
  std::vector<TestReport> reports;
  std::vector<CsvTable> tables;
  ExperimentConfig config;
};

// Fixed name order: discrete-table, shifted-uniform, laha-cauchy,
// corr-cauchy, prop2-roundtrip, prop2-nonselfinverse, cf-witness,
// fnn-selfinverse.
const std::vector<std::string>& experiment_names();

// Runs one named experiment. Validates name, n >= 1000, alpha in (0, 0.1].
ExperimentResult run_experiment(const ExperimentConfig& config);

// JSON summary of one result (seed, stream, n, alpha, spec texts, version,
// claims, reports, pass).
std::string experiment_to_json(const ExperimentResult& result);

}  // namespace selfinv
