#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "certnorm/report.hpp"
#include "certnorm/sdp.hpp"

// Seeded property suites over random instances. Each property records a
// worst-case slack (>= 0 passes); the first failing instance is kept in
// serialized form for replay.

namespace certnorm::suites {

struct PropertyResult {
  std::string name;
  int pass = 0;
  int fail = 0;
  double worst_slack = 0.0;
  bool has_worst = false;
  Json failure_instance;  // null unless a failure occurred
  bool has_failure = false;
};

struct SuiteReport {
  std::string suite;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool all_pass = true;
};

const std::vector<std::string>& suite_names();

SuiteReport run_suite(const std::string& name, int n, int trials, std::uint64_t seed,
                      const sdp::SolveOptions& opts = {});

Json suite_report_to_json(const SuiteReport& report);

}  // namespace certnorm::suites
