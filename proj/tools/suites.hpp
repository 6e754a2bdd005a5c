#pragma once

#include <cstdint>
#include <string>

#include "discord/io.hpp"

namespace discord::suites {

struct Options {
  std::uint64_t seed = 1;
  int prop2_samples = 20000;
  int instances = 60;        // identity/equilibrium instance count
  int search_instances = 20; // theorem-1 instance count
};

// Each suite returns {"name", "passed", "checks": [...]}.
json run_identities(const Options& opt);
json run_equilibrium(const Options& opt);
json run_gradients(const Options& opt);
json run_prop1(const Options& opt);
json run_prop2(const Options& opt);
json run_theorem1(const Options& opt);
json run_prop3(const Options& opt);

/// Runs one suite by name, or every suite for "all". The report's "passed"
/// field aggregates all checks.
json run_suite(const std::string& name, const Options& opt);

}  // namespace discord::suites
