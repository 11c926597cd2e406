#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fsl {

struct SuiteOptions {
  double s = 0.75;
  int k = 6;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 3};
  std::size_t draws = 128;
  std::vector<std::string> kinds;  // estimate kinds; empty = suite default
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  nlohmann::json document;
  std::vector<std::string> failures;
};

// nprops, factorization, norms, estimates, dispersive, measure
const std::vector<std::string>& suite_names();

// Throws InvalidArgument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// Writes <dir>/<name>.json and returns the path.
std::filesystem::path write_suite(const std::filesystem::path& dir, const SuiteResult& result);

// Collects every report document (*.json carrying a "passed" key) under dir
// into one summary; unreadable files are listed under "unreadable".
nlohmann::json aggregate_reports(const std::filesystem::path& dir);

}  // namespace fsl
