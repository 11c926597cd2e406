#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace fsl {

/// Min/max of one measured dimensionless ratio (LHS / RHS) over a sweep.
struct RatioItem {
  std::string name;
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
  std::size_t count = 0;

  void add(double ratio);
  // Tightest C with every ratio in [1/C, C]; only meaningful for two-sided
  // (comparability) items.
  double bracket() const;
};

/// Outcome of a numerical inequality sweep. `c_star` is the worst measured
/// constant; `stable` records whether it survived doubling the sample family.
struct RatioReport {
  std::string kind;
  nlohmann::json parameters = nlohmann::json::object();
  std::size_t draws = 0;
  std::size_t skipped = 0;
  std::vector<RatioItem> items;
  double c_star = 0.0;
  double c_star_half = 0.0;  // C* over the first half of the family
  bool stable = false;
  bool passed = false;
  std::vector<std::string> notes;

  RatioItem& item(const std::string& name);
  const RatioItem* find(const std::string& name) const;
};

nlohmann::json to_json(const RatioItem& item);
nlohmann::json to_json(const RatioReport& report);
RatioReport ratio_report_from_json(const nlohmann::json& doc);

void write_json_document(const std::filesystem::path& path, const nlohmann::json& doc);

// Relative change |a - b| / max(|a|, |b|); 0 when both are 0.
double relative_change(double a, double b);

}  // namespace fsl
