#include "fsl/common/report.hpp"

#include <algorithm>
#include <cmath>

#include "fsl/common/io.hpp"

namespace fsl {

void RatioItem::add(double ratio) {
  min = std::min(min, ratio);
  max = std::max(max, ratio);
  ++count;
}

double RatioItem::bracket() const {
  if (count == 0) return 0.0;
  if (min <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(max, 1.0 / min);
}

RatioItem& RatioReport::item(const std::string& name) {
  for (auto& it : items)
    if (it.name == name) return it;
  items.push_back(RatioItem{name});
  return items.back();
}

const RatioItem* RatioReport::find(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

namespace {
nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
double number_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}
}  // namespace

nlohmann::json to_json(const RatioItem& item) {
  return {{"name", item.name},
          {"min", finite_or_string(item.count ? item.min : 0.0)},
          {"max", finite_or_string(item.max)},
          {"count", item.count}};
}

nlohmann::json to_json(const RatioReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : r.items) items.push_back(to_json(it));
  return {{"kind", r.kind},
          {"parameters", r.parameters},
          {"draws", r.draws},
          {"skipped", r.skipped},
          {"items", items},
          {"c_star", finite_or_string(r.c_star)},
          {"c_star_half", finite_or_string(r.c_star_half)},
          {"stable", r.stable},
          {"passed", r.passed},
          {"notes", r.notes}};
}

RatioReport ratio_report_from_json(const nlohmann::json& doc) {
  RatioReport r;
  r.kind = doc.at("kind").get<std::string>();
  r.parameters = doc.value("parameters", nlohmann::json::object());
  r.draws = doc.value("draws", std::size_t{0});
  r.skipped = doc.value("skipped", std::size_t{0});
  for (const auto& it : doc.value("items", nlohmann::json::array())) {
    RatioItem item{it.at("name").get<std::string>()};
    item.min = number_from(it.at("min"));
    item.max = number_from(it.at("max"));
    item.count = it.value("count", std::size_t{0});
    r.items.push_back(item);
  }
  r.c_star = number_from(doc.at("c_star"));
  r.c_star_half = number_from(doc.value("c_star_half", nlohmann::json(0.0)));
  r.stable = doc.value("stable", false);
  r.passed = doc.value("passed", false);
  r.notes = doc.value("notes", std::vector<std::string>{});
  return r;
}

void write_json_document(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace fsl
