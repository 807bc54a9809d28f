#include <fstream>
#include <sstream>

#include "pf/error.hpp"
#include "pf/experiments.hpp"

namespace pf::experiments {

const Verdict& ExperimentReport::check(const std::string& verdict, double statistic,
                                       const std::string& relation, double threshold) {
  bool passed = false;
  if (relation == "<") passed = statistic < threshold;
  else if (relation == "<=") passed = statistic <= threshold;
  else if (relation == ">=") passed = statistic >= threshold;
  else if (relation == "==") passed = statistic == threshold;
  else throw Error(ErrorCode::InvalidArgument, "unknown relation " + relation);
  parameters["thresholds"][verdict] = threshold;
  verdicts.push_back({verdict, passed, statistic, threshold, relation});
  return verdicts.back();
}

bool ExperimentReport::all_passed() const {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return true;
}

const Verdict* ExperimentReport::find(const std::string& verdict) const {
  for (const auto& v : verdicts) {
    if (v.name == verdict) return &v;
  }
  return nullptr;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json verdict_list = nlohmann::json::array();
  for (const auto& v : verdicts) {
    verdict_list.push_back({{"name", v.name},
                            {"passed", v.passed},
                            {"statistic", v.statistic},
                            {"relation", v.relation},
                            {"threshold", v.threshold}});
  }
  nlohmann::json table_names = nlohmann::json::array();
  for (const auto& [stem, csv] : tables) table_names.push_back(stem + ".csv");
  return {{"name", name},
          {"parameters", parameters},
          {"statistics", statistics},
          {"tables", table_names},
          {"verdicts", verdict_list},
          {"all_passed", all_passed()}};
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    out << to_json().dump(2) << '\n';
  }
  for (const auto& [stem, csv] : tables) {
    std::ofstream out(dir / (stem + ".csv"));
    out << csv;
  }
}

}  // namespace pf::experiments
