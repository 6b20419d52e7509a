#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace natcorpus::cli {

inline constexpr std::string_view kReportSchema = "natcorpus.report/1";

// "12.34"; never "-0.00".
std::string render_percent(double value);

// {"percent": "12.34", "raw": 12.3456...}
nlohmann::ordered_json percent_json(double value);

// JSON envelope shared by every command: tool, command, parameters, input
// fingerprints, results, duration.
class RunReport {
 public:
  explicit RunReport(std::string command);

  nlohmann::ordered_json& parameters() { return body_["parameters"]; }
  nlohmann::ordered_json& results() { return body_["results"]; }

  // Records path and SHA-256 of the bytes as read from disk.
  void add_input(const std::filesystem::path& path, std::string_view raw_bytes);

  // Stamps the wall-clock duration and returns the finished document.
  const nlohmann::ordered_json& finish();

 private:
  nlohmann::ordered_json body_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace natcorpus::cli
