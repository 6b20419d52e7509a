#include "report.hpp"

#include <cstdio>

#include "natcorpus/input.hpp"

namespace natcorpus::cli {

std::string render_percent(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string text(buf);
  if (text == "-0.00") text = "0.00";
  return text;
}

nlohmann::ordered_json percent_json(double value) {
  return {{"percent", render_percent(value)}, {"raw", value}};
}

RunReport::RunReport(std::string command) : start_(std::chrono::steady_clock::now()) {
  body_["schema"] = std::string(kReportSchema);
  body_["tool"] = {{"name", "natcorpus"}, {"version", NATCORPUS_VERSION}};
  body_["command"] = std::move(command);
  body_["parameters"] = nlohmann::ordered_json::object();
  body_["inputs"] = nlohmann::ordered_json::array();
  body_["results"] = nlohmann::ordered_json::object();
}

void RunReport::add_input(const std::filesystem::path& path, std::string_view raw_bytes) {
  body_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_hex(raw_bytes)}, {"bytes", raw_bytes.size()}});
}

const nlohmann::ordered_json& RunReport::finish() {
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  body_["duration_seconds"] = elapsed.count();
  return body_;
}

}  // namespace natcorpus::cli
