#include "tcpbound/report.h"

#include <algorithm>
#include <cstdio>

namespace tcpbound {

namespace {

std::string Format(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, value);
  return buf;
}

std::string Join(std::span<const double> values, const char* spec,
                 const char* separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += separator;
    out += Format(spec, values[i]);
  }
  return out;
}

}  // namespace

std::string FormatReal(double value) { return Format("%.17g", value); }

void Report::Add(std::string key, std::string value) {
  fields_.push_back({std::move(key), value, value});
}

void Report::Add(std::string key, const char* value) {
  Add(std::move(key), std::string(value));
}

void Report::Add(std::string key, double value) {
  fields_.push_back({std::move(key), FormatReal(value), Format("%.10g", value)});
}

void Report::Add(std::string key, int value) {
  Add(std::move(key), std::to_string(value));
}

void Report::Add(std::string key, std::size_t value) {
  Add(std::move(key), std::to_string(value));
}

void Report::Add(std::string key, bool value) {
  Add(std::move(key), std::string(value ? "true" : "false"));
}

void Report::Add(std::string key, std::span<const double> values) {
  fields_.push_back({std::move(key), Join(values, "%.17g", ","),
                     "(" + Join(values, "%.10g", ", ") + ")"});
}

void Report::AddIndices(std::string key,
                        const std::vector<std::size_t>& zero_based) {
  std::string machine;
  for (std::size_t i = 0; i < zero_based.size(); ++i) {
    if (i) machine += ",";
    machine += std::to_string(zero_based[i] + 1);
  }
  fields_.push_back({std::move(key), machine, "{" + machine + "}"});
}

std::string Report::Render(ReportFormat format) const {
  std::string out;
  if (format == ReportFormat::kMachine) {
    for (const auto& f : fields_) out += f.key + "=" + f.machine + "\n";
    return out;
  }
  std::size_t width = 0;
  for (const auto& f : fields_) width = std::max(width, f.key.size());
  for (const auto& f : fields_) {
    out += f.key + std::string(width - f.key.size() + 2, ' ') + f.text + "\n";
  }
  return out;
}

}  // namespace tcpbound
