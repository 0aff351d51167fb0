#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcpbound/tensor.h"

namespace tcpbound {

enum class ReportFormat { kText, kMachine };

/// Ordered key/value report. Machine form is one `key=value` line per field
/// with reals printed to 17 significant digits; text form aligns the keys.
class Report {
 public:
  void Add(std::string key, std::string value);
  void Add(std::string key, const char* value);
  void Add(std::string key, double value);
  void Add(std::string key, int value);
  void Add(std::string key, std::size_t value);
  void Add(std::string key, bool value);
  void Add(std::string key, std::span<const double> values);
  void AddIndices(std::string key, const std::vector<std::size_t>& zero_based);

  std::string Render(ReportFormat format) const;

 private:
  struct Field {
    std::string key;
    std::string machine;
    std::string text;
  };
  std::vector<Field> fields_;
};

std::string FormatReal(double value);

}  // namespace tcpbound
