#include "tcpbound/problem_io.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tcpbound/error.h"

namespace tcpbound {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& source, const std::string& message) {
  throw TcpError(ErrorCode::kParse, source + ": " + message);
}

std::string LineColumn(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::size_t ReadPositive(const json& doc, const char* field,
                         const std::string& source) {
  if (!doc.contains(field)) Fail(source, std::string("missing field '") + field + "'");
  const json& v = doc.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    Fail(source, std::string("field '") + field + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

Vector ReadReals(const json& v, const std::string& path, std::size_t expected,
                 const std::string& source) {
  if (!v.is_array()) Fail(source, "field '" + path + "' must be an array of reals");
  if (v.size() != expected) {
    Fail(source, "field '" + path + "' has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(expected));
  }
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      Fail(source, "field '" + path + "[" + std::to_string(i) + "]' is not a real");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ProblemFile ParseProblemString(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(source, "syntax error at " + LineColumn(text, e.byte == 0 ? 0 : e.byte - 1) +
                     ": " + e.what());
  }
  if (!doc.is_object()) Fail(source, "top level must be an object");

  ProblemFile p;
  p.order = ReadPositive(doc, "order", source);
  p.dim = ReadPositive(doc, "dim", source);
  if (p.order < 2) Fail(source, "field 'order' must be at least 2");

  if (!doc.contains("entries")) Fail(source, "missing field 'entries'");
  const json& entries = doc.at("entries");
  if (!entries.is_array()) Fail(source, "field 'entries' must be an array");
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string path = "entries[" + std::to_string(e) + "]";
    const json& item = entries[e];
    if (!item.is_object() || !item.contains("idx") || !item.contains("val")) {
      Fail(source, "'" + path + "' must be an object with 'idx' and 'val'");
    }
    const json& idx = item.at("idx");
    if (!idx.is_array()) Fail(source, "'" + path + ".idx' must be an array");
    if (idx.size() != p.order) {
      Fail(source, "'" + path + ".idx' has " + std::to_string(idx.size()) +
                       " components but order is " + std::to_string(p.order));
    }
    ProblemEntry entry;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!idx[k].is_number_integer() || idx[k].get<long long>() < 1 ||
          idx[k].get<std::size_t>() > p.dim) {
        Fail(source, "'" + path + ".idx[" + std::to_string(k) +
                         "]' must be an integer in [1, " + std::to_string(p.dim) + "]");
      }
      entry.idx.push_back(idx[k].get<std::size_t>());
    }
    if (!item.at("val").is_number()) Fail(source, "'" + path + ".val' is not a real");
    entry.val = item.at("val").get<double>();
    if (!seen.insert(entry.idx).second) {
      Fail(source, "'" + path + ".idx' repeats an earlier index tuple");
    }
    p.entries.push_back(std::move(entry));
  }

  if (!doc.contains("q")) Fail(source, "missing field 'q'");
  p.q = ReadReals(doc.at("q"), "q", p.dim, source);
  if (doc.contains("z") && !doc.at("z").is_null()) {
    p.z = ReadReals(doc.at("z"), "z", p.dim, source);
  }
  if (doc.contains("u") && !doc.at("u").is_null()) {
    p.u = ReadReals(doc.at("u"), "u", p.dim, source);
  }
  return p;
}

ProblemFile ParseProblem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseProblemString(buffer.str(), path.string());
}

std::string EmitProblem(const ProblemFile& p) {
  json doc = json::object();
  doc["order"] = p.order;
  doc["dim"] = p.dim;
  json entries = json::array();
  for (const auto& e : p.entries) entries.push_back({{"idx", e.idx}, {"val", e.val}});
  doc["entries"] = std::move(entries);
  doc["q"] = p.q;
  if (p.z) doc["z"] = *p.z;
  if (p.u) doc["u"] = *p.u;
  return doc.dump(2) + "\n";
}

TcpInstance ToInstance(const ProblemFile& p) {
  DenseTensor a(p.order, p.dim);
  for (const auto& e : p.entries) {
    MultiIndex index;
    for (std::size_t k : e.idx) index.push_back(k - 1);
    a.Set(index, e.val);
  }
  return TcpInstance(std::move(a), p.q);
}

ProblemFile FromInstance(const TcpInstance& inst) {
  ProblemFile p;
  p.order = inst.tensor.order();
  p.dim = inst.tensor.dim();
  for (const auto& [index, value] : inst.tensor.entries()) {
    ProblemEntry e;
    for (std::size_t k : index) e.idx.push_back(k + 1);
    e.val = value;
    p.entries.push_back(std::move(e));
  }
  p.q = inst.q;
  return p;
}

Vector ParseRealList(const std::string& text) {
  Vector out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::size_t begin = pos;
    std::size_t end = comma;
    while (begin < end && text[begin] == ' ') ++begin;
    while (end > begin && text[end - 1] == ' ') --end;
    double value = 0.0;
    const char* first = text.data() + begin;
    const char* last = text.data() + end;
    if (begin < end && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (begin == end || ec != std::errc() || ptr != last) {
      throw TcpError(ErrorCode::kParse,
                     "cannot read '" + text.substr(begin, end - begin) +
                         "' as a real in list '" + text + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace tcpbound
