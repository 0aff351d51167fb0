#pragma once

// Problem files are JSON documents:
//
//   {
//     "order": 4,
//     "dim": 2,
//     "entries": [ {"idx": [1, 1, 1, 1], "val": 1.0},
//                  {"idx": [2, 2, 2, 2], "val": 8.0} ],
//     "q": [1.0, -1.0],
//     "z": [0.0, 0.5],        optional candidate solution
//     "u": [0.5, 0.4]         optional test point
//   }
//
// Indices are 1-based. Absent entries are zero; repeated index tuples are
// rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tcpbound/solve.h"

namespace tcpbound {

struct ProblemEntry {
  std::vector<std::size_t> idx;  // 1-based
  double val = 0.0;

  bool operator==(const ProblemEntry&) const = default;
};

struct ProblemFile {
  std::size_t order = 0;
  std::size_t dim = 0;
  std::vector<ProblemEntry> entries;
  Vector q;
  std::optional<Vector> z;
  std::optional<Vector> u;

  bool operator==(const ProblemFile&) const = default;
};

/// Validates and parses. Throws TcpError(kParse) with a line/column for
/// syntax errors and a field path (e.g. "entries[2].idx") for content errors.
ProblemFile ParseProblemString(const std::string& text,
                               const std::string& source = "<string>");
ProblemFile ParseProblem(const std::filesystem::path& path);

/// Serializes with shortest round-trip real formatting.
std::string EmitProblem(const ProblemFile& problem);

TcpInstance ToInstance(const ProblemFile& problem);
ProblemFile FromInstance(const TcpInstance& inst);

/// Comma-separated reals, as accepted by the --z/--u flags.
Vector ParseRealList(const std::string& text);

}  // namespace tcpbound
