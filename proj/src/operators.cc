#include "tcpbound/operators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tcpbound/error.h"

namespace tcpbound {

namespace {

void RequireEvenOrder(const DenseTensor& a, std::string_view what) {
  if (a.order() % 2 != 0) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   std::string(what) + " requires even order, got " +
                       std::to_string(a.order()));
  }
}

int RootDegree(const DenseTensor& a) { return static_cast<int>(a.order()) - 1; }

// Strict weak order on (value, point) candidates.
bool Better(double value, const Vector& x, double best_value,
            const Vector& best_x) {
  if (value != best_value) return value < best_value;
  return std::lexicographical_compare(x.begin(), x.end(), best_x.begin(),
                                      best_x.end());
}

double SumObjective(const Vector& x, const Vector& image) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, x[i] * image[i]);
  return best;
}

}  // namespace

std::string_view ToString(AlphaKind kind) {
  return kind == AlphaKind::kAlphaT ? "alpha_T" : "alpha_F";
}

std::string_view ToString(AlphaMethod method) {
  return method == AlphaMethod::kClosedFormDiagonal ? "closed_form_diagonal"
                                                    : "grid_refined";
}

std::string_view ToString(PVerdict verdict) {
  return verdict == PVerdict::kNotP ? "NOT_P" : "LIKELY_P";
}

Vector ApplyT(const DenseTensor& a, std::span<const double> x) {
  Vector y = ContractM1(a, x);
  const double norm = TwoNorm(x);
  if (norm == 0.0) return Vector(x.size(), 0.0);
  const double factor = std::pow(norm, 2.0 - static_cast<double>(a.order()));
  for (double& v : y) v *= factor;
  return y;
}

Vector ApplyF(const DenseTensor& a, std::span<const double> x) {
  RequireEvenOrder(a, "F_A");
  return SignedRoot(ContractM1(a, x), RootDegree(a));
}

double AlphaObjective(const DenseTensor& a, AlphaKind kind,
                      std::span<const double> x) {
  const Vector image = kind == AlphaKind::kAlphaT ? ApplyT(a, x) : ApplyF(a, x);
  return SumObjective(Vector(x.begin(), x.end()), image);
}

AlphaEstimate EstimateAlpha(const DenseTensor& a, AlphaKind kind,
                            const GridSpec& grid) {
  if (kind == AlphaKind::kAlphaF) RequireEvenOrder(a, "alpha(F_A)");
  const std::size_t n = a.dim();
  if (grid.points_per_axis < 2 && n > 1) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "grid needs at least 2 points per axis");
  }
  if (grid.refinement_steps < 0 || !(grid.initial_step > 0.0)) {
    throw TcpError(ErrorCode::kInvalidArgument, "invalid refinement settings");
  }
  const int g = std::max(grid.points_per_axis, 2);

  // 2n faces, each with g^(n-1) grid points.
  double total = 2.0 * static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) total *= g;
  if (total > static_cast<double>(grid.max_evaluations)) {
    throw TcpError(ErrorCode::kSizing,
                   "face grid of " + std::to_string(static_cast<long long>(total)) +
                       " points exceeds the evaluation limit");
  }

  auto axis_value = [g](int j) { return -1.0 + 2.0 * j / (g - 1); };

  double best_value = std::numeric_limits<double>::infinity();
  Vector best_x;
  std::size_t best_face = 0;

  Vector x(n);
  std::vector<int> counter(n, 0);
  for (std::size_t face = 0; face < n; ++face) {
    for (double sign : {-1.0, 1.0}) {
      std::fill(counter.begin(), counter.end(), 0);
      while (true) {
        for (std::size_t k = 0; k < n; ++k) {
          x[k] = k == face ? sign : axis_value(counter[k]);
        }
        const double value = AlphaObjective(a, kind, x);
        if (best_x.empty() || Better(value, x, best_value, best_x)) {
          best_value = value;
          best_x = x;
          best_face = face;
        }
        // Odometer over the free coordinates.
        std::size_t k = 0;
        for (; k < n; ++k) {
          if (k == face) continue;
          if (++counter[k] < g) break;
          counter[k] = 0;
        }
        if (k == n) break;
      }
    }
  }

  double step = grid.initial_step;
  for (int sweep = 0; sweep < grid.refinement_steps; ++sweep) {
    bool improved = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == best_face) continue;
      for (double dir : {-1.0, 1.0}) {
        Vector trial = best_x;
        trial[k] = std::clamp(trial[k] + dir * step, -1.0, 1.0);
        const double value = AlphaObjective(a, kind, trial);
        if (Better(value, trial, best_value, best_x)) {
          best_value = value;
          best_x = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  AlphaEstimate est;
  est.value = best_value;
  est.kind = kind;
  est.method = AlphaMethod::kGridRefined;
  est.grid_points_per_axis = grid.points_per_axis;
  est.refinement_steps = grid.refinement_steps;
  est.certified = false;
  est.argmin = std::move(best_x);
  return est;
}

double AlphaFDiagonal(const DenseTensor& a) {
  if (a.order() % 2 != 0) {
    throw TcpError(ErrorCode::kClassification,
                   "closed-form alpha(F_A) needs even order");
  }
  if (!a.IsPositiveDiagonal()) {
    throw TcpError(ErrorCode::kClassification,
                   "closed-form alpha(F_A) needs a positive diagonal tensor");
  }
  const Vector d = a.DiagonalEntries();
  return SignedRoot(*std::min_element(d.begin(), d.end()), RootDegree(a));
}

AlphaEstimate AlphaFDiagonalEstimate(const DenseTensor& a) {
  AlphaEstimate est;
  est.value = AlphaFDiagonal(a);
  est.kind = AlphaKind::kAlphaF;
  est.method = AlphaMethod::kClosedFormDiagonal;
  est.certified = true;
  const Vector d = a.DiagonalEntries();
  est.argmin.assign(a.dim(), 0.0);
  est.argmin[std::min_element(d.begin(), d.end()) - d.begin()] = 1.0;
  return est;
}

PCheckResult CheckPTensorSampled(const DenseTensor& a, int sample_count,
                                 std::uint64_t seed) {
  if (sample_count < 1) {
    throw TcpError(ErrorCode::kInvalidArgument, "sample_count must be >= 1");
  }
  const std::size_t n = a.dim();
  PCheckResult result;
  result.min_objective = std::numeric_limits<double>::infinity();

  auto probe = [&](const Vector& x) {
    ++result.evaluations;
    const double value = SumObjective(x, ContractM1(a, x));
    if (value < result.min_objective) result.min_objective = value;
    if (value <= 0.0) {
      result.verdict = PVerdict::kNotP;
      result.witness = x;
      result.min_objective = value;
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vector e(n, 0.0);
      e[i] = sign;
      if (probe(e)) return result;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int s = 0; s < sample_count; ++s) {
    Vector x(n);
    for (double& v : x) v = coord(rng);
    x[pick(rng)] = (rng() & 1) ? 1.0 : -1.0;
    if (probe(x)) return result;
  }
  result.verdict = PVerdict::kLikelyP;
  return result;
}

}  // namespace tcpbound
