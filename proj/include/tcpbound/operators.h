#pragma once

// The positively homogeneous operators T_A and F_A built from a tensor, and
// the quantities alpha(T_A), alpha(F_A):
//
//   alpha(op) = min_{||x||_inf = 1} max_i x_i (op x)_i.
//
// For even order, alpha(T_A) > 0 and alpha(F_A) > 0 each characterize
// P-tensors. Only the positive diagonal closed form is certified; the grid
// search returns the smallest sampled objective, which can only overestimate
// the true minimum.

#include <cstdint>
#include <optional>
#include <string_view>

#include "tcpbound/tensor.h"

namespace tcpbound {

/// T_A x = ||x||_2^{2-m} A x^{m-1}, and 0 at x = 0.
Vector ApplyT(const DenseTensor& a, std::span<const double> x);

/// F_A x = (A x^{m-1})^{[1/(m-1)]}. Requires even order.
Vector ApplyF(const DenseTensor& a, std::span<const double> x);

enum class AlphaKind { kAlphaT, kAlphaF };
enum class AlphaMethod { kClosedFormDiagonal, kGridRefined };

std::string_view ToString(AlphaKind kind);
std::string_view ToString(AlphaMethod method);

struct GridSpec {
  int points_per_axis = 41;
  int refinement_steps = 50;
  double initial_step = 0.1;
  /// Refuse grids whose face enumeration exceeds this many evaluations.
  std::int64_t max_evaluations = 20'000'000;
};

struct AlphaEstimate {
  double value = 0.0;
  AlphaKind kind = AlphaKind::kAlphaF;
  AlphaMethod method = AlphaMethod::kGridRefined;
  int grid_points_per_axis = 0;
  int refinement_steps = 0;
  bool certified = false;
  /// Point of the unit infinity-sphere where the minimum was found.
  Vector argmin;
};

/// max_i x_i (op x)_i for the operator selected by `kind`.
double AlphaObjective(const DenseTensor& a, AlphaKind kind,
                      std::span<const double> x);

/// Deterministic face-grid enumeration of the boundary of [-1, 1]^n followed
/// by coordinate descent around the best grid point. Ties are resolved by
/// (value, lexicographic point), so the result depends only on the inputs.
AlphaEstimate EstimateAlpha(const DenseTensor& a, AlphaKind kind,
                            const GridSpec& grid = {});

/// alpha(F_A) = min_i a_{i...i}^{1/(m-1)} for a positive diagonal tensor of
/// even order. Throws kClassification otherwise.
double AlphaFDiagonal(const DenseTensor& a);

/// AlphaFDiagonal wrapped as a certified estimate.
AlphaEstimate AlphaFDiagonalEstimate(const DenseTensor& a);

enum class PVerdict { kNotP, kLikelyP };
std::string_view ToString(PVerdict verdict);

struct PCheckResult {
  PVerdict verdict = PVerdict::kLikelyP;
  /// For kNotP: a point with max_i x_i (A x^{m-1})_i <= 0.
  std::optional<Vector> witness;
  /// Objective at the witness, or the smallest sampled objective.
  double min_objective = 0.0;
  int evaluations = 0;
};

/// Samples max_i x_i (A x^{m-1})_i at every signed unit vector and at
/// `sample_count` seeded random points of the unit infinity-sphere. Sampling
/// can refute the P property but never certify it.
PCheckResult CheckPTensorSampled(const DenseTensor& a, int sample_count,
                                 std::uint64_t seed);

}  // namespace tcpbound
