#pragma once

// Global error bounds for a solution z of TCP(q, A) with A a P-tensor of even
// order m, measured at an arbitrary test point u. With N = ||A||_inf^{1/(m-1)}
// and alpha = alpha(F_A):
//
//   s = (A(u-z)^{m-1})^{[1/(m-1)]} + (A z^{m-1} + q)^{[1/(m-1)]}
//   v = u - max(0, u - s)                      (= min(u, s) componentwise)
//   D = ||v||^2 (1 + N)^2 - 4 alpha v_t^2
//
// where t maximizes (u-z)_i (A(u-z)^{m-1})_i. The sharper interval is
//   [||v||(1+N) - sqrt(D)] / (2 alpha) <= ||z-u|| <= [||v||(1+N) + sqrt(D)] / (2 alpha)
// and the baseline interval it improves on is
//   ||v|| / (1+N) <= ||z-u|| <= (1+N) ||v|| / alpha.
//
// All norms are infinity norms. Bounds are valid when alpha does not exceed
// the true alpha(F_A); only closed-form diagonal estimates guarantee that.

#include <optional>
#include <string>
#include <vector>

#include "tcpbound/operators.h"
#include "tcpbound/solve.h"

namespace tcpbound {

inline constexpr double kResidualVerifyTol = 1e-8;

struct ResidualData {
  Vector v;
  double v_inf = 0.0;
  std::size_t t = 0;
  double v_t = 0.0;
  /// (u-z)_t (A(u-z)^{m-1})_t; nonnegative for P-tensors.
  double argmax_value = 0.0;
  /// u == z componentwise; v is then zero.
  bool exact = false;
};

/// Builds the residual above. Throws kUnverifiedSolution when z fails
/// VerifySolution at kResidualVerifyTol, kInvalidArgument for odd order.
ResidualData Residual(const TcpInstance& inst, std::span<const double> z,
                      std::span<const double> u);

struct Interval {
  double lb = 0.0;
  double ub = 0.0;
};

struct NewErrorBounds {
  double lb = 0.0;
  double ub = 0.0;
  /// D after clamping roundoff-negative values to zero.
  double discriminant = 0.0;
  double discriminant_raw = 0.0;
  bool clamped = false;
};

/// ||(-q)_+||^{1/(m-1)} / ||A||^{1/(m-1)} <= ||z|| <= ||(-q)_+||^{1/(m-1)} / alpha.
Interval SolutionNormBounds(const TcpInstance& inst, const AlphaEstimate& alpha);

/// The sharper interval from precomputed pieces. Short-circuits to [0, 0]
/// for an exact solution; throws kExactSolutionInconsistent when v_t = 0 but
/// u != z, and kInvariantViolation when D < -1e-10 max(1, ||v||^2 (1+N)^2).
NewErrorBounds NewBoundsFromResidual(const ResidualData& res, double alpha,
                                     double a_norm_root);

NewErrorBounds ErrorBoundsNew(const TcpInstance& inst, std::span<const double> z,
                              std::span<const double> u,
                              const AlphaEstimate& alpha);

Interval ErrorBoundsZheng(const TcpInstance& inst, std::span<const double> z,
                          std::span<const double> u, const AlphaEstimate& alpha);

/// Bounds on ||z-u|| / ||z||. Throws kDegenerateQ when (-q)_+ = 0 and
/// kDegenerateZ when z = 0.
Interval RelativeErrorBounds(const TcpInstance& inst, std::span<const double> z,
                             std::span<const double> u,
                             const AlphaEstimate& alpha);

namespace flags {
inline constexpr char kUncertifiedAlpha[] = "UNCERTIFIED_ALPHA";
inline constexpr char kExactSolution[] = "EXACT_SOLUTION";
inline constexpr char kExactSolutionInconsistent[] = "EXACT_SOLUTION_INCONSISTENT";
inline constexpr char kDiscriminantClamped[] = "DISCRIMINANT_CLAMPED";
inline constexpr char kNegativeArgmax[] = "NEGATIVE_ARGMAX";
inline constexpr char kDegenerateQ[] = "DEGENERATE_Q";
inline constexpr char kDegenerateZ[] = "DEGENERATE_Z";
}  // namespace flags

struct BoundReport {
  std::optional<double> lb_new;
  std::optional<double> ub_new;
  std::optional<double> discriminant;
  double lb_base = 0.0;
  double ub_base = 0.0;
  ResidualData residual;
  AlphaEstimate alpha;
  double a_norm = 0.0;
  /// ||A||_inf^{1/(m-1)}.
  double a_norm_root = 0.0;
  /// ||(-q)_+||_inf^{1/(m-1)}.
  double neg_q_root = 0.0;
  std::optional<double> sol_lb;
  std::optional<double> sol_ub;
  std::optional<double> rel_lb;
  std::optional<double> rel_ub;
  std::vector<std::string> flags;

  bool HasFlag(std::string_view flag) const;
};

/// Every bound for (z, u) under the given alpha. Hypothesis failures of the
/// optional parts (relative bounds, the sharper interval when v_t = 0) are
/// recorded as flags rather than thrown.
BoundReport BuildBoundReport(const TcpInstance& inst, std::span<const double> z,
                             std::span<const double> u,
                             const AlphaEstimate& alpha);

/// Positive diagonal specialization: alpha = min_i a_{i..i}^{1/(m-1)} and
/// ||A||_inf = max_i a_{i..i}. Throws kClassification otherwise.
BoundReport DiagonalBounds(const TcpInstance& inst, std::span<const double> z,
                           std::span<const double> u);

/// ub_new / ub_base, which never exceeds 1. Both zero reports 0.
double CompareUpperBounds(const BoundReport& report);

}  // namespace tcpbound
