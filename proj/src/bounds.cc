#include "tcpbound/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcpbound/error.h"

namespace tcpbound {

namespace {

int RootDegree(const DenseTensor& a) { return static_cast<int>(a.order()) - 1; }

void RequirePositiveAlpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw TcpError(ErrorCode::kNotPCertificate,
                   "alpha(F_A) = " + std::to_string(alpha) +
                       " is not positive; the tensor is not certified P");
  }
}

// Slack entries this close to zero relative to the terms that produced them
// are roundoff; their (m-1)-th root would otherwise be O(eps^{1/(m-1)}).
constexpr double kSlackSnapRelTol = 1e-12;

Vector SnappedSlack(const TcpInstance& inst, std::span<const double> z) {
  Vector w = Slack(inst, z);
  Vector magnitude(w.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) magnitude[i] = std::abs(inst.q[i]);
  for (const auto& [index, value] : inst.tensor.entries()) {
    double term = std::abs(value);
    for (std::size_t k = 1; k < index.size(); ++k) term *= std::abs(z[index[k]]);
    magnitude[index[0]] += term;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) <= kSlackSnapRelTol * magnitude[i]) w[i] = 0.0;
  }
  return w;
}

double NegQRoot(const TcpInstance& inst) {
  return SignedRoot(InfNorm(PositivePart(Negate(inst.q))),
                    RootDegree(inst.tensor));
}

Interval ZhengFromResidual(const ResidualData& res, double alpha,
                           double a_norm_root) {
  RequirePositiveAlpha(alpha);
  return {res.v_inf / (1.0 + a_norm_root),
          (1.0 + a_norm_root) * res.v_inf / alpha};
}

Interval RelativeFromPieces(const NewErrorBounds& nb, double alpha,
                            double a_norm_root, double neg_q_root,
                            double b) {
  const double root_d = std::sqrt(nb.discriminant);
  return {(b - root_d) / (2.0 * neg_q_root),
          a_norm_root * (b + root_d) / (2.0 * alpha * neg_q_root)};
}

void CheckRelativeHypotheses(const TcpInstance& inst, std::span<const double> z) {
  if (InfNorm(PositivePart(Negate(inst.q))) == 0.0) {
    throw TcpError(ErrorCode::kDegenerateQ,
                   "(-q)_+ = 0; relative bounds need some q_i < 0");
  }
  if (InfNorm(z) == 0.0) {
    throw TcpError(ErrorCode::kDegenerateZ, "relative bounds need z != 0");
  }
}

BoundReport BuildReport(const TcpInstance& inst, std::span<const double> z,
                        std::span<const double> u, const AlphaEstimate& alpha,
                        double a_norm) {
  RequirePositiveAlpha(alpha.value);
  const int degree = RootDegree(inst.tensor);

  BoundReport report;
  report.alpha = alpha;
  report.a_norm = a_norm;
  report.a_norm_root = SignedRoot(a_norm, degree);
  report.neg_q_root = NegQRoot(inst);
  report.residual = Residual(inst, z, u);
  const ResidualData& res = report.residual;

  if (!alpha.certified) report.flags.emplace_back(flags::kUncertifiedAlpha);
  if (res.exact) report.flags.emplace_back(flags::kExactSolution);
  if (res.argmax_value < 0.0) report.flags.emplace_back(flags::kNegativeArgmax);

  report.sol_lb = report.neg_q_root / report.a_norm_root;
  report.sol_ub = report.neg_q_root / alpha.value;

  const Interval base = ZhengFromResidual(res, alpha.value, report.a_norm_root);
  report.lb_base = base.lb;
  report.ub_base = base.ub;

  std::optional<NewErrorBounds> nb;
  try {
    nb = NewBoundsFromResidual(res, alpha.value, report.a_norm_root);
  } catch (const TcpError& e) {
    if (e.code() != ErrorCode::kExactSolutionInconsistent) throw;
    report.flags.emplace_back(flags::kExactSolutionInconsistent);
  }
  if (nb) {
    report.lb_new = nb->lb;
    report.ub_new = nb->ub;
    report.discriminant = nb->discriminant;
    if (nb->clamped) report.flags.emplace_back(flags::kDiscriminantClamped);

    try {
      CheckRelativeHypotheses(inst, z);
      const Interval rel =
          RelativeFromPieces(*nb, alpha.value, report.a_norm_root,
                             report.neg_q_root,
                             res.v_inf * (1.0 + report.a_norm_root));
      report.rel_lb = rel.lb;
      report.rel_ub = rel.ub;
    } catch (const TcpError& e) {
      if (e.code() == ErrorCode::kDegenerateQ) {
        report.flags.emplace_back(flags::kDegenerateQ);
      } else if (e.code() == ErrorCode::kDegenerateZ) {
        report.flags.emplace_back(flags::kDegenerateZ);
      } else {
        throw;
      }
    }
  }
  return report;
}

}  // namespace

ResidualData Residual(const TcpInstance& inst, std::span<const double> z,
                      std::span<const double> u) {
  const DenseTensor& a = inst.tensor;
  if (a.order() % 2 != 0) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "the residual uses F_A and needs even order");
  }
  if (z.size() != a.dim() || u.size() != a.dim()) {
    throw TcpError(ErrorCode::kSizing, "z and u must match the tensor dimension");
  }
  const SolutionCertificate cert = VerifySolution(inst, z, kResidualVerifyTol);
  if (!cert.passed) {
    throw TcpError(ErrorCode::kUnverifiedSolution,
                   "z is not a solution (max violation " +
                       std::to_string(cert.max_violation) + ")");
  }

  const int degree = RootDegree(a);
  const Vector diff = Subtract(u, z);
  const Vector image = ContractM1(a, diff);
  const Vector bracket =
      Add(SignedRoot(image, degree), SignedRoot(SnappedSlack(inst, z), degree));

  ResidualData res;
  res.exact = std::equal(u.begin(), u.end(), z.begin());
  res.v.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    res.v[i] = res.exact ? 0.0 : u[i] - std::max(0.0, u[i] - bracket[i]);
  }
  res.v_inf = InfNorm(res.v);

  res.argmax_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double value = diff[i] * image[i];
    if (value > res.argmax_value) {
      res.argmax_value = value;
      res.t = i;
    }
  }
  res.v_t = res.v[res.t];
  return res;
}

Interval SolutionNormBounds(const TcpInstance& inst, const AlphaEstimate& alpha) {
  RequirePositiveAlpha(alpha.value);
  if (inst.tensor.order() % 2 != 0) {
    throw TcpError(ErrorCode::kInvalidArgument, "solution bounds need even order");
  }
  const double neg_q_root = NegQRoot(inst);
  const double a_norm_root =
      SignedRoot(TensorInfNorm(inst.tensor), RootDegree(inst.tensor));
  return {neg_q_root / a_norm_root, neg_q_root / alpha.value};
}

NewErrorBounds NewBoundsFromResidual(const ResidualData& res, double alpha,
                                     double a_norm_root) {
  RequirePositiveAlpha(alpha);
  NewErrorBounds nb;
  if (res.exact) return nb;
  if (res.v_t == 0.0) {
    throw TcpError(ErrorCode::kExactSolutionInconsistent,
                   "v_t = 0 at t = " + std::to_string(res.t + 1) +
                       " although u != z");
  }
  const double b = res.v_inf * (1.0 + a_norm_root);
  nb.discriminant_raw = b * b - 4.0 * alpha * res.v_t * res.v_t;
  nb.discriminant = nb.discriminant_raw;
  if (nb.discriminant < 0.0) {
    const double eps_d = 1e-10 * std::max(1.0, b * b);
    if (nb.discriminant <= -eps_d) {
      throw TcpError(ErrorCode::kInvariantViolation,
                     "discriminant " + std::to_string(nb.discriminant_raw) +
                         " is negative beyond roundoff");
    }
    nb.discriminant = 0.0;
    nb.clamped = true;
  }
  const double root_d = std::sqrt(nb.discriminant);
  nb.lb = (b - root_d) / (2.0 * alpha);
  nb.ub = (b + root_d) / (2.0 * alpha);
  return nb;
}

NewErrorBounds ErrorBoundsNew(const TcpInstance& inst, std::span<const double> z,
                              std::span<const double> u,
                              const AlphaEstimate& alpha) {
  RequirePositiveAlpha(alpha.value);
  const ResidualData res = Residual(inst, z, u);
  return NewBoundsFromResidual(
      res, alpha.value,
      SignedRoot(TensorInfNorm(inst.tensor), RootDegree(inst.tensor)));
}

Interval ErrorBoundsZheng(const TcpInstance& inst, std::span<const double> z,
                          std::span<const double> u, const AlphaEstimate& alpha) {
  RequirePositiveAlpha(alpha.value);
  const ResidualData res = Residual(inst, z, u);
  return ZhengFromResidual(
      res, alpha.value,
      SignedRoot(TensorInfNorm(inst.tensor), RootDegree(inst.tensor)));
}

Interval RelativeErrorBounds(const TcpInstance& inst, std::span<const double> z,
                             std::span<const double> u,
                             const AlphaEstimate& alpha) {
  CheckRelativeHypotheses(inst, z);
  RequirePositiveAlpha(alpha.value);
  const ResidualData res = Residual(inst, z, u);
  const double a_norm_root =
      SignedRoot(TensorInfNorm(inst.tensor), RootDegree(inst.tensor));
  const NewErrorBounds nb = NewBoundsFromResidual(res, alpha.value, a_norm_root);
  return RelativeFromPieces(nb, alpha.value, a_norm_root, NegQRoot(inst),
                            res.v_inf * (1.0 + a_norm_root));
}

bool BoundReport::HasFlag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

BoundReport BuildBoundReport(const TcpInstance& inst, std::span<const double> z,
                             std::span<const double> u,
                             const AlphaEstimate& alpha) {
  return BuildReport(inst, z, u, alpha, TensorInfNorm(inst.tensor));
}

BoundReport DiagonalBounds(const TcpInstance& inst, std::span<const double> z,
                           std::span<const double> u) {
  const AlphaEstimate alpha = AlphaFDiagonalEstimate(inst.tensor);
  const Vector d = inst.tensor.DiagonalEntries();
  return BuildReport(inst, z, u, alpha, *std::max_element(d.begin(), d.end()));
}

double CompareUpperBounds(const BoundReport& report) {
  if (!report.ub_new) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "report has no sharper upper bound to compare");
  }
  const double ub_new = *report.ub_new;
  if (report.ub_base == 0.0) {
    if (ub_new == 0.0) return 0.0;
    throw TcpError(ErrorCode::kInvariantViolation,
                   "baseline upper bound is 0 but the sharper one is not");
  }
  const double ratio = ub_new / report.ub_base;
  if (ratio > 1.0 + 1e-12) {
    throw TcpError(ErrorCode::kInvariantViolation,
                   "upper-bound ratio " + std::to_string(ratio) + " exceeds 1");
  }
  return ratio;
}

}  // namespace tcpbound
