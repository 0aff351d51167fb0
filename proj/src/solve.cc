#include "tcpbound/solve.h"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "tcpbound/error.h"

namespace tcpbound {

namespace {

class SupportSystem {
 public:
  SupportSystem(const TcpInstance& inst, std::vector<std::size_t> support)
      : inst_(inst), support_(std::move(support)) {}

  std::size_t size() const { return support_.size(); }

  Vector Embed(const Eigen::VectorXd& y) const {
    Vector z(inst_.q.size(), 0.0);
    for (std::size_t j = 0; j < support_.size(); ++j) z[support_[j]] = y(j);
    return z;
  }

  Eigen::VectorXd Residual(const Eigen::VectorXd& y) const {
    const Vector w = Slack(inst_, Embed(y));
    Eigen::VectorXd r(support_.size());
    for (std::size_t j = 0; j < support_.size(); ++j) r(j) = w[support_[j]];
    return r;
  }

  // Forward differences with step 1e-7 * max(1, ||y||_inf).
  Eigen::MatrixXd Jacobian(const Eigen::VectorXd& y,
                           const Eigen::VectorXd& r) const {
    const auto k = static_cast<Eigen::Index>(support_.size());
    const double h = 1e-7 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
    Eigen::MatrixXd jac(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::VectorXd yh = y;
      yh(j) += h;
      jac.col(j) = (Residual(yh) - r) / h;
    }
    return jac;
  }

 private:
  const TcpInstance& inst_;
  std::vector<std::size_t> support_;
};

Eigen::VectorXd Newton(const SupportSystem& sys, Eigen::VectorXd y,
                       const SolveOptions& opts) {
  Eigen::VectorXd r = sys.Residual(y);
  for (int it = 0; it < opts.max_newton_iterations; ++it) {
    const double rnorm = r.lpNorm<Eigen::Infinity>();
    if (rnorm == 0.0) break;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.Jacobian(y, r));
    if (!lu.isInvertible()) break;
    const Eigen::VectorXd delta = lu.solve(-r);
    if (!delta.allFinite()) break;

    double lambda = 1.0;
    bool accepted = false;
    Eigen::VectorXd y_next;
    Eigen::VectorXd r_next;
    for (int halving = 0; halving < 40; ++halving) {
      y_next = y + lambda * delta;
      r_next = sys.Residual(y_next);
      if (r_next.allFinite() && r_next.lpNorm<Eigen::Infinity>() < rnorm) {
        accepted = true;
        break;
      }
      lambda *= opts.damping;
    }
    if (!accepted) break;
    const double step = (lambda * delta).lpNorm<Eigen::Infinity>();
    y = std::move(y_next);
    r = std::move(r_next);
    if (step <= opts.step_tol) break;
  }
  return y;
}

bool LessCertificate(const SolutionCertificate& a, const SolutionCertificate& b) {
  if (a.support.size() != b.support.size()) {
    return a.support.size() < b.support.size();
  }
  return std::lexicographical_compare(a.z.begin(), a.z.end(), b.z.begin(),
                                      b.z.end());
}

}  // namespace

TcpInstance::TcpInstance(DenseTensor tensor_in, Vector q_in)
    : tensor(std::move(tensor_in)), q(std::move(q_in)) {
  if (q.size() != tensor.dim()) {
    throw TcpError(ErrorCode::kSizing,
                   "q has length " + std::to_string(q.size()) +
                       " but tensor dimension is " +
                       std::to_string(tensor.dim()));
  }
}

Vector Slack(const TcpInstance& inst, std::span<const double> z) {
  return Add(ContractM1(inst.tensor, z), inst.q);
}

SolutionCertificate VerifySolution(const TcpInstance& inst,
                                   std::span<const double> z, double tol) {
  if (!(tol > 0.0)) {
    throw TcpError(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  SolutionCertificate cert;
  cert.z.assign(z.begin(), z.end());
  cert.w = Slack(inst, z);
  cert.tol = tol;
  double violation = 0.0;
  for (std::size_t i = 0; i < cert.z.size(); ++i) {
    violation = std::max({violation, -cert.z[i], -cert.w[i],
                          std::abs(cert.z[i] * cert.w[i])});
    if (cert.z[i] > tol) cert.support.push_back(i);
  }
  cert.max_violation = violation;
  cert.passed = violation <= tol;
  return cert;
}

std::vector<SolutionCertificate> SolveEnumerate(const TcpInstance& inst,
                                                const SolveOptions& opts) {
  const std::size_t n = inst.tensor.dim();
  if (n > opts.max_dim) {
    throw TcpError(ErrorCode::kRefused,
                   "dimension " + std::to_string(n) +
                       " exceeds the enumeration limit " +
                       std::to_string(opts.max_dim));
  }
  if (opts.starts < 1) {
    throw TcpError(ErrorCode::kInvalidArgument, "need at least one start");
  }

  const int degree = static_cast<int>(inst.tensor.order()) - 1;
  const double a_norm = TensorInfNorm(inst.tensor);
  const double q_norm = InfNorm(inst.q);
  const double scale =
      a_norm > 0.0 ? std::max(1.0, std::pow(q_norm / a_norm, 1.0 / degree)) : 1.0;

  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });

  std::vector<SolutionCertificate> found;
  auto consider = [&](Vector z) {
    for (double& v : z) {
      if (v < 0.0 && v >= -opts.tol) v = 0.0;
    }
    SolutionCertificate cert = VerifySolution(inst, z, opts.tol);
    if (!cert.passed) return;
    for (const auto& other : found) {
      if (InfNorm(Subtract(other.z, cert.z)) <= 10.0 * opts.tol) return;
    }
    found.push_back(std::move(cert));
  };

  for (std::uint32_t mask : masks) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    if (support.empty()) {
      consider(Vector(n, 0.0));
      continue;
    }
    SupportSystem sys(inst, support);
    std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * (mask + 1)));
    std::uniform_real_distribution<double> start_coord(0.05 * scale, 2.0 * scale);
    const auto k = static_cast<Eigen::Index>(support.size());
    for (int s = 0; s < opts.starts; ++s) {
      Eigen::VectorXd y(k);
      for (Eigen::Index j = 0; j < k; ++j) {
        y(j) = s == 0 ? 0.5 * scale : start_coord(rng);
      }
      y = Newton(sys, std::move(y), opts);
      if (!y.allFinite() || y.minCoeff() < -opts.tol) continue;
      consider(sys.Embed(y));
    }
  }

  std::sort(found.begin(), found.end(), LessCertificate);
  return found;
}

SolutionCertificate SolveDiagonal(const TcpInstance& inst, double tol) {
  const DenseTensor& a = inst.tensor;
  if (a.order() % 2 != 0 || !a.IsPositiveDiagonal()) {
    throw TcpError(ErrorCode::kClassification,
                   "closed-form solve needs a positive diagonal tensor of even order");
  }
  const int degree = static_cast<int>(a.order()) - 1;
  Vector z(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    z[i] = SignedRoot(std::max(0.0, -inst.q[i]) / a.DiagonalEntry(i), degree);
  }
  return VerifySolution(inst, z, tol);
}

}  // namespace tcpbound
