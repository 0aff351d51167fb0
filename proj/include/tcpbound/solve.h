#pragma once

// Desk-scale solving and verification of TCP(q, A):
//   find z >= 0 with w = A z^{m-1} + q >= 0 and z^T w = 0.

#include <cstdint>
#include <vector>

#include "tcpbound/tensor.h"

namespace tcpbound {

struct TcpInstance {
  TcpInstance(DenseTensor tensor, Vector q);

  DenseTensor tensor;
  Vector q;
};

/// Recomputed from (instance, z); never built from caller-supplied slack.
struct SolutionCertificate {
  Vector z;
  Vector w;
  std::vector<std::size_t> support;
  /// max of: negative parts of z and w, and |z_i w_i|.
  double max_violation = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// w = A z^{m-1} + q.
Vector Slack(const TcpInstance& inst, std::span<const double> z);

SolutionCertificate VerifySolution(const TcpInstance& inst,
                                   std::span<const double> z, double tol);

struct SolveOptions {
  std::size_t max_dim = 6;
  int starts = 8;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int max_newton_iterations = 100;
  double damping = 0.5;
  double step_tol = 1e-12;
};

/// Enumerates all 2^n supports; on each, solves (A z^{m-1} + q)_S = 0 with z
/// zero off S by damped Newton from seeded multi-starts. Returns every
/// distinct complementary solution found, sorted by support size, then
/// lexicographically by z. An empty result means nothing was found.
std::vector<SolutionCertificate> SolveEnumerate(const TcpInstance& inst,
                                                const SolveOptions& opts = {});

/// Closed-form solution z_i = ((-q_i)_+ / a_{i...i})^{1/(m-1)} for positive
/// diagonal tensors of even order.
SolutionCertificate SolveDiagonal(const TcpInstance& inst, double tol = 1e-9);

}  // namespace tcpbound
