#pragma once

#include "tcpbound/solve.h"

namespace tcpbound::testing {

// A in T_{4,2} with a_1111 = 1, a_2222 = 8 and q = (1, -1); its unique
// solution is z = (0, 0.5).
inline TcpInstance ExampleInstance() {
  const double diag[] = {1.0, 8.0};
  return TcpInstance(DenseTensor::Diagonal(4, diag), {1.0, -1.0});
}

inline DenseTensor IdentityDiagonal(std::size_t order, std::size_t dim) {
  return DenseTensor::Diagonal(order, std::vector<double>(dim, 1.0));
}

}  // namespace tcpbound::testing
