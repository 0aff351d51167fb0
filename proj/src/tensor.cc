#include "tcpbound/tensor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcpbound/error.h"

namespace tcpbound {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSizing:
      return "SIZING";
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kClassification:
      return "CLASSIFICATION";
    case ErrorCode::kRefused:
      return "REFUSED";
    case ErrorCode::kUnverifiedSolution:
      return "UNVERIFIED_SOLUTION";
    case ErrorCode::kNotPCertificate:
      return "NOT_P_CERTIFICATE";
    case ErrorCode::kInvariantViolation:
      return "INVARIANT_VIOLATION";
    case ErrorCode::kExactSolutionInconsistent:
      return "EXACT_SOLUTION_INCONSISTENT";
    case ErrorCode::kDegenerateQ:
      return "DEGENERATE_Q";
    case ErrorCode::kDegenerateZ:
      return "DEGENERATE_Z";
    case ErrorCode::kParse:
      return "PARSE";
  }
  return "UNKNOWN";
}

namespace {

void CheckLength(const DenseTensor& a, std::span<const double> x) {
  if (x.size() != a.dim()) {
    throw TcpError(ErrorCode::kSizing,
                   "vector of length " + std::to_string(x.size()) +
                       " contracted with tensor of dimension " +
                       std::to_string(a.dim()));
  }
}

void CheckSameLength(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw TcpError(ErrorCode::kSizing,
                   "vector lengths differ: " + std::to_string(x.size()) +
                       " vs " + std::to_string(y.size()));
  }
}

bool IsDiagonalIndex(const MultiIndex& index) {
  return std::all_of(index.begin(), index.end(),
                     [&](std::size_t k) { return k == index.front(); });
}

}  // namespace

DenseTensor::DenseTensor(std::size_t order, std::size_t dim)
    : order_(order), dim_(dim) {
  if (order < 2) {
    throw TcpError(ErrorCode::kSizing, "tensor order must be at least 2");
  }
  if (dim < 1) {
    throw TcpError(ErrorCode::kSizing, "tensor dimension must be positive");
  }
}

DenseTensor DenseTensor::Diagonal(std::size_t order,
                                  std::span<const double> diagonal) {
  DenseTensor a(order, diagonal.size());
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    a.Set(MultiIndex(order, i), diagonal[i]);
  }
  return a;
}

void DenseTensor::Set(const MultiIndex& index, double value) {
  if (index.size() != order_) {
    throw TcpError(ErrorCode::kSizing,
                   "index of arity " + std::to_string(index.size()) +
                       " for tensor of order " + std::to_string(order_));
  }
  for (std::size_t k : index) {
    if (k >= dim_) {
      throw TcpError(ErrorCode::kSizing,
                     "index component " + std::to_string(k) +
                         " out of range for dimension " + std::to_string(dim_));
    }
  }
  entries_[index] = value;
}

double DenseTensor::Get(const MultiIndex& index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? 0.0 : it->second;
}

double DenseTensor::DiagonalEntry(std::size_t i) const {
  return Get(MultiIndex(order_, i));
}

Vector DenseTensor::DiagonalEntries() const {
  Vector d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = DiagonalEntry(i);
  return d;
}

bool DenseTensor::IsDiagonal() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) {
    return e.second == 0.0 || IsDiagonalIndex(e.first);
  });
}

bool DenseTensor::IsPositiveDiagonal() const {
  if (!IsDiagonal()) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!(DiagonalEntry(i) > 0.0)) return false;
  }
  return true;
}

bool DenseTensor::IsZero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second == 0.0; });
}

Vector ContractM1(const DenseTensor& a, std::span<const double> x) {
  CheckLength(a, x);
  Vector out(a.dim(), 0.0);
  for (const auto& [index, value] : a.entries()) {
    double term = value;
    for (std::size_t k = 1; k < index.size(); ++k) term *= x[index[k]];
    out[index[0]] += term;
  }
  return out;
}

double ContractFull(const DenseTensor& a, std::span<const double> x) {
  CheckLength(a, x);
  double sum = 0.0;
  for (const auto& [index, value] : a.entries()) {
    double term = value;
    for (std::size_t k : index) term *= x[k];
    sum += term;
  }
  return sum;
}

double TensorInfNorm(const DenseTensor& a) {
  Vector row(a.dim(), 0.0);
  for (const auto& [index, value] : a.entries()) row[index[0]] += std::abs(value);
  return *std::max_element(row.begin(), row.end());
}

double InfNorm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double TwoNorm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

VectorNorms VecNorms(std::span<const double> x) {
  return {InfNorm(x), TwoNorm(x)};
}

double SignedRoot(double value, int r) {
  if (r <= 0 || r % 2 == 0) {
    throw TcpError(ErrorCode::kInvalidArgument,
                   "signed root requires an odd positive degree, got " +
                       std::to_string(r));
  }
  if (r == 1 || value == 0.0 || !std::isfinite(value)) return value;
  const double mag = std::abs(value);
  double y = r == 3 ? std::cbrt(mag) : std::pow(mag, 1.0 / r);
  // libm roots can miss by a few ulps (cbrt(0.125) != 0.5 on glibc). Walk to
  // the double whose r-th power, evaluated in wide precision, is closest.
#ifdef __SIZEOF_FLOAT128__
  using Wide = __float128;
#else
  using Wide = long double;
#endif
  auto residual = [&](double c) {
    Wide p = 1;
    for (int i = 0; i < r; ++i) p *= static_cast<Wide>(c);
    const Wide d = p - static_cast<Wide>(mag);
    return d < 0 ? -d : d;
  };
  for (int step = 0; step < 16; ++step) {
    const double lo = std::nextafter(y, 0.0);
    const double hi = std::nextafter(y, std::numeric_limits<double>::infinity());
    const auto r_y = residual(y);
    if (residual(lo) < r_y) {
      y = lo;
    } else if (std::isfinite(hi) && residual(hi) < r_y) {
      y = hi;
    } else {
      break;
    }
  }
  return std::copysign(y, value);
}

Vector SignedRoot(std::span<const double> x, int r) {
  SignedRoot(0.0, r);  // validates r for empty input too
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = SignedRoot(x[i], r);
  return out;
}

Vector PositivePart(std::span<const double> x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(0.0, x[i]);
  return out;
}

Vector Subtract(std::span<const double> x, std::span<const double> y) {
  CheckSameLength(x, y);
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

Vector Add(std::span<const double> x, std::span<const double> y) {
  CheckSameLength(x, y);
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

Vector Scale(std::span<const double> x, double factor) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v *= factor;
  return out;
}

Vector Negate(std::span<const double> x) { return Scale(x, -1.0); }

double Dot(std::span<const double> x, std::span<const double> y) {
  CheckSameLength(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace tcpbound
