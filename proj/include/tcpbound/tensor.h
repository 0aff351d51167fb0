#pragma once

// Dense-semantics tensors in coordinate storage and the vector primitives the
// complementarity machinery is built from.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace tcpbound {

using Vector = std::vector<double>;
using MultiIndex = std::vector<std::size_t>;

/// An order-m, dimension-n real tensor. Indices are 0-based here; the problem
/// file format is 1-based. Absent index tuples are zero.
class DenseTensor {
 public:
  DenseTensor(std::size_t order, std::size_t dim);

  /// Positive diagonal tensor with entries a_{i...i} = diagonal[i].
  static DenseTensor Diagonal(std::size_t order, std::span<const double> diagonal);

  std::size_t order() const { return order_; }
  std::size_t dim() const { return dim_; }

  /// Stores (or overwrites) one entry. Throws kSizing on a malformed index.
  void Set(const MultiIndex& index, double value);
  double Get(const MultiIndex& index) const;

  /// a_{i i ... i}, zero when absent.
  double DiagonalEntry(std::size_t i) const;
  Vector DiagonalEntries() const;

  /// True if every stored entry off the main diagonal is zero.
  bool IsDiagonal() const;
  /// Diagonal with every a_{i...i} > 0.
  bool IsPositiveDiagonal() const;
  bool IsZero() const;

  const std::map<MultiIndex, double>& entries() const { return entries_; }

 private:
  std::size_t order_;
  std::size_t dim_;
  std::map<MultiIndex, double> entries_;
};

/// (A x^{m-1})_i = sum over (i, i2, ..., im) of a_{i i2...im} x_{i2} ... x_{im}.
Vector ContractM1(const DenseTensor& a, std::span<const double> x);

/// A x^m, a scalar.
double ContractFull(const DenseTensor& a, std::span<const double> x);

/// max_i sum_{i2..im} |a_{i i2 ... im}|.
double TensorInfNorm(const DenseTensor& a);

double InfNorm(std::span<const double> x);
double TwoNorm(std::span<const double> x);

struct VectorNorms {
  double inf = 0.0;
  double two = 0.0;
};
VectorNorms VecNorms(std::span<const double> x);

/// Real r-th root of a scalar, sign preserving. r must be odd.
double SignedRoot(double value, int r);

/// Componentwise x^{[1/r]} for odd r. Throws kInvalidArgument for even or
/// nonpositive r.
Vector SignedRoot(std::span<const double> x, int r);

/// Componentwise max(0, x_i).
Vector PositivePart(std::span<const double> x);

Vector Subtract(std::span<const double> x, std::span<const double> y);
Vector Add(std::span<const double> x, std::span<const double> y);
Vector Scale(std::span<const double> x, double factor);
Vector Negate(std::span<const double> x);
double Dot(std::span<const double> x, std::span<const double> y);

}  // namespace tcpbound
