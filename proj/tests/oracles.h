#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths: contractions enumerate all n^m index tuples, diagonal problems
// are solved and bounded with scalar closed forms and std::pow, and the
// slack of a diagonal solution is taken from its analytic value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tcpbound/tensor.h"

namespace tcpbound::testing {

// Sign-preserving real root via std::pow, independent of SignedRoot.
inline double OddRoot(double x, int r) {
  return x < 0 ? -std::pow(-x, 1.0 / r) : std::pow(x, 1.0 / r);
}

// True when y is a correctly rounded r-th root of x > 0: neither neighbouring
// double has an r-th power closer to x. Powers are taken in quad precision,
// which resolves the comparison for the small degrees used here.
inline bool IsCorrectlyRoundedRoot(double y, double x, int r) {
  auto err = [&](double c) {
    __float128 p = 1;
    for (int i = 0; i < r; ++i) p *= static_cast<__float128>(c);
    const __float128 d = p - static_cast<__float128>(x);
    return d < 0 ? -d : d;
  };
  const __float128 e = err(y);
  return e <= err(std::nextafter(y, 0.0)) && e <= err(std::nextafter(y, 2.0 * y));
}

inline std::vector<double> BruteContractM1(const DenseTensor& a,
                                           const std::vector<double>& x) {
  const std::size_t n = a.dim();
  const std::size_t m = a.order();
  std::vector<double> out(n, 0.0);
  MultiIndex idx(m, 0);
  while (true) {
    double term = a.Get(idx);
    for (std::size_t k = 1; k < m; ++k) term *= x[idx[k]];
    out[idx[0]] += term;
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
    if (k == m) break;
  }
  return out;
}

inline double BruteInfNorm(const DenseTensor& a) {
  const std::size_t n = a.dim();
  const std::size_t m = a.order();
  std::vector<double> row(n, 0.0);
  MultiIndex idx(m, 0);
  while (true) {
    row[idx[0]] += std::abs(a.Get(idx));
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
    if (k == m) break;
  }
  return *std::max_element(row.begin(), row.end());
}

inline DenseTensor RandomTensor(std::mt19937_64& rng, std::size_t order,
                                std::size_t dim, double density = 0.7) {
  DenseTensor a(order, dim);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  MultiIndex idx(order, 0);
  while (true) {
    if (coin(rng) < density) a.Set(idx, val(rng));
    std::size_t k = 0;
    for (; k < order; ++k) {
      if (++idx[k] < dim) break;
      idx[k] = 0;
    }
    if (k == order) break;
  }
  return a;
}

struct DiagonalCase {
  int order = 4;
  std::vector<double> diag;
  std::vector<double> q;
  std::vector<double> u;
};

/// Seeded positive diagonal instances: n in {1,2,3}, diagonal in [0.5, 10],
/// q in [-5, 5], u in [-3, 3].
inline std::vector<DiagonalCase> RandomDiagonalCases(std::uint64_t seed,
                                                     int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> diag(0.5, 10.0);
  std::uniform_real_distribution<double> qd(-5.0, 5.0);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  std::vector<DiagonalCase> cases(count);
  for (auto& c : cases) {
    const int n = dim(rng);
    for (int i = 0; i < n; ++i) {
      c.diag.push_back(diag(rng));
      c.q.push_back(qd(rng));
      c.u.push_back(ud(rng));
    }
  }
  return cases;
}

inline std::vector<double> DiagonalSolutionOracle(const DiagonalCase& c) {
  std::vector<double> z(c.diag.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = std::pow(std::max(0.0, -c.q[i]) / c.diag[i], 1.0 / (c.order - 1));
  }
  return z;
}

struct DiagonalBoundsExpect {
  double v_inf = 0, v_t = 0, d = 0;
  std::size_t t = 0;
  double lb_new = 0, ub_new = 0, lb_base = 0, ub_base = 0;
  double sol_lb = 0, sol_ub = 0;
};

/// Scalar evaluation of every bound for a diagonal case at solution z. The
/// slack of the solution is used analytically: zero where z_i > 0, q_i else.
inline DiagonalBoundsExpect DiagonalBoundsOracle(const DiagonalCase& c,
                                                 const std::vector<double>& z) {
  const int r = c.order - 1;
  const std::size_t n = c.diag.size();
  DiagonalBoundsExpect e;
  double best = -INFINITY;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = c.u[i] - z[i];
    const double slack = z[i] > 0 ? 0.0 : c.q[i];
    const double s = OddRoot(c.diag[i] * std::pow(d, r), r) + OddRoot(slack, r);
    v[i] = std::min(c.u[i], s);
    e.v_inf = std::max(e.v_inf, std::abs(v[i]));
    const double obj = c.diag[i] * std::pow(d, c.order);
    if (obj > best) {
      best = obj;
      e.t = i;
    }
  }
  e.v_t = v[e.t];
  const double alpha = std::pow(*std::min_element(c.diag.begin(), c.diag.end()), 1.0 / r);
  const double nr = std::pow(*std::max_element(c.diag.begin(), c.diag.end()), 1.0 / r);
  const double b = e.v_inf * (1 + nr);
  e.d = std::max(0.0, b * b - 4 * alpha * e.v_t * e.v_t);
  e.lb_new = (b - std::sqrt(e.d)) / (2 * alpha);
  e.ub_new = (b + std::sqrt(e.d)) / (2 * alpha);
  e.lb_base = e.v_inf / (1 + nr);
  e.ub_base = b / alpha;
  double negq = 0;
  for (double qi : c.q) negq = std::max(negq, -qi);
  e.sol_lb = std::pow(negq, 1.0 / r) / nr;
  e.sol_ub = std::pow(negq, 1.0 / r) / alpha;
  return e;
}

inline bool RelClose(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace tcpbound::testing
