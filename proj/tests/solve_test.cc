#include "tcpbound/solve.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "tcpbound/error.h"

namespace tcpbound {
namespace {

using testing::ExampleInstance;

TEST(TcpInstanceTest, QLengthMustMatch) {
  EXPECT_THROW(TcpInstance(testing::IdentityDiagonal(4, 2), {1.0}), TcpError);
}

TEST(SolveEnumerateTest, ExampleHasSingleSolution) {
  const auto sols = SolveEnumerate(ExampleInstance());
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].z[0], 0.0);
  EXPECT_NEAR(sols[0].z[1], 0.5, 1e-12);
  EXPECT_EQ(sols[0].support, (std::vector<std::size_t>{1}));
  EXPECT_LE(sols[0].max_violation, 1e-10);
}

TEST(SolveEnumerateTest, NonnegativeQGivesZero) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseTensor a = testing::RandomTensor(rng, 4, 1 + trial % 3);
    TcpInstance inst(a, Vector(a.dim(), 0.5 * trial));
    const auto sols = SolveEnumerate(inst);
    ASSERT_FALSE(sols.empty());
    EXPECT_EQ(InfNorm(sols.front().z), 0.0);
  }
}

TEST(SolveEnumerateTest, DiagonalFullSupport) {
  const double d[] = {1.0, 8.0};
  const auto sols = SolveEnumerate(TcpInstance(DenseTensor::Diagonal(4, d), {-1.0, -8.0}));
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_NEAR(sols[0].z[0], 1.0, 1e-12);
  EXPECT_NEAR(sols[0].z[1], 1.0, 1e-12);
}

TEST(SolveEnumerateTest, RefusesLargeDimension) {
  SolveOptions opts;
  opts.max_dim = 2;
  try {
    SolveEnumerate(TcpInstance(testing::IdentityDiagonal(4, 3), {1, 1, 1}), opts);
    FAIL();
  } catch (const TcpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRefused);
  }
}

TEST(SolveEnumerateTest, FindsMultipleSolutions) {
  // A x^1 + q with A = [[1, 2], [2, 1]] (order 2), q = (-1, -1): an LCP with
  // solutions (1, 0), (0, 1) and (1/3, 1/3).
  DenseTensor a(2, 2);
  a.Set({0, 0}, 1.0);
  a.Set({0, 1}, 2.0);
  a.Set({1, 0}, 2.0);
  a.Set({1, 1}, 1.0);
  const auto sols = SolveEnumerate(TcpInstance(a, {-1.0, -1.0}));
  ASSERT_EQ(sols.size(), 3u);
  EXPECT_EQ(sols[0].support.size(), 1u);
  EXPECT_EQ(sols[1].support.size(), 1u);
  EXPECT_NEAR(sols[0].z[1], 1.0, 1e-10);  // (0, 1) sorts before (1, 0)
  EXPECT_NEAR(sols[1].z[0], 1.0, 1e-10);
  EXPECT_NEAR(sols[2].z[0], 1.0 / 3.0, 1e-10);
}

TEST(SolveEnumerateTest, RandomDiagonalMatchesOracle) {
  const auto cases = testing::RandomDiagonalCases(101, 60);
  for (const auto& c : cases) {
    const TcpInstance inst(DenseTensor::Diagonal(4, c.diag), c.q);
    const Vector oracle = testing::DiagonalSolutionOracle(c);
    const auto sols = SolveEnumerate(inst);
    ASSERT_EQ(sols.size(), 1u);
    EXPECT_LE(InfNorm(Subtract(sols[0].z, oracle)), 1e-8);
    EXPECT_TRUE(VerifySolution(inst, sols[0].z, 1e-8).passed);
  }
}

TEST(SolveEnumerateTest, CertificatesReverifyOnGeneralTensors) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> qd(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    DenseTensor a = testing::RandomTensor(rng, 4, 1 + trial % 3, 0.4);
    for (std::size_t i = 0; i < a.dim(); ++i) a.Set(MultiIndex(4, i), 3.0 + trial % 5);
    Vector q(a.dim());
    for (double& v : q) v = qd(rng);
    const TcpInstance inst(a, q);
    for (const auto& cert : SolveEnumerate(inst)) {
      EXPECT_TRUE(VerifySolution(inst, cert.z, 1e-8).passed);
    }
  }
}

TEST(SolveDiagonalTest, Values) {
  const SolutionCertificate ex = SolveDiagonal(ExampleInstance());
  EXPECT_EQ(ex.z, (Vector{0.0, 0.5}));
  EXPECT_TRUE(ex.passed);
  const double d[] = {1.0, 8.0};
  EXPECT_EQ(SolveDiagonal(TcpInstance(DenseTensor::Diagonal(4, d), {0.0, 0.0})).z,
            (Vector{0.0, 0.0}));
  const double one[] = {1.0};
  EXPECT_EQ(SolveDiagonal(TcpInstance(DenseTensor::Diagonal(4, one), {-8.0})).z,
            (Vector{2.0}));
}

TEST(SolveDiagonalTest, RejectsNonDiagonal) {
  DenseTensor a = testing::IdentityDiagonal(4, 2);
  a.Set({1, 0, 0, 0}, 1.0);
  EXPECT_THROW(SolveDiagonal(TcpInstance(a, {1.0, 1.0})), TcpError);
}

TEST(VerifySolutionTest, ExampleVerdicts) {
  const TcpInstance inst = ExampleInstance();
  const SolutionCertificate ok = VerifySolution(inst, std::vector<double>{0.0, 0.5}, 1e-10);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.max_violation, 0.0);
  EXPECT_EQ(ok.w, (Vector{1.0, 0.0}));

  const SolutionCertificate zero = VerifySolution(inst, std::vector<double>{0.0, 0.0}, 1e-10);
  EXPECT_FALSE(zero.passed);
  EXPECT_EQ(zero.w, (Vector{1.0, -1.0}));
  EXPECT_EQ(zero.max_violation, 1.0);

  const SolutionCertificate off = VerifySolution(inst, std::vector<double>{1.0, 0.5}, 1e-10);
  EXPECT_FALSE(off.passed);
  EXPECT_EQ(off.max_violation, 2.0);
}

TEST(VerifySolutionTest, RejectsNonpositiveTolerance) {
  EXPECT_THROW(VerifySolution(ExampleInstance(), std::vector<double>{0.0, 0.5}, 0.0),
               TcpError);
}

}  // namespace
}  // namespace tcpbound
