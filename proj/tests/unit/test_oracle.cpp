#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frozen_values.hpp"
#include "heat/fixtures.hpp"
#include "heat/laplacian.hpp"
#include "heat/oracle.hpp"

using namespace heat;

TEST(Dense, LaplacianRowsSumToZero) {
  const auto g = random_weighted_graph(25, 20, 3);
  const auto op = dense_laplacian<Rational>(*g);
  for (std::size_t i = 0; i < op.size(); ++i) {
    Rational s = 0;
    for (const auto& x : op.matrix.row(i)) s += x;
    EXPECT_EQ(s, 0);
  }
}

TEST(Dense, RefusesInfiniteAndHugeGraphs) {
  EXPECT_THROW(dense_laplacian<double>(IntegerLine{}), DomainError);
  EXPECT_THROW(dense_laplacian<double>(*path_graph(2001)), DomainError);
}

TEST(Dense, BruteIteratesMatchSparseExactly) {
  const auto g = random_weighted_graph(20, 15, 8);
  const auto op = dense_laplacian<Rational>(*g);
  const auto a = LocalFunction<Rational>::delta(vertex(3));
  const auto av = op.to_vector(a);
  for (int k = 0; k <= 6; ++k) {
    const auto sparse = iterated_laplacian(*g, a, k);
    const auto dense = brute_iterate(op, std::span<const Rational>(av), k);
    for (std::size_t i = 0; i < op.size(); ++i) EXPECT_EQ(dense[i], sparse(op.order[i]));
  }
  EXPECT_THROW(brute_iterate(op, std::span<const Rational>(av), 51), DomainError);
}

TEST(Dense, MatmulAndMatvecParallelEqualSerial) {
  std::mt19937_64 rng(1);
  DenseMatrix<double> a(60, 60), b(60, 60);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = 0; j < 60; ++j) {
      a(i, j) = uniform_real(rng, -1, 1);
      b(i, j) = uniform_real(rng, -1, 1);
    }
  EXPECT_EQ(matmul(a, b, Execution::serial), matmul(a, b, Execution::parallel));
  const auto v = std::vector<double>(a.row(7).begin(), a.row(7).end());
  EXPECT_EQ(matvec(b, std::span<const double>(v), Execution::serial),
            matvec(b, std::span<const double>(v), Execution::parallel));
}

TEST(Expm, K2AgainstClosedForm) {
  const auto op = dense_laplacian<double>(*complete2());
  const std::vector<double> a{1.0, 0.0};
  const auto u = expm_apply(op, a, -0.1);
  EXPECT_NEAR(u[0], frozen::kK2U0, 1e-14);
  EXPECT_NEAR(u[1], frozen::kK2U1, 1e-14);
}

TEST(Expm, CycleAgainstBesselValues) {
  const auto op = dense_laplacian<double>(*cycle_graph(100));
  std::vector<double> a(100, 0.0);
  a[0] = 1.0;
  const auto u = expm_apply(op, a, -0.1);
  EXPECT_NEAR(u[0], frozen::kC100X0, 1e-13);
  EXPECT_NEAR(u[1], frozen::kC100X1, 1e-13);
  EXPECT_NEAR(u[50], frozen::kC100X50, 1e-13);
}

TEST(Expm, SemigroupAndInverse) {
  const auto g = random_weighted_graph(40, 30, 2);
  const auto op = dense_laplacian<double>(*g);
  std::mt19937_64 rng(4);
  std::vector<double> a(op.size());
  for (auto& x : a) x = uniform_real(rng, -1, 1);
  const auto two = expm_apply(op, expm_apply(op, a, 0.3), 0.4);
  const auto one = expm_apply(op, a, 0.7);
  const auto back = expm_apply(op, expm_apply(op, a, 0.5), -0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(two[i], one[i], 1e-11);
    EXPECT_NEAR(back[i], a[i], 1e-10);
  }
}

TEST(Expm, LargeTimeUsesSquaringPath) {
  const auto op = dense_laplacian<double>(*path_graph(10));
  std::vector<double> a(10, 0.0);
  a[0] = 1.0;
  // Mass is conserved on a finite graph with unit measure.
  const auto u = expm_apply(op, a, 500.0);
  double mass = 0;
  for (double x : u) mass += x;
  EXPECT_NEAR(mass, 1.0, 1e-10);
  for (double x : u) EXPECT_NEAR(x, 0.1, 1e-6);
}

TEST(Dense, DistancesMatchGraph) {
  const auto g = random_weighted_graph(30, 10, 6);
  const auto op = dense_laplacian<double>(*g);
  const auto d = dense_distances(op, 0);
  for (std::size_t i = 0; i < op.size(); ++i) EXPECT_EQ(d[i], distance(*g, op.order[0], op.order[i]));
  const auto iso = load_graph(R"({"root": 0, "vertices": [{"id": 0, "mu": 1}, {"id": 1, "mu": 1}], "edges": []})");
  EXPECT_EQ(dense_distances(dense_laplacian<double>(*iso), 0)[1], -1);
}

TEST(Dense, NormOne) {
  DenseMatrix<double> m(2, 2);
  m(0, 0) = 1;
  m(1, 0) = -3;
  m(0, 1) = 2;
  EXPECT_EQ(norm1(m), 4.0);
}
