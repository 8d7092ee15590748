#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frozen_values.hpp"
#include "heat/fixtures.hpp"
#include "heat/oracle.hpp"
#include "heat/series.hpp"

using namespace heat;

namespace {

std::shared_ptr<const Graph> line() { return std::make_shared<IntegerLine>(); }

double rel(double got, double want) { return std::fabs(got - want) / std::max(1e-300, std::fabs(want)); }

}  // namespace

TEST(Series, IntegerLineAgainstBesselValues) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)), 1e-13);
  EXPECT_LT(rel(series_eval(s, vertex(0), -0.1).value, frozen::kZm01X0), 1e-12);
  EXPECT_LT(rel(series_eval(s, vertex(1), -0.1).value, frozen::kZm01X1), 1e-11);
  EXPECT_LT(std::fabs(series_eval(s, vertex(5), -0.1).value - frozen::kZm01X5), 1e-13);
  EXPECT_LT(rel(series_eval(s, vertex(0), 0.3).value, frozen::kZ03X0), 1e-12);
  EXPECT_LT(rel(series_eval(s, vertex(-1), 0.3).value, frozen::kZ03X1), 1e-11);
  EXPECT_LT(std::fabs(series_eval(s, vertex(5), 0.3).value - frozen::kZ03X5), 1e-13);
}

TEST(Series, K2ClosedForm) {
  SeriesSolution s(complete2(), LocalFunction<double>::delta(vertex(0)), 1e-13);
  EXPECT_NEAR(series_eval(s, vertex(0), -0.1).value, frozen::kK2U0, 1e-13);
  EXPECT_NEAR(series_eval(s, vertex(1), -0.1).value, frozen::kK2U1, 1e-13);
}

TEST(Series, ZeroTimeReturnsData) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0), 2.5));
  const auto r = series_eval(s, vertex(0), 0.0);
  EXPECT_EQ(r.value, 2.5);
  EXPECT_EQ(r.k_used, 0);
}

TEST(Series, TailBoundRespectsTolerance) {
  SeriesSolution s(std::make_shared<Lattice>(2), LocalFunction<double>::delta(vertex(0)), 1e-10);
  for (double t : {-0.5, -0.1, 0.2, 0.7}) {
    const auto [k, tail] = s.truncation(t);
    EXPECT_LE(tail, 1e-10);
    EXPECT_GT(k, 0);
  }
}

TEST(Series, TruncationFailsPastTheCap) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)), 1e-12);
  EXPECT_THROW(s.truncation(200.0), TruncationFailure);
}

TEST(Series, ConstructorPreconditions) {
  EXPECT_THROW(SeriesSolution(nullptr, LocalFunction<double>::delta(vertex(0))), DomainError);
  EXPECT_THROW(SeriesSolution(line(), LocalFunction<double>::delta(vertex(0)), 0.0), DomainError);
  EXPECT_THROW(SeriesSolution(complete2(), LocalFunction<double>::delta(vertex(7))), DomainError);
}

TEST(Series, RadiusCertificateEnforced) {
  RadiusCertificate c;
  c.kind = RadiusKind::finite_lower_bound;
  c.r = 0.1;
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)), 1e-11, c);
  EXPECT_NO_THROW(series_eval(s, vertex(0), 0.05));
  EXPECT_THROW(series_eval(s, vertex(0), -0.2), RadiusExceeded);
}

TEST(Series, BackwardIsNegatedTimeBitForBit) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)));
  for (double t : {0.01, 0.1, 0.4}) {
    EXPECT_EQ(backward_solve(s, vertex(1), t).value, series_eval(s, vertex(1), -t).value);
  }
  EXPECT_THROW(backward_solve(s, vertex(0), -0.1), DomainError);
}

TEST(Series, MatchesDenseExponentialOnRandomGraph) {
  const auto g = random_weighted_graph(30, 40, 5);
  std::mt19937_64 rng(9);
  std::vector<std::pair<Vertex, double>> pairs;
  for (Vertex v : g->vertices()) pairs.push_back({v, uniform_real(rng, -1, 1)});
  const auto a = LocalFunction<double>::from_pairs(pairs);
  // Large |t| is refused by the planner here: the rounding term grows like e^{2M|t|}.
  SeriesSolution s(g, a, 1e-11);
  EXPECT_THROW(s.truncation(0.3), TruncationFailure);
  const auto op = dense_laplacian<double>(*g);
  const auto av = op.to_vector(a);
  for (double t : {-0.1, 0.08}) {
    const auto ref = expm_apply(op, av, t);
    for (std::size_t i = 0; i < op.size(); ++i) EXPECT_NEAR(series_eval(s, op.order[i], t).value, ref[i], 1e-10);
  }
}

TEST(Series, GridParallelEqualsSerial) {
  SeriesSolution s(std::make_shared<RegularTree>(3), LocalFunction<double>::delta(vertex(0)));
  const auto vs = ball(s.graph(), s.graph().root(), 3);
  const std::vector<double> ts{-0.2, -0.05, 0.1, 0.3};
  const auto a = evaluate_grid(s, vs, ts, Execution::serial);
  const auto b = evaluate_grid(s, vs, ts, Execution::parallel);
  ASSERT_EQ(a.size(), vs.size() * ts.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].tail_bound, b[i].tail_bound);
  }
}

TEST(Series, ResidualWithinBound) {
  SeriesSolution s(std::make_shared<Lattice>(2), LocalFunction<double>::delta(vertex(0)), 1e-12);
  for (double t : {-0.3, 0.2}) {
    const auto r = residual_check(s, vertex(0), t, 1e-3);
    EXPECT_LE(r.residual, r.bound + 1e-12);
  }
}

TEST(Series, TimeDerivativeMatchesDifferenceQuotient) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)), 1e-14);
  const double h = 1e-5;
  const double fd = (series_eval(s, vertex(0), 0.2 + h).value - series_eval(s, vertex(0), 0.2 - h).value) / (2 * h);
  EXPECT_NEAR(series_time_derivative(s, vertex(0), 0.2).value, fd, 1e-8);
}

TEST(Audits, BackwardCertifiedForDelta) {
  IntegerLine z;
  const auto r = check_backward_solvability(z, LocalFunction<Rational>::delta(vertex(0)), 2.0, 10, 5);
  EXPECT_EQ(r.verdict, BackwardVerdict::certified);
  EXPECT_LT(r.a4, 0.95);
  EXPECT_GT(r.audited, 0u);
  EXPECT_EQ(r.arithmetic, "exact-rational");
}

TEST(Audits, BackwardRefutedForHugeData) {
  IntegerLine z;
  const auto r = check_backward_solvability(z, LocalFunction<double>::delta(vertex(0), 1e30), 2.0, 10, 5);
  EXPECT_EQ(r.verdict, BackwardVerdict::refuted_up_to_k);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(Audits, BackwardDegreePrecondition) {
  Lattice l(2);
  EXPECT_THROW(check_backward_solvability(l, LocalFunction<double>::delta(vertex(0)), 3.0, 4, 3), PreconditionError);
}

TEST(Audits, CoefficientAuditPassesOnDelta) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)));
  const auto r = coefficient_bound_audit(s, {1.0, 0}, {2.0, 0}, 12, 6);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.precondition_ok);
  EXPECT_EQ(r.method, "generic");
  EXPECT_GT(r.checked, 0u);
}

TEST(Audits, CoefficientAuditCatchesWrongConstant) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)));
  const auto r = coefficient_bound_audit(s, {1.0, 0}, {1.0, 0}, 6, 3);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->k, 2);
}

TEST(Audits, CoefficientAuditCatchesInjectedFault) {
  SeriesSolution s(line(), LocalFunction<double>::delta(vertex(0)));
  auto bad = s.coefficients().at(2);
  std::vector<double> v(bad.values().begin(), bad.values().end());
  for (auto& x : v) x *= 1e6;
  s.coefficients().overwrite(2, LocalFunction<double>({bad.support().begin(), bad.support().end()}, v));
  const auto r = coefficient_bound_audit(s, {1.0, 0}, {2.0, 0}, 6, 3);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violation->k, 2);
}

TEST(Audits, ExactRadialPathAgreesWithGeneric) {
  RegularTree t(3);
  const auto radial = coefficient_bound_audit(t, LocalFunction<Rational>::delta(t.root()), {1.0, 0}, {3.0, 0}, 8, 4);
  EXPECT_EQ(radial.method, "radial-quotient");
  EXPECT_TRUE(radial.pass);
  // Non-radial data forces the generic path.
  const auto f = LocalFunction<Rational>::from_pairs({{t.root(), Rational(1)}, {vertex(1), Rational(1, 2)}});
  const auto generic = coefficient_bound_audit(t, f, {1.0, 0}, {3.0, 0}, 6, 3);
  EXPECT_EQ(generic.method, "generic");
  EXPECT_TRUE(generic.pass);
}

TEST(Audits, RadialProfile) {
  RegularTree t(3);
  std::vector<std::pair<Vertex, double>> pairs;
  for (Vertex v : ball(t, t.root(), 2)) pairs.push_back({v, t.depth(v) == 0 ? 2.0 : t.depth(v) == 1 ? 1.0 : 0.5});
  const auto prof = radial_profile(t, LocalFunction<double>::from_pairs(pairs));
  ASSERT_TRUE(prof.has_value());
  EXPECT_EQ(*prof, (std::vector<double>{2.0, 1.0, 0.5}));
  EXPECT_FALSE(radial_profile(t, LocalFunction<double>::delta(vertex(1))).has_value());
}

TEST(Examples, SeriesAndBackward) {
  SeriesSolution k2(complete2(), LocalFunction<double>::delta(vertex(0)));
  const auto zero = series_eval(k2, vertex(0), 0.0);
  EXPECT_EQ(zero.tail_bound, 0.0);
  EXPECT_NEAR(backward_solve(k2, vertex(0), 0.1).value, (1 + std::exp(0.2)) / 2, 1e-10);

  // (1, 0, -1, 0) on C4: Lap f = -2 f, so the backward solution is e^{2t} f.
  const auto c4 = cycle_graph(4);
  const auto f = LocalFunction<double>::from_pairs({{vertex(0), 1.0}, {vertex(2), -1.0}});
  SeriesSolution s(c4, f);
  EXPECT_NEAR(backward_solve(s, vertex(0), 0.2).value, std::exp(0.4), 1e-10);
  EXPECT_NEAR(backward_solve(s, vertex(2), 0.2).value, -std::exp(0.4), 1e-10);
  EXPECT_NEAR(backward_solve(s, vertex(1), 0.2).value, 0.0, 1e-10);
}

TEST(Examples, Residuals) {
  SeriesSolution k2(complete2(), LocalFunction<double>::delta(vertex(0)));
  EXPECT_EQ(residual_check(k2, vertex(0), 0.0, 1e-3).residual, 0.0);
  const auto r = residual_check(k2, vertex(0), -0.1, 1e-3);
  EXPECT_LE(r.residual, r.bound);
  EXPECT_LE(r.bound, 1e-9);
  SeriesSolution c(cycle_graph(100), LocalFunction<double>::delta(vertex(0)));
  EXPECT_LE(residual_check(c, vertex(0), -0.05, 1e-3).residual, 1e-9);
}

TEST(Examples, AuditsOnZeroAndGrowingData) {
  IntegerLine z;
  const auto zero = check_backward_solvability(z, LocalFunction<Rational>(), 2.0, 10, 5);
  EXPECT_EQ(zero.verdict, BackwardVerdict::certified);
  EXPECT_EQ(zero.a3, std::ldexp(1.0, -30));

  SeriesSolution zs(line(), LocalFunction<double>::delta(vertex(0)));
  EXPECT_TRUE(coefficient_bound_audit(zs, {1.0, 0}, {2.0, 0}, 20, 10).pass);
  SeriesSolution zero_series(line(), LocalFunction<double>());
  EXPECT_TRUE(coefficient_bound_audit(zero_series, {1.0, 0}, {2.0, 0}, 5, 3).pass);

  // Degrees growing away from the hub: either the degree audit refuses D or
  // the iterate audit refutes. A bound that fits the hub alone must be refused.
  std::string vs = R"({"id": 0, "mu": 1})";
  std::string es;
  int next = 1;
  int prev_hub = 0;
  for (int level = 1; level <= 4; ++level) {
    const int hub = next++;
    vs += R"(, {"id": )" + std::to_string(hub) + R"(, "mu": 1})";
    es += std::string(es.empty() ? "" : ", ") + R"({"u": )" + std::to_string(prev_hub) + R"(, "v": )" +
          std::to_string(hub) + R"(, "w": 1})";
    for (int leaf = 0; leaf < 3 * level; ++leaf) {
      const int id = next++;
      vs += R"(, {"id": )" + std::to_string(id) + R"(, "mu": 1})";
      es += R"(, {"u": )" + std::to_string(hub) + R"(, "v": )" + std::to_string(id) + R"(, "w": 1})";
    }
    prev_hub = hub;
  }
  const auto g = load_graph(R"({"root": 0, "vertices": [)" + vs + R"(], "edges": [)" + es + "]}");
  EXPECT_THROW(check_backward_solvability(*g, LocalFunction<double>::delta(vertex(0)), 2.0, 6, 4), PreconditionError);
}
