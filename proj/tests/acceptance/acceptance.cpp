// Acceptance suite. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heat/bounds.hpp"
#include "heat/cli.hpp"
#include "heat/counterexample.hpp"
#include "heat/fixtures.hpp"
#include "heat/laplacian.hpp"
#include "heat/oracle.hpp"
#include "heat/series.hpp"

using namespace heat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

LocalFunction<double> random_data(const FiniteGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, double>> pairs;
  for (Vertex v : g.vertices()) pairs.push_back({v, uniform_real(rng, -1.0, 1.0)});
  return LocalFunction<double>::from_pairs(pairs);
}

const std::vector<double> kTimes{-0.1, -0.05, -0.01};

// Series against the dense exponential on the fixture set.
Outcome ac1() {
  double worst = 0.0;
  std::size_t compared = 0;
  for (const auto& [name, g] : oracle_fixture_set()) {
    const auto op = dense_laplacian<double>(*g);
    for (const auto& a : {LocalFunction<double>::delta(g->root()), random_data(*g, 7)}) {
      SeriesSolution s(g, a, 1e-11);
      const auto grid = evaluate_grid(s, op.order, kTimes);
      const auto av = op.to_vector(a);
      for (std::size_t j = 0; j < kTimes.size(); ++j) {
        const auto ref = expm_apply(op, av, kTimes[j]);
        for (std::size_t i = 0; i < op.size(); ++i) {
          worst = std::max(worst, std::fabs(grid[i * kTimes.size() + j].value - ref[i]));
          ++compared;
        }
      }
    }
  }
  return {worst <= 1e-10, std::to_string(compared) + " entries, max |series - expm| = " + fmt("%.3g", worst)};
}

// Backward solve is the series at -t, and inverts the dense semigroup.
Outcome ac2() {
  bool identical = true;
  double worst = 0.0;
  for (const auto& [name, g] : oracle_fixture_set()) {
    const auto op = dense_laplacian<double>(*g);
    for (const auto& a : {LocalFunction<double>::delta(g->root()), random_data(*g, 11)}) {
      SeriesSolution s(g, a, 1e-11);
      const auto av = op.to_vector(a);
      for (double t : kTimes) {
        const double tb = -t;
        const auto ref = expm_apply(op, av, -tb);
        for (std::size_t i = 0; i < op.size(); ++i) {
          const double b = backward_solve(s, op.order[i], tb).value;
          identical = identical && b == series_eval(s, op.order[i], -tb).value;
          worst = std::max(worst, std::fabs(b - ref[i]));
        }
      }
    }
  }
  return {identical && worst <= 1e-10, std::string(identical ? "bit-identical" : "NOT bit-identical") +
                                           ", max |backward - e^{-t Lap} a| = " + fmt("%.3g", worst)};
}

// One-ring estimate, point and set forms, exact arithmetic.
Outcome ac3() {
  std::mt19937_64 rng(20240611);
  const IntegerLine z;
  const Lattice l2(2);
  const RegularTree t3(3);
  const RegularTree t4(4, 0.5, 2.0);
  std::size_t point_violations = 0;
  std::size_t set_violations = 0;
  const int instances = 10000;
  for (int i = 0; i < instances; ++i) {
    std::shared_ptr<const FiniteGraph> finite;
    const Graph* g = nullptr;
    switch (i % 5) {
      case 0: g = &z; break;
      case 1: g = &l2; break;
      case 2: g = &t3; break;
      case 3: g = &t4; break;
      default:
        finite = random_weighted_graph(5 + static_cast<int>(uniform_index(rng, 26)),
                                       static_cast<int>(uniform_index(rng, 30)), rng());
        g = finite.get();
    }
    const auto region = ball(*g, g->root(), 3);
    std::vector<std::pair<Vertex, Rational>> pairs;
    for (Vertex v : region) {
      if (uniform_index(rng, 3) == 0) continue;
      const auto num = static_cast<long>(uniform_index(rng, 2001)) - 1000;
      const auto den = static_cast<long>(uniform_index(rng, 97)) + 1;
      pairs.push_back({v, Rational(num, den)});
    }
    const auto f = LocalFunction<Rational>::from_pairs(pairs);
    const auto lf = apply_laplacian(*g, f);
    const Vertex x = region[uniform_index(rng, region.size())];
    if (abs_value(lf(x)) > key_estimate_bound(*g, f, x)) ++point_violations;

    std::vector<Vertex> k;
    const auto size = 1 + uniform_index(rng, 6);
    for (std::uint64_t j = 0; j < size; ++j) k.push_back(region[uniform_index(rng, region.size())]);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    Rational worst = 0;
    for (Vertex y : k) worst = std::max(worst, abs_value(lf(y)));
    if (worst > key_estimate_set_bound(*g, f, k)) ++set_violations;
  }
  return {point_violations == 0 && set_violations == 0,
          std::to_string(instances) + " instances, " + std::to_string(point_violations) + " point / " +
              std::to_string(set_violations) + " set violations"};
}

// Radius trichotomy on a 32 x 32 exponent grid, plus the bounded-degree case.
Outcome ac4() {
  const double e = std::exp(1.0);
  const std::vector<double> cs{0.5, 1.0, 2.0, 3.0, 7.25};
  std::size_t points = 0;
  std::size_t wrong = 0;
  auto expect_finite = [&](const RadiusCertificate& c, double cval) {
    return c.kind == RadiusKind::finite_lower_bound &&
           std::fabs(c.r - 1.0 / (2.0 * e * cval)) <= 0x1.0p-52 * c.r;
  };
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      const Rational a2(i, 40);
      const Rational a3(j, 40);
      const double cval = cs[static_cast<std::size_t>(i + j) % cs.size()];
      const auto cert = radius_estimate({1.0, a2}, {cval, a3});
      const Rational sum = a2 + a3;
      bool ok = cert.zeta == 1 - sum;
      if (sum < 1) ok = ok && cert.kind == RadiusKind::infinite && std::isinf(cert.r);
      else if (sum == 1) ok = ok && expect_finite(cert, cval);
      else ok = ok && cert.kind == RadiusKind::out_of_hypothesis;
      wrong += ok ? 0 : 1;
      ++points;
    }
  }
  // A3 = 0 with C = D: infinite below A2 = 1, 1/(2eD) at A2 = 1.
  for (double d : {1.0, 2.0, 3.0, 4.0, 6.0}) {
    for (const auto& a2 : exponent_grid()) {
      if (a2 > 1) continue;
      const auto cert = radius_estimate({1.0, a2}, {d, 0});
      const bool ok = a2 < 1 ? cert.kind == RadiusKind::infinite : expect_finite(cert, d);
      wrong += ok ? 0 : 1;
      ++points;
    }
  }
  // Decimal inputs that only sum to 1 as rationals.
  wrong += radius_estimate({1.0, parse_rational("0.1")}, {1.0, parse_rational("0.9")}).kind ==
                   RadiusKind::finite_lower_bound
               ? 0
               : 1;
  ++points;
  return {wrong == 0, std::to_string(points) + " parameter points, " + std::to_string(wrong) + " mismatches"};
}

// Taylor remainder majorant: decay at zeta = 0, explicit threshold for zeta > 0.
Outcome ac5() {
  const double delta = 0.9 / (2.0 * std::exp(1.0));
  const double log_floor = std::log(1e-30);
  std::ostringstream detail;
  bool pass = true;
  for (double radius : {1.0, 5.0, 10.0}) {
    const GrowthProfile gp{1.0, Rational(1, 2)};
    const DegreeGrowth dg{1.0, Rational(1, 2)};
    std::int64_t last_increase = 0;
    std::int64_t first_below = -1;
    double prev = log_remainder_bound(1, delta, dg, gp, radius);
    for (std::int64_t k = 2; k < 10000; ++k) {
      const double lq = log_remainder_bound(k, delta, dg, gp, radius);
      if (lq >= prev) last_increase = k;
      if (first_below < 0 && lq < log_floor) first_below = k;
      prev = lq;
    }
    const bool ok = first_below > last_increase && first_below < 10000;
    pass = pass && ok;
    detail << "R=" << radius << ": decreasing from k=" << last_increase << ", <1e-30 at k=" << first_below << "; ";
  }
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (const Rational& zeta : {Rational(1, 5), Rational(1, 2)}) {
    const Rational half = (1 - zeta) / 2;
    const GrowthProfile gp{1.0, half};
    const DegreeGrowth dg{1.0, half};
    const double z = to_double(zeta);
    for (double radius : {1.0, 5.0, 10.0}) {
      const auto k0 = static_cast<std::int64_t>(std::ceil(remainder_decay_threshold(z, delta, 1.0, radius)));
      std::vector<std::int64_t> ks;
      for (std::int64_t k = k0; k <= k0 + 10000; ++k) ks.push_back(k);
      for (double k = static_cast<double>(k0) * 1.5; k <= 1e15; k *= 1.5) ks.push_back(static_cast<std::int64_t>(k));
      for (std::int64_t k : ks) {
        const auto kk = static_cast<double>(k);
        const double lq = log_remainder_bound(k, delta, dg, gp, radius);
        if (lq > std::log(gp.a1) - (z / 3.0) * kk * std::log(kk)) ++violations;
        ++checked;
      }
    }
  }
  pass = pass && violations == 0;
  detail << "zeta>0: " << checked << " k values past the threshold, " << violations << " violations";
  return {pass, detail.str()};
}

// Stirling, the mean value gap and the convexity split.
Outcome ac6() {
  std::size_t stirling = 0;
  for (int k = 1; k <= 500; ++k) stirling += stirling_lower_holds_exact(k) ? 0 : 1;
  std::size_t gap = 0;
  for (int r : {1, 2, 5, 10}) {
    for (int k = r; k <= 10000; ++k) {
      const double kk = k;
      const double lhs = (kk + r) * std::log(kk + r) - kk * std::log(kk);
      gap += lhs <= lagrange_gap_bound(k, r) ? 0 : 1;
    }
  }
  std::size_t convex = 0;
  for (int k = 1; k <= 1000; ++k) {
    for (int d = 1; d <= 1000; ++d) convex += convexity_split_holds(k, d) ? 0 : 1;
  }
  return {stirling + gap + convex == 0, "violations: Stirling " + std::to_string(stirling) + "/500, gap " +
                                            std::to_string(gap) + ", convexity " + std::to_string(convex) + "/1000000"};
}

// The flat-bump solution on Z.
Outcome ac7() {
  FlatBumpParams p;  // beta 4, default theta, epsilon 1, T 1
  p.validate(true);
  double max_res = 0.0;
  double max_v = 0.0;
  bool poly_zero = true;
  for (std::int64_t x = -10; x <= 10; ++x) {
    for (double t : {0.25, 0.5, 1.0}) {
      max_res = std::max(max_res, std::fabs(heat_residual_1d(p, x, t)));
      max_v = std::max(max_v, std::fabs(v_eval(p, x, t)));
    }
    poly_zero = poly_zero && residual_polynomial(p, x).empty();
  }
  const bool a = max_res <= 1e-9 * max_v && poly_zero;

  const auto growth = growth_audit(p, 60, default_time_grid());
  const bool b = growth.pass;

  bool flat = true;
  for (std::int64_t x = 0; x <= 3; ++x) flat = flat && non_analyticity_witness(p, x, 10, 1e-8).flat;
  const double v05 = v_eval(p, 0, 0.5);
  const bool c = flat && v05 == g_eval(p, 0.5) && v05 > 0;

  std::ostringstream d;
  d << "(a) residual " << fmt("%.3g", max_res) << " vs " << fmt("%.3g", 1e-9 * max_v)
    << (poly_zero ? ", polynomial zero" : ", polynomial NONZERO") << "; (b) " << growth.checked
    << " points on x in [" << growth.x_min << "," << growth.x_max << "] " << (b ? "ok" : "VIOLATED") << "; (c) "
    << (flat ? "flat to 1e-8" : "NOT flat") << ", v(0,0.5) = " << fmt("%.6g", v05);
  return {a && b && c, d.str()};
}

// |Lap^k delta_p| <= (2D)^k, exact, on Z and the 3-regular tree.
Outcome ac8() {
  bool pass = true;
  std::ostringstream d;
  const IntegerLine z;
  const RegularTree tree(3);
  for (const Graph* g : {static_cast<const Graph*>(&z), static_cast<const Graph*>(&tree)}) {
    const double dd = *g->degree_sup();
    const auto r = coefficient_bound_audit(*g, LocalFunction<Rational>::delta(g->root()), {1.0, 0}, {dd, 0}, 25, 25);
    pass = pass && r.pass && r.arithmetic == "exact-rational";
    d << g->describe() << ": " << r.method << " " << (r.pass ? "ok" : "VIOLATED") << " (" << r.checked
      << " (k, level) checks); ";
  }
  // Vertex-by-vertex cross-check on explicit supports.
  std::size_t generic_checks = 0;
  for (const auto& [g, kmax] : {std::pair<const Graph*, int>{&z, 25}, std::pair<const Graph*, int>{&tree, 12}}) {
    const Rational two_d(static_cast<long>(2 * *g->degree_sup()));
    const auto rates = radial_structure(*g, kmax + 1);
    IteratedLaplacianTable<Rational> table(*g, LocalFunction<Rational>::delta(g->root()));
    std::vector<Rational> levels{Rational(1)};
    Rational bound = 1;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) {
        levels = apply_laplacian_radial<Rational>(*rates, levels);
        bound *= two_d;
      }
      const auto& ak = table.at(k);
      for (std::size_t i = 0; i < ak.size(); ++i) {
        const auto dist = distance(*g, g->root(), ak.support()[i]);
        pass = pass && abs_value(ak.values()[i]) <= bound && ak.values()[i] == levels[static_cast<std::size_t>(dist)];
        ++generic_checks;
      }
    }
  }
  d << generic_checks << " vertex checks agree with the sphere values";
  return {pass, d.str()};
}

// Byte-identical verify reports.
Outcome ac9() {
  std::ostringstream a, b, err;
  const int ca = cli::run_cli({"verify"}, a, err);
  const int cb = cli::run_cli({"verify"}, b, err);
  const bool same = a.str() == b.str();
  return {ca == 0 && cb == 0 && same, std::to_string(a.str().size()) + " bytes, " +
                                          (same ? "identical" : "DIFFERENT") + ", exit codes " + std::to_string(ca) +
                                          "/" + std::to_string(cb)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s  %s  [%.2f s]\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
