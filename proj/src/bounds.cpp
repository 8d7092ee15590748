#include "heat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace heat {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kLn2 = std::numbers::ln2;

double to_d(const Rational& r) { return to_double(r); }

double entropy(double x) { return x > 0 ? x * std::log(x) : 0.0; }

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// e >= P/Q with Q = N!, P = sum_{i<=N} N!/i!.
struct ELowerBound {
  BigInt p;
  BigInt q;
};

const ELowerBound& e_lower_bound() {
  static const ELowerBound bound = [] {
    constexpr int kTerms = 30;
    ELowerBound b{0, factorial(kTerms)};
    BigInt term = 1;  // N!/i! for i = N, N-1, ..., 0
    for (int i = kTerms; i >= 0; --i) {
      b.p += term;
      term *= i;
    }
    return b;
  }();
  return bound;
}

}  // namespace

const char* to_string(RadiusKind kind) {
  switch (kind) {
    case RadiusKind::infinite: return "infinite";
    case RadiusKind::finite_lower_bound: return "finite-lower-bound";
    case RadiusKind::out_of_hypothesis: return "out-of-hypothesis";
  }
  return "?";
}

RadiusCertificate radius_estimate(const GrowthProfile& gp, const DegreeGrowth& dg) {
  if (!(dg.c > 0)) throw DomainError("radius_estimate: C must be positive");
  if (gp.a2 < 0 || dg.a3 < 0) throw DomainError("radius_estimate: exponents must be nonnegative");
  RadiusCertificate cert;
  cert.zeta = Rational(1) - gp.a2 - dg.a3;
  if (cert.zeta > 0) {
    cert.kind = RadiusKind::infinite;
    cert.r = std::numeric_limits<double>::infinity();
  } else if (cert.zeta == 0) {
    cert.kind = RadiusKind::finite_lower_bound;
    cert.r = 1.0 / (2.0 * kE * dg.c);
  } else {
    cert.kind = RadiusKind::out_of_hypothesis;
    cert.r = 0.0;
  }
  return cert;
}

double growth_envelope(const GrowthProfile& gp, std::int64_t d) {
  if (d < 0) throw DomainError("growth_envelope: negative distance");
  if (d == 0) return gp.a1;
  const auto dd = static_cast<double>(d);
  return gp.a1 * std::max(1.0, std::exp(to_d(gp.a2) * dd * std::log(dd)));
}

double degree_envelope(const DegreeGrowth& dg, std::int64_t d) {
  if (d < 0) throw DomainError("degree_envelope: negative distance");
  if (d == 0) return dg.c;
  return dg.c * std::pow(static_cast<double>(d), to_d(dg.a3));
}

double log_remainder_bound(std::int64_t k, double delta, const DegreeGrowth& dg, const GrowthProfile& gp, double radius) {
  if (k < 1) throw DomainError("remainder_bound: k must be positive");
  if (!(radius >= 1)) throw DomainError("remainder_bound: R must be at least 1");
  if (!(delta > 0) || !(dg.c > 0) || !(gp.a1 > 0)) throw DomainError("remainder_bound: delta, C, A1 must be positive");
  const auto kk = static_cast<double>(k);
  const double exponent = to_d(gp.a2 + dg.a3);
  return kk * std::log(2.0 * delta * dg.c) - std::lgamma(kk + 1.0) + std::log(gp.a1) +
         exponent * entropy(kk + radius);
}

double remainder_bound(std::int64_t k, double delta, const DegreeGrowth& dg, const GrowthProfile& gp, double radius) {
  return std::exp(log_remainder_bound(k, delta, dg, gp, radius));
}

double remainder_decay_threshold(double zeta, double delta, double c, double radius) {
  if (!(zeta > 0) || !(zeta <= 1)) throw DomainError("remainder_decay_threshold: zeta must be in (0,1]");
  const double t1 = std::exp(2.0 * (1.0 - zeta) * (kLn2 + 1.0) * radius);
  const double t2 = std::pow(2.0 * delta * c * kE, 3.0 / zeta);
  const double t3 = 3.0 * (1.0 - zeta) * radius / zeta;
  return std::max({1.0, radius, t1, t2, t3});
}

double stirling_lower(int k) {
  if (k < 1) throw DomainError("stirling_lower: k must be positive");
  const double kk = k;
  return std::exp(kk * std::log(kk) + 0.5 * std::log(kk) - kk);
}

bool stirling_lower_holds_exact(int k) {
  if (k < 1) throw DomainError("stirling_lower: k must be positive");
  // k! >= k^k sqrt(k) e^{-k}  <=  (k!)^2 P^{2k} >= k^{2k+1} Q^{2k}  with P/Q <= e.
  const auto& e = e_lower_bound();
  const auto two_k = static_cast<unsigned>(2 * k);
  const BigInt f = factorial(k);
  const BigInt lhs = f * f * boost::multiprecision::pow(e.p, two_k);
  const BigInt rhs = boost::multiprecision::pow(BigInt(k), two_k + 1) * boost::multiprecision::pow(e.q, two_k);
  return lhs >= rhs;
}

double lagrange_gap_bound(int k, double radius) {
  if (!(radius >= 1)) throw DomainError("lagrange_gap_bound: R must be at least 1");
  if (k < radius) throw DomainError("lagrange_gap_bound: requires k >= R");
  return (kLn2 + 1.0 + std::log(static_cast<double>(k))) * radius;
}

double convexity_split(int k, int d) {
  if (k < 1 || d < 1) throw DomainError("convexity_split: k and d must be positive");
  const double kk = k;
  const double dd = d;
  return kk * std::log(kk) + kk * kLn2 + dd * std::log(2.0 * dd);
}

bool convexity_split_holds(int k, int d) {
  const double bound = convexity_split(k, d);
  const double value = entropy(static_cast<double>(k) + d);
  const double margin = bound - value;
  const double slack = 1e-9 * std::max(1.0, value);
  if (margin > slack) return true;
  if (margin < -slack) return false;
  // k^k 2^k (2d)^d >= (k+d)^{k+d}
  using boost::multiprecision::pow;
  const auto uk = static_cast<unsigned>(k);
  const auto ud = static_cast<unsigned>(d);
  const BigInt lhs = pow(BigInt(k), uk) * pow(BigInt(2), uk) * pow(BigInt(2 * d), ud);
  const BigInt rhs = pow(BigInt(k + d), uk + ud);
  return lhs >= rhs;
}

std::vector<Rational> exponent_grid() {
  std::vector<Rational> grid;
  for (int i = 0; i <= 40; ++i) grid.emplace_back(Rational(i) / 20);
  return grid;
}

GrowthFit fit_growth_profile(const Graph& g, const LocalFunction<double>& f, int rmax) {
  if (rmax < 2) throw DomainError("fit_growth_profile: Rmax must be at least 2");
  const auto entries = g.ball_entries(g.root(), rmax);
  double near = 0.0;
  double all = 0.0;
  for (const auto& e : *entries) {
    const double v = std::fabs(f(e.v));
    all = std::max(all, v);
    if (e.distance <= 1) near = std::max(near, v);
  }
  GrowthFit fit;
  fit.rmax = rmax;
  fit.profile.a1 = near > 0 ? near : (all > 0 ? all : 1.0);
  for (const auto& a2 : exponent_grid()) {
    GrowthProfile candidate{fit.profile.a1, a2};
    bool ok = true;
    for (const auto& e : *entries) {
      if (std::fabs(f(e.v)) > growth_envelope(candidate, e.distance)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      fit.profile.a2 = a2;
      return fit;
    }
  }
  throw PreconditionError("fit_growth_profile: f is unbounded for every grid exponent A2 <= 2");
}

DegreeFit fit_degree_growth(const Graph& g, int rmax) {
  if (rmax < 1) throw DomainError("fit_degree_growth: Rmax must be at least 1");
  const auto entries = g.ball_entries(g.root(), rmax);
  std::vector<double> degs;
  degs.reserve(entries->size());
  double c = 0.0;
  for (const auto& e : *entries) {
    degs.push_back(degree(g, e.v));
    if (e.distance <= 1) c = std::max(c, degs.back());
  }
  DegreeFit fit;
  fit.rmax = rmax;
  fit.growth.c = c > 0 ? c : 1.0;
  const auto grid = exponent_grid();
  for (const auto& a3 : grid) {
    DegreeGrowth candidate{fit.growth.c, a3};
    bool ok = true;
    for (std::size_t i = 0; i < entries->size() && ok; ++i) {
      ok = degs[i] <= degree_envelope(candidate, (*entries)[i].distance);
    }
    if (ok) {
      fit.growth.a3 = a3;
      return fit;
    }
  }
  fit.growth.a3 = grid.back();
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const auto d = (*entries)[i].distance;
    if (d >= 1) fit.growth.c = std::max(fit.growth.c, degs[i] / (static_cast<double>(d) * d));
  }
  return fit;
}

bool growth_profile_holds(const Graph& g, const LocalFunction<double>& f, const GrowthProfile& gp, int rmax) {
  for (const auto& e : *g.ball_entries(g.root(), rmax)) {
    if (std::fabs(f(e.v)) > growth_envelope(gp, e.distance)) return false;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto d = distance(g, g.root(), f.support()[i]);
    if (std::fabs(f.values()[i]) > growth_envelope(gp, d)) return false;
  }
  return true;
}

bool degree_growth_holds(const Graph& g, const DegreeGrowth& dg, int rmax) {
  for (const auto& e : *g.ball_entries(g.root(), rmax)) {
    if (degree(g, e.v) > degree_envelope(dg, e.distance)) return false;
  }
  return true;
}

}  // namespace heat
