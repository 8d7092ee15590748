#pragma once

// Quantitative estimates behind time analyticity of ancient heat solutions:
// the analytic-radius trichotomy, the Taylor remainder majorant, and the
// elementary inequalities (Stirling, mean value, convexity) they rest on.
//
// Growth exponents are exact rationals so that the borderline case
// A2 + A3 = 1 is decided exactly rather than up to rounding.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heat/graph.hpp"
#include "heat/local_function.hpp"
#include "heat/scalar.hpp"

namespace heat {

/// |f(x)| <= A1 * e^{A2 d ln d}, d = d(x,p). At d = 0 the envelope is A1.
struct GrowthProfile {
  double a1 = 1.0;
  Rational a2 = 0;
};

/// Deg(x) <= C * d(x,p)^{A3} for d >= 1, and Deg(p) <= C.
struct DegreeGrowth {
  double c = 1.0;
  Rational a3 = 0;
};

enum class RadiusKind { infinite, finite_lower_bound, out_of_hypothesis };

const char* to_string(RadiusKind kind);

struct RadiusCertificate {
  RadiusKind kind = RadiusKind::out_of_hypothesis;
  double r = 0.0;  // +inf for `infinite`, 1/(2eC) for `finite_lower_bound`, 0 otherwise
  Rational zeta = 0;  // 1 - A2 - A3
};

/// r = inf if A2 + A3 < 1, r >= 1/(2eC) if A2 + A3 = 1, no claim otherwise.
RadiusCertificate radius_estimate(const GrowthProfile& gp, const DegreeGrowth& dg);

/// A1 * max(1, e^{A2 d ln d}) for d >= 1, A1 at d = 0.
double growth_envelope(const GrowthProfile& gp, std::int64_t d);
/// C * d^{A3} for d >= 1, C at d = 0.
double degree_envelope(const DegreeGrowth& dg, std::int64_t d);

/// Q = (2 delta C)^k / k! * A1 e^{(A2+A3)(k+R) ln(k+R)}; majorant of the
/// k-th Taylor remainder on B_R(p) for steps |t - t0| <= delta.
double remainder_bound(std::int64_t k, double delta, const DegreeGrowth& dg, const GrowthProfile& gp, double radius);
/// ln Q, finite even where Q itself under- or overflows.
double log_remainder_bound(std::int64_t k, double delta, const DegreeGrowth& dg, const GrowthProfile& gp, double radius);

/// Smallest k past which Q(k) <= A1 e^{-(zeta/3) k ln k} is guaranteed for
/// zeta > 0: max{1, R, e^{2(1-zeta)(ln2+1)R}, (2 delta C e)^{3/zeta}, 3(1-zeta)R/zeta}.
double remainder_decay_threshold(double zeta, double delta, double c, double radius);

/// k^k sqrt(k) / e^k, a lower bound for k!.
double stirling_lower(int k);
/// Decides k! >= k^k sqrt(k) e^{-k} in exact integer arithmetic, using a
/// rational lower bound for e.
bool stirling_lower_holds_exact(int k);

/// (ln 2 + 1 + ln k) R, an upper bound for (k+R) ln(k+R) - k ln k when k >= R.
double lagrange_gap_bound(int k, double radius);

/// k ln k + k ln 2 + d ln(2d), an upper bound for (k+d) ln(k+d).
double convexity_split(int k, int d);
/// Checks convexity_split(k, d) >= (k+d) ln(k+d). Floating comparison with
/// an exact integer fallback, since k = d is an equality case.
bool convexity_split_holds(int k, int d);

/// Grid used by the profile fits: {0, 0.05, ..., 2} as exact rationals.
std::vector<Rational> exponent_grid();

struct GrowthFit {
  GrowthProfile profile;
  int rmax = 0;
  std::string grid = "A2 in {0, 0.05, ..., 2}";
};

/// Fits (A1, A2) to values on B_Rmax(p). A1 is the largest |f| on B_1(p)
/// (the envelope is exactly A1 there), or max |f| when f vanishes on B_1(p);
/// A2 is the smallest grid exponent certifying the envelope on every vertex
/// of the ball. Throws PreconditionError if no grid exponent certifies.
GrowthFit fit_growth_profile(const Graph& g, const LocalFunction<double>& f, int rmax);

struct DegreeFit {
  DegreeGrowth growth;
  int rmax = 0;
  std::string grid = "A3 in {0, 0.05, ..., 2}";
};

/// Fits (C, A3) on B_Rmax(p). C is the largest degree on B_1(p), A3 the
/// smallest grid exponent with Deg(x) <= C d^{A3} on the ball. If no grid
/// exponent works, A3 = 2 and C is raised until it certifies.
DegreeFit fit_degree_growth(const Graph& g, int rmax);

/// True if |f(x)| <= envelope for every x in B_Rmax(p) union supp f.
bool growth_profile_holds(const Graph& g, const LocalFunction<double>& f, const GrowthProfile& gp, int rmax);
bool degree_growth_holds(const Graph& g, const DegreeGrowth& dg, int rmax);

}  // namespace heat
