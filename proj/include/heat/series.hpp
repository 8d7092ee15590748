#pragma once

// Time power series u(x,t) = sum_k a_k(x) t^k / k! with a_k = Lap^k a, and
// the backward Cauchy problem v_t + Lap v = 0, v(.,0) = a.
//
// Truncation is certified per evaluation. With M >= sup Deg and S = max|a|,
// chaining the one-ring estimate gives |a_k(x)| <= (2M)^k S, so term k is
// bounded by T(k) = (2M|t|)^k / k! * S. The ratio T(k+1)/T(k) = 2M|t|/(k+1)
// decreases in k, so once it drops below 1/2 the tail past K is at most
// T(K+1) / (1 - q) with q = T(K+2)/T(K+1).

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heat/bounds.hpp"
#include "heat/graph.hpp"
#include "heat/laplacian.hpp"
#include "heat/local_function.hpp"

namespace heat {

struct EvalResult {
  Vertex vertex{};
  double t = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
  int k_used = 0;
};

class SeriesSolution {
 public:
  static constexpr int kTermCap = 400;

  SeriesSolution(std::shared_ptr<const Graph> g, LocalFunction<double> a, double tolerance = 1e-11,
                 std::optional<RadiusCertificate> certificate = std::nullopt);

  const Graph& graph() const { return *graph_; }
  std::shared_ptr<const Graph> graph_ptr() const { return graph_; }
  const LocalFunction<double>& initial() const { return coefficients_->base(); }
  const IteratedLaplacianTable<double>& coefficients() const { return *coefficients_; }
  IteratedLaplacianTable<double>& coefficients() { return *coefficients_; }
  double tolerance() const { return tolerance_; }
  const std::optional<RadiusCertificate>& certificate() const { return certificate_; }

  /// M: an upper bound for Deg over the whole graph.
  double degree_bound() const { return degree_bound_; }
  /// S = max |a|.
  double data_bound() const { return data_bound_; }
  std::size_t neighbor_bound() const { return neighbor_bound_; }

  /// Terms needed at |t| for the tolerance, with the certified tail.
  /// Throws TruncationFailure past the term cap.
  std::pair<int, double> truncation(double t) const;

  /// Throws RadiusExceeded if the certificate forbids evaluation at t.
  void check_radius(double t) const;

 private:
  std::shared_ptr<const Graph> graph_;
  std::unique_ptr<IteratedLaplacianTable<double>> coefficients_;
  double tolerance_;
  std::optional<RadiusCertificate> certificate_;
  double degree_bound_ = 0.0;
  double data_bound_ = 0.0;
  std::size_t neighbor_bound_ = 0;
};

/// u(x,t) truncated at the certified order.
EvalResult series_eval(const SeriesSolution& s, Vertex x, double t);

/// Backward problem at t >= 0: exactly series_eval at -t.
EvalResult backward_solve(const SeriesSolution& s, Vertex x, double t);
EvalResult backward_solve(std::shared_ptr<const Graph> g, const LocalFunction<double>& a, Vertex x, double t,
                          double tol);

/// du/dt(x,t) from the differentiated series sum_k a_{k+1}(x) t^k / k!.
EvalResult series_time_derivative(const SeriesSolution& s, Vertex x, double t);

/// Row-major vertices x times grid; one OpenMP task per grid point.
std::vector<EvalResult> evaluate_grid(const SeriesSolution& s, std::span<const Vertex> vertices,
                                      std::span<const double> times, Execution exec = Execution::parallel);

struct ResidualReport {
  double residual = 0.0;  // |du/dt - Lap u| at (x,t)
  double bound = 0.0;     // combined truncation bound of both sides
};

/// |du/dt(x,t) - Lap u(x,t)| with du/dt from the differentiated series and
/// Lap u from evaluated neighbor values. `h` only widens the admissibility
/// check to t +- h.
ResidualReport residual_check(const SeriesSolution& s, Vertex x, double t, double h);

// ---------------------------------------------------------------------------
// Audits

struct CoefficientWitness {
  int k = 0;
  Vertex x{};
  int distance = 0;
  double value = 0.0;        // |a_k(x)|
  double log_value = 0.0;
  double bound = 0.0;        // may be +inf when it overflows; see log_bound
  double log_bound = 0.0;
};

enum class BackwardVerdict { certified, refuted_up_to_k, inconclusive };
const char* to_string(BackwardVerdict v);

struct BackwardSolvabilityReport {
  BackwardVerdict verdict = BackwardVerdict::inconclusive;
  double a3 = 0.0;   // fitted A3' (a power of two)
  double a4 = 0.0;   // fitted A4' < 1
  double degree_bound = 0.0;
  int kmax = 0;
  int rmax = 0;
  std::size_t audited = 0;  // nonzero (k, x) pairs examined
  std::vector<CoefficientWitness> witnesses;
  std::string arithmetic;
  std::string grid = "A4' in {0, 0.05, ..., 0.95}, A3' in {2^m : -30 <= m <= 60}";
  std::string caveat =
      "finite audit over k <= Kmax; certifies the series side only, the converse direction "
      "presumes a backward solution with the stated growth";
};

/// Audits |Lap^k a(x)| <= A3' (2D)^k e^{A4' (k+d) ln(k+d)} for k <= Kmax over
/// B_Rmax(p) union (supp a)_Kmax. Throws PreconditionError naming the first
/// vertex in that region with Deg > D.
template <class T>
BackwardSolvabilityReport check_backward_solvability(const Graph& g, const LocalFunction<T>& a, double degree_bound,
                                                     int kmax, int rmax);

struct CoefficientAuditReport {
  bool pass = false;
  bool precondition_ok = false;  // a satisfies the growth profile on the audited region
  std::string method;            // "generic" or "radial-quotient"
  std::string arithmetic;
  int kmax = 0;
  int rmax = 0;
  std::size_t checked = 0;
  std::optional<CoefficientWitness> violation;
  CoefficientWitness tightest;  // largest value/bound ratio seen
  std::string caveat =
      "bound applied to a_k = Lap^k a; valid when a extends to an ancient solution with the given profiles";
};

/// Checks |a_k(x)| <= A1 (2C)^k e^{(A2+A3)(k+d) ln(k+d)} for k <= Kmax and
/// x in B_Rmax(p), using the solution's coefficient table.
CoefficientAuditReport coefficient_bound_audit(const SeriesSolution& s, const GrowthProfile& gp,
                                               const DegreeGrowth& dg, int kmax, int rmax);

/// Exact-arithmetic variant. When a is radial and the distance partition
/// around p is equitable up to level Kmax + Rmax, the iterates are computed
/// on sphere values, which covers every vertex of every sphere at once.
CoefficientAuditReport coefficient_bound_audit(const Graph& g, const LocalFunction<Rational>& a,
                                               const GrowthProfile& gp, const DegreeGrowth& dg, int kmax,
                                               int rmax);

/// Sphere values of a when a is constant on the spheres of B_r(p) and zero
/// outside it; nullopt otherwise.
template <class T>
std::optional<std::vector<T>> radial_profile(const Graph& g, const LocalFunction<T>& a);

}  // namespace heat
