#pragma once

// Non-analytic ancient solution on Z built from the flat bump
//   g(t) = exp(-t^{-beta}) for t > 0,  g(t) = 0 for t <= 0,
// via
//   v(x,t) = sum_{k=0}^{x} g^{(k)}(t) (x+k)(x+k-1)...(x-k+1) / (2k)!
//          = sum_{k=0}^{x} g^{(k)}(t) binom(x+k, 2k)          for x >= 0,
//   v(x,t) = v(-x-1,t)                                          for x <= -1.
//
// Derivatives: g^{(k)}(t) = R_k(1/t) e^{-t^{-beta}} with R_0 = 1 and
//   R_{k+1}(s) = beta s^{beta+1} R_k(s) - s^2 R_k'(s).
// For integer beta the R_k have integer coefficients and every evaluation
// goes through an exact polynomial at the exact rational value of 1/t. For
// real beta the R_k are kept as polynomials in (s, s^beta) with high
// precision coefficients.

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heat/scalar.hpp"

namespace heat {

struct FlatBumpParams {
  double beta = 4.0;
  std::optional<double> theta;  // default: 0.5 * min{1, (2/beta)^{1/beta}}
  double epsilon = 1.0;
  double T = 1.0;

  static double default_theta(double beta);
  double theta_value() const { return theta.value_or(default_theta(beta)); }
  /// C0 = (1/theta) (2/beta)^{1/beta}.
  double c0() const;
  bool integral_beta() const;

  /// Throws PreconditionError if beta <= 1, theta outside
  /// (0, min{1, (2/beta)^{1/beta}}), epsilon <= 0 or T <= 0. `exact`
  /// additionally requires an integer beta >= 2.
  void validate(bool exact = false) const;
};

/// Sign and natural log of |value|, with the value itself when it is
/// representable (0 after underflow).
struct SignedLog {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();
  double value = 0.0;
};

class DerivativePolynomialTable {
 public:
  explicit DerivativePolynomialTable(double beta);

  DerivativePolynomialTable(const DerivativePolynomialTable&) = delete;
  DerivativePolynomialTable& operator=(const DerivativePolynomialTable&) = delete;

  double beta() const { return beta_; }
  bool integral() const { return integral_; }

  /// Integer coefficients of R_k, index = power of s. Integral beta only.
  const std::vector<BigInt>& exact(int k) const;
  /// Nominal degree k(beta + 1) of R_k in s.
  double degree(int k) const;

  /// sum_i w_i R_{k_i}(1/t) e^{-t^{-beta}} at each t, with integer weights.
  /// Entries with t <= 0 are exactly zero.
  std::vector<SignedLog> evaluate(std::span<const std::pair<int, BigInt>> combination,
                                  std::span<const double> times) const;

 private:
  using Bivariate = std::map<std::pair<int, int>, HighFloat>;  // (i, j) -> coefficient of s^i (s^beta)^j

  void extend_to(int k) const;
  const Bivariate& bivariate(int k) const;

  double beta_;
  bool integral_;
  int ibeta_ = 0;
  mutable std::mutex mutex_;
  mutable std::deque<std::vector<BigInt>> exact_;
  mutable std::deque<Bivariate> bivariate_;
};

/// Process-wide table for beta, shared by every caller.
const DerivativePolynomialTable& derivative_table(double beta);

double g_eval(const FlatBumpParams& p, double t);
double g_derivative(const FlatBumpParams& p, int k, double t);
SignedLog g_derivative_log(const FlatBumpParams& p, int k, double t);

/// binom(x+k, 2k) for 0 <= k <= x, the k-th weight of v(x, .).
BigInt v_weight(std::int64_t x, int k);

double v_eval(const FlatBumpParams& p, std::int64_t x, double t);
/// d^j/dt^j v(x,t), term-wise from the finite sum.
SignedLog v_derivative_log(const FlatBumpParams& p, std::int64_t x, int j, double t);

/// dv/dt + 2 v(x) - v(x-1) - v(x+1) at (x,t), assembled in binary64 from
/// values that are individually exact up to final rounding.
double heat_residual_1d(const FlatBumpParams& p, std::int64_t x, double t);

/// Coefficients in s of the same residual with e^{-s^beta} factored out,
/// in exact integer arithmetic. Integral beta only; the result is zero.
std::vector<BigInt> residual_polynomial(const FlatBumpParams& p, std::int64_t x);

std::vector<double> default_time_grid();  // {0.05, 0.10, ..., 1}

struct DerivativeBoundWitness {
  double t = 0.0;
  double log_lhs = 0.0;  // ln |g^{(k)}(t)|
  double log_rhs = 0.0;  // ln k! (2k / (e beta theta^beta))^{k/beta}
};

struct DerivativeBoundReport {
  int k = 0;
  bool pass = true;
  double worst_margin = -std::numeric_limits<double>::infinity();  // max log_lhs - log_rhs
  std::vector<DerivativeBoundWitness> violations;
};

/// |g^{(k)}(t)| <= k! (2k/(e beta theta^beta))^{k/beta} on the grid. k >= 1.
DerivativeBoundReport derivative_bound_audit(const FlatBumpParams& p, int k, std::span<const double> times);

struct GrowthWitness {
  std::int64_t x = 0;
  double t = 0.0;
  double log_v = 0.0;      // ln |v(x,t)|
  double log_bound = 0.0;  // ln(4 sqrt(2 pi)) + (1+eps) x ln x
};

struct GrowthReport {
  bool pass = true;
  double r0 = 0.0;
  std::int64_t x_min = 0;
  std::int64_t x_max = 0;
  std::vector<double> times;
  std::size_t checked = 0;
  GrowthWitness tightest;  // largest log_v - log_bound
  std::optional<GrowthWitness> violation;
};

/// R0 = max{e, k0, e^{(2/eps)(3/2 - (1 + 1/beta) + ln C0)}} with k0 = 1.
double growth_threshold(const FlatBumpParams& p);

/// |v(x,t)| <= 4 sqrt(2 pi) e^{(1+eps) x ln x} for integer x in
/// [ceil(R0), x_max] and t on the grid. Throws AuditWindowEmpty if
/// x_max < ceil(R0), PreconditionError if beta <= max{1, 2/eps}.
GrowthReport growth_audit(const FlatBumpParams& p, std::int64_t x_max = 60,
                          std::span<const double> times = {});

struct FlatnessRow {
  int j = 0;
  std::vector<double> log_abs;  // ln |d^j v(x, 2^-m)|, m = 1..m_max
  bool decreasing = true;
};

struct NonAnalyticityReport {
  std::int64_t x = 0;
  int kmax = 0;
  double tol = 0.0;
  int probe_exponent = 30;  // probe at s = 2^-30
  std::vector<double> probe_log_abs;  // ln |d^j v(x, 2^-30)|, j = 0..kmax
  bool flat = false;                  // all probe values <= tol
  std::vector<double> sample_times;
  std::vector<double> sample_values;  // v(x, t) on the sample grid
  bool nonzero = false;               // u is not identically zero
  bool positive = false;              // u > 0 on every sample
  std::vector<FlatnessRow> flatness;
  std::string conclusion;
};

/// With u(x,t) = v(x, t + T): (i) d^j u(x,-T) = lim_{s -> 0+} d^j v(x,s) = 0
/// witnessed by |d^j v(x, 2^-30)| <= tol for j <= kmax; (ii) u(x,.) != 0 on
/// sampled t > -T. Flatness rows trace s = 2^-m for m = 1..m_max.
NonAnalyticityReport non_analyticity_witness(const FlatBumpParams& p, std::int64_t x, int kmax,
                                             double tol = 1e-8, int m_max = 40);

/// ln |g^{(j)}(2^-m)| for j = 0..jmax, m = 1..m_max (x = 0 case of the above).
std::vector<FlatnessRow> flatness_table(const FlatBumpParams& p, int jmax, int m_max = 40);

}  // namespace heat
