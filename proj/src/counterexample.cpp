#include "heat/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <unordered_map>

#include "heat/errors.hpp"
#include "heat/parallel.hpp"

namespace heat {

namespace {

using Combination = std::vector<std::pair<int, BigInt>>;

// Largest log magnitude turned back into a plain double value.
constexpr double kUnderflowLog = -746.0;

SignedLog finish(int sign, const HighFloat& log_abs) {
  SignedLog out;
  out.sign = sign;
  if (sign == 0) return out;
  out.log_abs = log_abs.convert_to<double>();
  if (log_abs > kUnderflowLog && log_abs < 710) out.value = sign * exp(log_abs).convert_to<double>();
  return out;
}

// d^j/dt^j v(x, .) as a combination of g-derivatives, with x folded to x >= 0.
Combination v_combination(std::int64_t x, int j) {
  if (x < 0) x = -x - 1;
  Combination c;
  for (std::int64_t k = 0; k <= x; ++k) c.emplace_back(static_cast<int>(k) + j, v_weight(x, static_cast<int>(k)));
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

double FlatBumpParams::default_theta(double beta) {
  return 0.5 * std::min(1.0, std::pow(2.0 / beta, 1.0 / beta));
}

double FlatBumpParams::c0() const { return std::pow(2.0 / beta, 1.0 / beta) / theta_value(); }

bool FlatBumpParams::integral_beta() const { return beta == std::floor(beta) && beta >= 2 && beta <= 64; }

void FlatBumpParams::validate(bool exact) const {
  if (!(beta > 1) || !std::isfinite(beta)) throw PreconditionError("beta must be a finite real > 1");
  if (exact && !integral_beta()) throw PreconditionError("exact mode needs an integer beta in [2, 64]");
  const double upper = std::min(1.0, std::pow(2.0 / beta, 1.0 / beta));
  const double th = theta_value();
  if (!(th > 0) || !(th < upper)) {
    throw PreconditionError("theta must lie in (0, " + std::to_string(upper) + ")");
  }
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  if (!(T > 0)) throw PreconditionError("T must be positive");
}

// ---------------------------------------------------------------------------
// Derivative polynomials

DerivativePolynomialTable::DerivativePolynomialTable(double beta) : beta_(beta) {
  if (!(beta > 1) || !std::isfinite(beta)) throw DomainError("derivative table: beta must be > 1");
  integral_ = beta == std::floor(beta) && beta <= 64;
  if (integral_) {
    ibeta_ = static_cast<int>(beta);
    exact_.push_back({BigInt(1)});
  } else {
    bivariate_.push_back({{{0, 0}, HighFloat(1)}});
  }
}

double DerivativePolynomialTable::degree(int k) const { return k * (beta_ + 1.0); }

void DerivativePolynomialTable::extend_to(int k) const {
  // Caller holds mutex_.
  if (integral_) {
    while (static_cast<int>(exact_.size()) <= k) {
      const auto& r = exact_.back();
      std::vector<BigInt> next(r.size() + static_cast<std::size_t>(ibeta_) + 1);
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) continue;
        next[i + static_cast<std::size_t>(ibeta_) + 1] += ibeta_ * r[i];
        // -s^2 d/ds (c s^i) = -i c s^{i+1}
        if (i > 0) next[i + 1] -= static_cast<long>(i) * r[i];
      }
      while (next.size() > 1 && next.back() == 0) next.pop_back();
      exact_.push_back(std::move(next));
    }
    return;
  }
  const HighFloat b(beta_);
  while (static_cast<int>(bivariate_.size()) <= k) {
    Bivariate next;
    for (const auto& [ij, c] : bivariate_.back()) {
      const auto [i, j] = ij;
      // d/dt of e^{-sigma} contributes beta s sigma; d/dt s^i sigma^j = -(i + j beta) s^{i+1} sigma^j.
      next[{i + 1, j + 1}] += b * c;
      next[{i + 1, j}] -= (HighFloat(i) + HighFloat(j) * b) * c;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    bivariate_.push_back(std::move(next));
  }
}

const std::vector<BigInt>& DerivativePolynomialTable::exact(int k) const {
  if (!integral_) throw DomainError("exact derivative polynomials need an integer beta");
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  std::lock_guard lock(mutex_);
  extend_to(k);
  return exact_[static_cast<std::size_t>(k)];
}

const DerivativePolynomialTable::Bivariate& DerivativePolynomialTable::bivariate(int k) const {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  std::lock_guard lock(mutex_);
  extend_to(k);
  return bivariate_[static_cast<std::size_t>(k)];
}

std::vector<SignedLog> DerivativePolynomialTable::evaluate(std::span<const std::pair<int, BigInt>> combination,
                                                           std::span<const double> times) const {
  std::vector<SignedLog> out(times.size());
  if (integral_) {
    std::vector<BigInt> poly;
    for (const auto& [k, w] : combination) {
      if (w == 0) continue;
      const auto& r = exact(k);
      if (poly.size() < r.size()) poly.resize(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) poly[i] += w * r[i];
    }
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (poly.empty()) return out;
    const std::size_t n = poly.size() - 1;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const double t = times[ti];
      if (!(t > 0)) continue;
      // s = 1/t = a/b exactly; N = b^n P(a/b).
      const Rational rt(t);
      const BigInt a = denominator(rt);
      const BigInt b = numerator(rt);
      std::vector<BigInt> bpow(n + 1);
      bpow[0] = 1;
      for (std::size_t i = 1; i <= n; ++i) bpow[i] = bpow[i - 1] * b;
      BigInt acc = poly[n];
      for (std::size_t i = n; i-- > 0;) acc = acc * a + poly[i] * bpow[n - i];
      if (acc == 0) continue;
      const HighFloat s = HighFloat(a) / HighFloat(b);
      const HighFloat sigma = pow(s, ibeta_);
      const HighFloat log_abs = log(HighFloat(boost::multiprecision::abs(acc))) - HighFloat(n) * log(HighFloat(b)) - sigma;
      out[ti] = finish(acc < 0 ? -1 : 1, log_abs);
    }
    return out;
  }

  Bivariate poly;
  for (const auto& [k, w] : combination) {
    if (w == 0) continue;
    const HighFloat hw(w);
    for (const auto& [ij, c] : bivariate(k)) poly[ij] += hw * c;
  }
  const HighFloat b(beta_);
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    if (!(t > 0)) continue;
    const HighFloat s = HighFloat(1) / HighFloat(t);
    const HighFloat sigma = pow(s, b);
    HighFloat acc = 0;
    for (const auto& [ij, c] : poly) acc += c * pow(s, ij.first) * pow(sigma, ij.second);
    if (acc == 0) continue;
    out[ti] = finish(acc < 0 ? -1 : 1, log(abs(acc)) - sigma);
  }
  return out;
}

const DerivativePolynomialTable& derivative_table(double beta) {
  static std::mutex mutex;
  static std::unordered_map<double, std::unique_ptr<DerivativePolynomialTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[beta];
  if (!slot) slot = std::make_unique<DerivativePolynomialTable>(beta);
  return *slot;
}

// ---------------------------------------------------------------------------
// g and v

SignedLog g_derivative_log(const FlatBumpParams& p, int k, double t) {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  const Combination c{{k, BigInt(1)}};
  return derivative_table(p.beta).evaluate(c, std::span<const double>(&t, 1)).front();
}

double g_derivative(const FlatBumpParams& p, int k, double t) { return g_derivative_log(p, k, t).value; }

double g_eval(const FlatBumpParams& p, double t) { return g_derivative(p, 0, t); }

BigInt v_weight(std::int64_t x, int k) {
  if (x < 0 || k < 0) throw DomainError("v_weight: x and k must be nonnegative");
  if (k > x) return 0;
  // binom(n, r) with n = x + k, r = 2k
  const std::int64_t n = x + k;
  const std::int64_t r = 2 * static_cast<std::int64_t>(k);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

SignedLog v_derivative_log(const FlatBumpParams& p, std::int64_t x, int j, double t) {
  if (j < 0) throw DomainError("derivative order must be nonnegative");
  const auto c = v_combination(x, j);
  return derivative_table(p.beta).evaluate(c, std::span<const double>(&t, 1)).front();
}

double v_eval(const FlatBumpParams& p, std::int64_t x, double t) { return v_derivative_log(p, x, 0, t).value; }

double heat_residual_1d(const FlatBumpParams& p, std::int64_t x, double t) {
  if (!(t > 0)) throw DomainError("heat_residual_1d: t must be positive");
  const double dv = v_derivative_log(p, x, 1, t).value;
  return dv + 2.0 * v_eval(p, x, t) - v_eval(p, x - 1, t) - v_eval(p, x + 1, t);
}

std::vector<BigInt> residual_polynomial(const FlatBumpParams& p, std::int64_t x) {
  const auto& table = derivative_table(p.beta);
  if (!table.integral()) throw PreconditionError("residual_polynomial needs an integer beta");
  std::vector<BigInt> out;
  auto add = [&](const Combination& c, long scale) {
    for (const auto& [k, w] : c) {
      const auto& r = table.exact(k);
      if (out.size() < r.size()) out.resize(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) out[i] += scale * w * r[i];
    }
  };
  add(v_combination(x, 1), 1);
  add(v_combination(x, 0), 2);
  add(v_combination(x - 1, 0), -1);
  add(v_combination(x + 1, 0), -1);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<double> default_time_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 20; ++i) out.push_back(i / 20.0);
  return out;
}

// ---------------------------------------------------------------------------
// Audits

DerivativeBoundReport derivative_bound_audit(const FlatBumpParams& p, int k, std::span<const double> times) {
  p.validate();
  if (k < 1) throw DomainError("derivative_bound_audit: k must be positive");
  const double beta = p.beta;
  const double theta = p.theta_value();
  const double log_rhs = std::lgamma(k + 1.0) +
                         (k / beta) * std::log(2.0 * k / (std::numbers::e * beta * std::pow(theta, beta)));
  const Combination c{{k, BigInt(1)}};
  const auto values = derivative_table(beta).evaluate(c, times);
  DerivativeBoundReport report;
  report.k = k;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (values[i].sign == 0) continue;
    const double margin = values[i].log_abs - log_rhs;
    report.worst_margin = std::max(report.worst_margin, margin);
    if (margin > 0) {
      report.pass = false;
      report.violations.push_back({times[i], values[i].log_abs, log_rhs});
    }
  }
  return report;
}

double growth_threshold(const FlatBumpParams& p) {
  constexpr double k0 = 1.0;
  const double exponent = (2.0 / p.epsilon) * (1.5 - (1.0 + 1.0 / p.beta) + std::log(p.c0()));
  return std::max({std::numbers::e, k0, std::exp(exponent)});
}

GrowthReport growth_audit(const FlatBumpParams& p, std::int64_t x_max, std::span<const double> times) {
  p.validate();
  if (!(p.beta > std::max(1.0, 2.0 / p.epsilon))) {
    throw PreconditionError("growth audit needs beta > max{1, 2/epsilon}");
  }
  GrowthReport report;
  report.r0 = growth_threshold(p);
  report.x_min = static_cast<std::int64_t>(std::ceil(report.r0));
  report.x_max = x_max;
  if (x_max < report.x_min) {
    throw AuditWindowEmpty("growth audit window is empty: Xmax = " + std::to_string(x_max) + " < ceil(R0) = " +
                               std::to_string(report.x_min),
                           report.r0);
  }
  report.times = times.empty() ? default_time_grid() : std::vector<double>(times.begin(), times.end());

  const auto& table = derivative_table(p.beta);
  if (table.integral()) (void)table.exact(static_cast<int>(x_max));
  const auto count = static_cast<std::ptrdiff_t>(x_max - report.x_min + 1);
  std::vector<std::vector<SignedLog>> rows(static_cast<std::size_t>(count));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = table.evaluate(v_combination(report.x_min + i, 0), report.times);
    } catch (...) {
#pragma omp critical(heat_growth_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const double log_const = std::log(4.0 * std::sqrt(2.0 * std::numbers::pi));
  double tightest = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::int64_t x = report.x_min + i;
    const double xd = static_cast<double>(x);
    const double log_bound = log_const + (1.0 + p.epsilon) * xd * std::log(xd);
    for (std::size_t ti = 0; ti < report.times.size(); ++ti) {
      const auto& v = rows[static_cast<std::size_t>(i)][ti];
      ++report.checked;
      const GrowthWitness w{x, report.times[ti], v.log_abs, log_bound};
      if (v.log_abs - log_bound > tightest) {
        tightest = v.log_abs - log_bound;
        report.tightest = w;
      }
      if (v.log_abs > log_bound && !report.violation) {
        report.pass = false;
        report.violation = w;
      }
    }
  }
  return report;
}

namespace {

std::vector<FlatnessRow> flatness_rows(const FlatBumpParams& p, std::int64_t x, int jmax, int m_max) {
  std::vector<double> probes;
  for (int m = 1; m <= m_max; ++m) probes.push_back(std::ldexp(1.0, -m));
  const auto& table = derivative_table(p.beta);
  std::vector<FlatnessRow> rows;
  for (int j = 0; j <= jmax; ++j) {
    FlatnessRow row;
    row.j = j;
    for (const auto& v : table.evaluate(v_combination(x, j), probes)) row.log_abs.push_back(v.log_abs);
    for (std::size_t m = 1; m < row.log_abs.size(); ++m) {
      if (!(row.log_abs[m] < row.log_abs[m - 1])) row.decreasing = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

NonAnalyticityReport non_analyticity_witness(const FlatBumpParams& p, std::int64_t x, int kmax, double tol,
                                             int m_max) {
  p.validate();
  if (kmax < 1) throw DomainError("non_analyticity_witness: Kmax must be at least 1");
  if (!(tol > 0)) throw DomainError("non_analyticity_witness: tol must be positive");
  if (m_max < 1) throw DomainError("non_analyticity_witness: m_max must be positive");
  NonAnalyticityReport report;
  report.x = x;
  report.kmax = kmax;
  report.tol = tol;

  const auto& table = derivative_table(p.beta);
  const double probe = std::ldexp(1.0, -report.probe_exponent);
  const double log_tol = std::log(tol);
  report.flat = true;
  for (int j = 0; j <= kmax; ++j) {
    const auto v = table.evaluate(v_combination(x, j), std::span<const double>(&probe, 1)).front();
    report.probe_log_abs.push_back(v.log_abs);
    if (v.log_abs > log_tol) report.flat = false;
  }

  report.sample_times = default_time_grid();
  const auto samples = table.evaluate(v_combination(x, 0), report.sample_times);
  report.positive = true;
  for (const auto& v : samples) {
    report.sample_values.push_back(v.value);
    if (v.sign != 0) report.nonzero = true;
    if (v.sign <= 0) report.positive = false;
  }
  report.flatness = flatness_rows(p, x, kmax, m_max);

  if (report.flat && report.nonzero) {
    report.conclusion = "every time derivative of u(" + std::to_string(x) + ",.) up to order " +
                        std::to_string(kmax) + " vanishes at t0 = -T while u is not identically zero; "
                        "the Taylor series at -T is 0, so u is not time-analytic there";
  } else if (!report.flat) {
    report.conclusion = "witness incomplete: a derivative exceeds the tolerance at the probe";
  } else {
    report.conclusion = "witness incomplete: u vanished on every sample";
  }
  return report;
}

std::vector<FlatnessRow> flatness_table(const FlatBumpParams& p, int jmax, int m_max) {
  p.validate();
  if (jmax < 0 || m_max < 1) throw DomainError("flatness_table: jmax >= 0 and m_max >= 1 required");
  return flatness_rows(p, 0, jmax, m_max);
}

}  // namespace heat
