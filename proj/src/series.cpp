#include "heat/series.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace heat {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

struct TermPlan {
  int terms = 0;
  double tail = 0.0;
};

// Smallest K with truncation tail + rounding allowance <= tol, for terms
// bounded by scale * c^k / k!.
TermPlan plan_terms(double c, double scale, std::size_t neighbors, double tol, int cap) {
  if (c == 0.0 || scale == 0.0) return {0, 0.0};
  const double log_c = std::log(c);
  const double log_scale = std::log(scale);
  const double per_term_ops = static_cast<double>(neighbors) + 2.0;
  double rounding_sum = 0.0;  // sum_{k<=K} (k+1) c^k / k!
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= cap; ++k) {
    rounding_sum += (k + 1.0) * std::exp(k * log_c - std::lgamma(k + 1.0));
    const double q = c / (k + 2.0);
    if (q >= 0.5) continue;
    const double next = std::exp((k + 1.0) * log_c - std::lgamma(k + 2.0) + log_scale);
    const double tail = next / (1.0 - q) + kUnitRoundoff * per_term_ops * scale * rounding_sum;
    best = std::min(best, tail);
    if (tail <= tol) return {k, tail};
  }
  throw TruncationFailure("series tail bound not below tolerance within " + std::to_string(cap) + " terms",
                          best, cap);
}

template <class T>
double log_magnitude(const T& v) {
  if constexpr (std::is_same_v<T, double>) return std::log(std::fabs(v));
  else return log_abs(v);
}

std::unordered_map<std::int64_t, int> distances_within(const Graph& g, int rmax) {
  std::unordered_map<std::int64_t, int> out;
  for (const auto& e : *g.ball_entries(g.root(), rmax)) out.emplace(id_of(e.v), e.distance);
  return out;
}

double entropy(double x) { return x > 0 ? x * std::log(x) : 0.0; }

Vertex representative_at_level(const Graph& g, int level) {
  Vertex cur = g.root();
  std::vector<Neighbor> nbrs;
  for (int l = 0; l < level; ++l) {
    g.neighbors(cur, nbrs);
    bool moved = false;
    for (const auto& n : nbrs) {
      if (distance(g, g.root(), n.to) == l + 1) {
        cur = n.to;
        moved = true;
        break;
      }
    }
    if (!moved) throw DomainError("no vertex at distance " + std::to_string(level) + " from the root");
  }
  return cur;
}

}  // namespace

// ---------------------------------------------------------------------------
// SeriesSolution

SeriesSolution::SeriesSolution(std::shared_ptr<const Graph> g, LocalFunction<double> a, double tolerance,
                               std::optional<RadiusCertificate> certificate)
    : graph_(std::move(g)), tolerance_(tolerance), certificate_(std::move(certificate)) {
  if (!graph_) throw DomainError("SeriesSolution: null graph");
  if (!(tolerance > 0)) throw DomainError("SeriesSolution: tolerance must be positive");
  for (Vertex v : a.support()) {
    if (!graph_->contains(v)) throw DomainError("SeriesSolution: initial data outside the graph");
  }
  auto sup = graph_->degree_sup();
  if (!sup) throw DomainError("SeriesSolution: graph exposes no degree bound: " + graph_->describe());
  degree_bound_ = *sup;
  neighbor_bound_ = graph_->max_neighbors().value_or(0);
  data_bound_ = a.sup_abs();
  coefficients_ = std::make_unique<IteratedLaplacianTable<double>>(*graph_, std::move(a));
}

void SeriesSolution::check_radius(double t) const {
  if (!certificate_ || t == 0.0) return;
  if (certificate_->kind == RadiusKind::infinite) return;
  if (!(std::fabs(t) < certificate_->r)) {
    throw RadiusExceeded("|t| = " + std::to_string(std::fabs(t)) + " outside the certified radius " +
                         std::to_string(certificate_->r) + " (" + to_string(certificate_->kind) + ")");
  }
}

std::pair<int, double> SeriesSolution::truncation(double t) const {
  if (!std::isfinite(t)) throw DomainError("series evaluation at non-finite t");
  const auto p = plan_terms(2.0 * degree_bound_ * std::fabs(t), data_bound_, neighbor_bound_, tolerance_,
                            kTermCap);
  return {p.terms, p.tail};
}

namespace {

const LocalFunction<double>& coefficient(const SeriesSolution& s, int k, double best) {
  try {
    return s.coefficients().at(k);
  } catch (const std::length_error& e) {
    throw TruncationFailure(e.what(), best, k);
  }
}

}  // namespace

EvalResult series_eval(const SeriesSolution& s, Vertex x, double t) {
  if (!s.graph().contains(x)) throw DomainError("series_eval: unknown vertex");
  s.check_radius(t);
  const auto [terms, tail] = s.truncation(t);
  (void)coefficient(s, terms, tail);
  double value = 0.0;
  double weight = 1.0;  // t^k / k!
  for (int k = 0; k <= terms; ++k) {
    if (k > 0) weight *= t / k;
    value += s.coefficients().at(k)(x) * weight;
  }
  return {x, t, value, tail, terms};
}

EvalResult backward_solve(const SeriesSolution& s, Vertex x, double t) {
  if (!(t >= 0)) throw DomainError("backward_solve: t must be nonnegative");
  EvalResult r = series_eval(s, x, -t);
  r.t = t;
  return r;
}

EvalResult backward_solve(std::shared_ptr<const Graph> g, const LocalFunction<double>& a, Vertex x, double t,
                          double tol) {
  SeriesSolution s(std::move(g), a, tol);
  return backward_solve(s, x, t);
}

EvalResult series_time_derivative(const SeriesSolution& s, Vertex x, double t) {
  if (!s.graph().contains(x)) throw DomainError("series_time_derivative: unknown vertex");
  s.check_radius(t);
  const double m = s.degree_bound();
  const auto plan = plan_terms(2.0 * m * std::fabs(t), 2.0 * m * s.data_bound(), s.neighbor_bound(),
                               s.tolerance(), SeriesSolution::kTermCap);
  (void)coefficient(s, plan.terms + 1, plan.tail);
  double value = 0.0;
  double weight = 1.0;
  for (int k = 0; k <= plan.terms; ++k) {
    if (k > 0) weight *= t / k;
    value += s.coefficients().at(k + 1)(x) * weight;
  }
  return {x, t, value, plan.tail, plan.terms};
}

std::vector<EvalResult> evaluate_grid(const SeriesSolution& s, std::span<const Vertex> vertices,
                                      std::span<const double> times, Execution exec) {
  int deepest = 0;
  for (double t : times) {
    s.check_radius(t);
    deepest = std::max(deepest, s.truncation(t).first);
  }
  (void)coefficient(s, deepest, s.tolerance());

  const auto nt = times.size();
  const auto total = static_cast<std::ptrdiff_t>(vertices.size() * nt);
  std::vector<EvalResult> out(static_cast<std::size_t>(total));
  auto eval_one = [&](std::ptrdiff_t i) {
    const auto idx = static_cast<std::size_t>(i);
    out[idx] = series_eval(s, vertices[idx / nt], times[idx % nt]);
  };
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < total; ++i) eval_one(i);
    return out;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    try {
      eval_one(i);
    } catch (...) {
#pragma omp critical(heat_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

ResidualReport residual_check(const SeriesSolution& s, Vertex x, double t, double h) {
  if (!(h > 0)) throw DomainError("residual_check: h must be positive");
  s.check_radius(t + h);
  s.check_radius(t - h);
  const auto& g = s.graph();
  const EvalResult dudt = series_time_derivative(s, x, t);
  const EvalResult ux = series_eval(s, x, t);
  std::vector<Neighbor> nbrs;
  g.neighbors(x, nbrs);
  const double mu = g.measure(x);
  double lap = 0.0;
  double worst_tail = ux.tail_bound;
  double deg = 0.0;
  for (const auto& n : nbrs) {
    const EvalResult uy = series_eval(s, n.to, t);
    lap += n.weight / mu * (uy.value - ux.value);
    worst_tail = std::max(worst_tail, uy.tail_bound);
    deg += n.weight / mu;
  }
  return {std::fabs(dudt.value - lap), dudt.tail_bound + 2.0 * deg * worst_tail};
}

// ---------------------------------------------------------------------------
// Audits

const char* to_string(BackwardVerdict v) {
  switch (v) {
    case BackwardVerdict::certified: return "certified";
    case BackwardVerdict::refuted_up_to_k: return "refuted-up-to-K";
    case BackwardVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <class T>
BackwardSolvabilityReport check_backward_solvability(const Graph& g, const LocalFunction<T>& a, double degree_bound,
                                                     int kmax, int rmax) {
  if (!(degree_bound > 0)) throw DomainError("check_backward_solvability: D must be positive");
  if (kmax < 0 || rmax < 0) throw DomainError("check_backward_solvability: Kmax and Rmax must be nonnegative");

  IteratedLaplacianTable<T> table(g, a);
  (void)table.at(kmax);

  std::vector<Vertex> region = ball(g, g.root(), rmax);
  const auto& last = table.at(kmax);
  region.insert(region.end(), last.support().begin(), last.support().end());
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  for (Vertex v : region) {
    const double deg = degree(g, v);
    if (deg > degree_bound) {
      throw PreconditionError("degree bound violated at vertex " + g.vertex_label(v) + ": Deg = " +
                              std::to_string(deg) + " > D = " + std::to_string(degree_bound));
    }
  }

  struct Sample {
    int k;
    Vertex x;
    int d;
    double log_value;  // ln|a_k(x)|
    double scaled;     // ln|a_k(x)| - k ln(2D)
    double entropy;    // (k+d) ln(k+d)
  };
  std::vector<Sample> samples;
  const double log_2d = std::log(2.0 * degree_bound);
  for (int k = 0; k <= kmax; ++k) {
    const auto& ak = table.at(k);
    for (std::size_t i = 0; i < ak.size(); ++i) {
      if (ak.values()[i] == T(0)) continue;
      const Vertex x = ak.support()[i];
      const int d = static_cast<int>(distance(g, g.root(), x));
      const double lv = log_magnitude(ak.values()[i]);
      samples.push_back({k, x, d, lv, lv - k * log_2d, entropy(static_cast<double>(k + d))});
    }
  }

  BackwardSolvabilityReport report;
  report.degree_bound = degree_bound;
  report.kmax = kmax;
  report.rmax = rmax;
  report.audited = samples.size();
  report.arithmetic = std::is_same_v<T, double> ? "binary64" : "exact-rational";

  constexpr int kMinPow = -30;
  constexpr int kMaxPow = 60;
  auto make_witness = [&](const Sample& s, double a3, double a4) {
    CoefficientWitness w;
    w.k = s.k;
    w.x = s.x;
    w.distance = s.d;
    w.log_value = s.log_value;
    w.value = std::exp(s.log_value);
    w.log_bound = std::log(a3) + s.k * log_2d + a4 * s.entropy;
    w.bound = std::exp(w.log_bound);
    return w;
  };
  auto witnesses_for = [&](double a3, double a4, bool violations_only) {
    std::vector<const Sample*> order;
    for (const auto& s : samples) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(), [&](const Sample* l, const Sample* r) {
      return l->scaled - a4 * l->entropy > r->scaled - a4 * r->entropy;
    });
    std::vector<CoefficientWitness> out;
    for (const Sample* s : order) {
      if (out.size() == 5) break;
      auto w = make_witness(*s, a3, a4);
      if (violations_only && w.log_value <= w.log_bound) break;
      out.push_back(w);
    }
    return out;
  };

  const auto grid = exponent_grid();
  for (const auto& a4r : grid) {
    if (a4r >= 1) break;
    const double a4 = to_double(a4r);
    double need = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) need = std::max(need, s.scaled - a4 * s.entropy);
    int m = kMinPow;
    if (std::isfinite(need)) m = std::max(kMinPow, static_cast<int>(std::ceil(need / std::numbers::ln2)));
    if (m > kMaxPow) continue;
    report.a3 = std::ldexp(1.0, m);
    report.a4 = a4;
    report.verdict = a4r < Rational(19, 20) ? BackwardVerdict::certified : BackwardVerdict::inconclusive;
    report.witnesses = witnesses_for(report.a3, a4, false);
    return report;
  }
  report.verdict = BackwardVerdict::refuted_up_to_k;
  report.a3 = std::ldexp(1.0, kMaxPow);
  report.a4 = 0.95;
  report.witnesses = witnesses_for(report.a3, report.a4, true);
  return report;
}

template BackwardSolvabilityReport check_backward_solvability<double>(const Graph&, const LocalFunction<double>&,
                                                                      double, int, int);
template BackwardSolvabilityReport check_backward_solvability<Rational>(const Graph&,
                                                                        const LocalFunction<Rational>&, double,
                                                                        int, int);

template <class T>
std::optional<std::vector<T>> radial_profile(const Graph& g, const LocalFunction<T>& a) {
  std::int64_t reach = 0;
  for (Vertex v : a.support()) reach = std::max(reach, distance(g, g.root(), v));
  std::vector<std::optional<T>> levels(static_cast<std::size_t>(reach) + 1);
  for (const auto& e : *g.ball_entries(g.root(), static_cast<int>(reach))) {
    auto& slot = levels[static_cast<std::size_t>(e.distance)];
    const T v = a(e.v);
    if (!slot) slot = v;
    else if (*slot != v) return std::nullopt;
  }
  std::vector<T> out;
  for (auto& l : levels) out.push_back(l.value_or(T(0)));
  while (!out.empty() && out.back() == T(0)) out.pop_back();
  return out;
}

template std::optional<std::vector<double>> radial_profile<double>(const Graph&, const LocalFunction<double>&);
template std::optional<std::vector<Rational>> radial_profile<Rational>(const Graph&,
                                                                       const LocalFunction<Rational>&);

namespace {

template <class T>
struct CoefficientChecker {
  const GrowthProfile& gp;
  const DegreeGrowth& dg;
  CoefficientAuditReport& report;
  double log_a1 = std::log(gp.a1);
  double log_2c = std::log(2.0 * dg.c);
  double exponent = to_double(gp.a2 + dg.a3);
  bool exact_power = std::is_same_v<T, Rational> && gp.a2 + dg.a3 == 0;
  Rational a1_exact = from_double<Rational>(gp.a1);
  Rational two_c_exact = from_double<Rational>(2.0 * dg.c);
  double tightest_gap = -std::numeric_limits<double>::infinity();

  // Returns false on the first violation.
  bool check(int k, Vertex x, int d, const T& value) {
    ++report.checked;
    if (value == T(0)) return true;
    CoefficientWitness w;
    w.k = k;
    w.x = x;
    w.distance = d;
    w.log_value = log_magnitude(value);
    w.value = std::exp(w.log_value);
    w.log_bound = log_a1 + k * log_2c + exponent * entropy(static_cast<double>(k + d));
    w.bound = std::exp(w.log_bound);
    bool ok;
    if constexpr (std::is_same_v<T, Rational>) {
      if (exact_power) {
        Rational bound = a1_exact;
        for (int i = 0; i < k; ++i) bound *= two_c_exact;
        ok = abs_value(value) <= bound;
      } else {
        ok = w.log_value <= w.log_bound;
      }
    } else {
      ok = exponent == 0.0 ? std::fabs(value) <= gp.a1 * std::pow(2.0 * dg.c, k) : w.log_value <= w.log_bound;
    }
    if (w.log_value - w.log_bound > tightest_gap) {
      tightest_gap = w.log_value - w.log_bound;
      report.tightest = w;
    }
    if (!ok) {
      report.violation = w;
      return false;
    }
    return true;
  }
};

template <class T>
bool initial_data_within_profile(const Graph& g, const LocalFunction<T>& a, const GrowthProfile& gp, int rmax) {
  // Lazy families have closed-form distances; only finite graphs need the ball.
  const bool closed = g.closed_form_distance(g.root(), g.root()).has_value();
  const auto dist = closed ? std::unordered_map<std::int64_t, int>{} : distances_within(g, rmax);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vertex v = a.support()[i];
    auto it = dist.find(id_of(v));
    const auto d = it != dist.end() ? it->second : distance(g, g.root(), v);
    if (to_double(abs_value(a.values()[i])) > growth_envelope(gp, d)) return false;
  }
  return true;
}

template <class T>
CoefficientAuditReport audit_generic(const Graph& g, const IteratedLaplacianTable<T>& table, const GrowthProfile& gp,
                                     const DegreeGrowth& dg, int kmax, int rmax) {
  CoefficientAuditReport report;
  report.method = "generic";
  report.arithmetic = std::is_same_v<T, double> ? "binary64" : "exact-rational";
  report.kmax = kmax;
  report.rmax = rmax;
  report.precondition_ok = initial_data_within_profile(g, table.base(), gp, rmax);
  if (!report.precondition_ok) return report;

  const auto dist = distances_within(g, rmax);
  CoefficientChecker<T> checker{gp, dg, report};
  for (int k = 0; k <= kmax; ++k) {
    const auto& ak = table.at(k);
    for (std::size_t i = 0; i < ak.size(); ++i) {
      auto it = dist.find(id_of(ak.support()[i]));
      if (it == dist.end()) continue;
      if (!checker.check(k, ak.support()[i], it->second, ak.values()[i])) return report;
    }
  }
  report.pass = true;
  return report;
}

}  // namespace

CoefficientAuditReport coefficient_bound_audit(const SeriesSolution& s, const GrowthProfile& gp,
                                               const DegreeGrowth& dg, int kmax, int rmax) {
  if (kmax < 0 || rmax < 0) throw DomainError("coefficient_bound_audit: Kmax and Rmax must be nonnegative");
  return audit_generic(s.graph(), s.coefficients(), gp, dg, kmax, rmax);
}

CoefficientAuditReport coefficient_bound_audit(const Graph& g, const LocalFunction<Rational>& a,
                                               const GrowthProfile& gp, const DegreeGrowth& dg, int kmax,
                                               int rmax) {
  if (kmax < 0 || rmax < 0) throw DomainError("coefficient_bound_audit: Kmax and Rmax must be nonnegative");
  auto profile = radial_profile(g, a);
  std::optional<std::vector<LevelRates>> rates;
  if (profile) {
    const int levels = static_cast<int>(profile->size()) + kmax + 1;
    if (g.radial_rates(0) || g.is_finite()) rates = radial_structure(g, levels);
  }
  if (!profile || !rates) {
    IteratedLaplacianTable<Rational> table(g, a);
    return audit_generic(g, table, gp, dg, kmax, rmax);
  }

  CoefficientAuditReport report;
  report.method = "radial-quotient";
  report.arithmetic = "exact-rational";
  report.kmax = kmax;
  report.rmax = rmax;
  report.precondition_ok = initial_data_within_profile(g, a, gp, rmax);
  if (!report.precondition_ok) return report;

  CoefficientChecker<Rational> checker{gp, dg, report};
  std::vector<Vertex> representatives;
  auto rep = [&](int level) {
    while (static_cast<int>(representatives.size()) <= level) {
      representatives.push_back(representative_at_level(g, static_cast<int>(representatives.size())));
    }
    return representatives[static_cast<std::size_t>(level)];
  };
  std::vector<Rational> levels = *profile;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) levels = apply_laplacian_radial<Rational>(*rates, levels);
    const int top = std::min<int>(rmax, static_cast<int>(levels.size()) - 1);
    for (int l = 0; l <= top; ++l) {
      if (levels[static_cast<std::size_t>(l)] == 0) continue;
      if (!checker.check(k, rep(l), l, levels[static_cast<std::size_t>(l)])) return report;
    }
  }
  report.pass = true;
  return report;
}

}  // namespace heat
