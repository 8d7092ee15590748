#include "heat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "heat/bounds.hpp"
#include "heat/errors.hpp"
#include "heat/fixtures.hpp"
#include "heat/laplacian.hpp"
#include "heat/oracle.hpp"
#include "heat/series.hpp"

namespace heat::cli {

namespace {

constexpr std::size_t kMaxGridVertices = 20000;

const char* arithmetic_name(bool exact) { return to_string(exact ? Arithmetic::exact : Arithmetic::floating); }

Json number_list(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["graph"] = c.graph_file ? Json(*c.graph_file) : Json(nullptr);
  j["family"] = c.family ? Json(*c.family) : Json(nullptr);
  j["data"] = c.data;
  j["vertices"] = c.vertices;
  j["t"] = number_list(c.times);
  j["tol"] = number(c.tol);
  j["kmax"] = c.kmax;
  j["rmax"] = c.rmax;
  j["arithmetic"] = arithmetic_name(c.exact);
  if (c.command == "radius") {
    j["a1"] = c.a1 ? number(*c.a1) : Json(nullptr);
    j["a2"] = c.a2 ? Json(*c.a2) : Json(nullptr);
    j["a3"] = c.a3 ? Json(*c.a3) : Json(nullptr);
    j["c"] = c.c ? number(*c.c) : Json(nullptr);
    j["delta"] = number(c.delta);
    j["R"] = number(c.radius);
  }
  if (c.command == "backward") j["degree_bound"] = c.degree_bound ? number(*c.degree_bound) : Json(nullptr);
  if (c.command == "counterexample") {
    j["beta"] = number(c.bump.beta);
    j["theta"] = number(c.bump.theta_value());
    j["epsilon"] = number(c.bump.epsilon);
    j["T"] = number(c.bump.T);
    j["xmax"] = c.xmax;
  }
  j["format"] = c.format;
  return j;
}

std::shared_ptr<const Graph> resolve_graph(const RunConfig& c) {
  if (c.graph_file && c.family) throw UsageError("--graph and --family are mutually exclusive");
  if (c.graph_file) return load_graph_file(*c.graph_file);
  return make_graph(parse_family(c.family.value_or("z")));
}

template <class T>
LocalFunction<T> parse_data(const Graph& g, const std::vector<std::string>& entries) {
  if (entries.empty()) return LocalFunction<T>::delta(g.root());
  std::vector<std::pair<Vertex, T>> pairs;
  for (const auto& entry : entries) {
    const auto pos = entry.rfind('=');
    if (pos == std::string::npos) throw UsageError("--data expects label=value, got '" + entry + "'");
    const Vertex v = g.parse_vertex(entry.substr(0, pos));
    if (!g.contains(v)) throw UsageError("--data names a vertex outside the graph: " + entry);
    const Rational value = parse_rational(entry.substr(pos + 1));
    if constexpr (std::is_same_v<T, double>) pairs.emplace_back(v, to_double(value));
    else pairs.emplace_back(v, value);
  }
  return LocalFunction<T>::from_pairs(std::move(pairs));
}

std::vector<Vertex> parse_vertices(const Graph& g, const RunConfig& c) {
  std::vector<Vertex> out;
  if (c.vertices.empty()) {
    out = ball(g, g.root(), c.rmax);
    if (out.size() > kMaxGridVertices) throw UsageError("B_rmax(root) is too large for a grid; pass --vertex");
    return out;
  }
  for (const auto& label : c.vertices) {
    const Vertex v = g.parse_vertex(label);
    if (!g.contains(v)) throw UsageError("--vertex names a vertex outside the graph: " + label);
    out.push_back(v);
  }
  return out;
}

Json value_json(double x) { return number(x); }
Json value_json(const Rational& x) { return to_string(x); }
std::string value_text(double x) { return format_double(x); }
std::string value_text(const Rational& x) { return to_string(x); }

Json witness_json(const Graph& g, const CoefficientWitness& w) {
  return {{"k", w.k},
          {"x", g.vertex_label(w.x)},
          {"distance", w.distance},
          {"value", number(w.value)},
          {"log_value", number(w.log_value)},
          {"bound", number(w.bound)},
          {"log_bound", number(w.log_bound)}};
}

Json certificate_json(const RadiusCertificate& cert) {
  return {{"kind", to_string(cert.kind)}, {"r", number(cert.r)}, {"zeta", to_string(cert.zeta)}};
}

// ---------------------------------------------------------------------------
// laplacian

template <class T>
CommandOutput laplacian_command(const RunConfig& c, const Graph& g) {
  const auto a = parse_data<T>(g, c.data);
  IteratedLaplacianTable<T> table(g, a);
  CommandOutput out;
  out.table.push_back({"k", "x", "value"});
  const auto sup = g.degree_sup();
  Json iterates = Json::array();
  for (int k = 0; k <= c.kmax; ++k) {
    const auto& ak = table.at(k);
    Json entry;
    entry["k"] = k;
    entry["support_size"] = ak.size();
    entry["sup_abs"] = value_json(ak.sup_abs());
    if (sup) entry["chained_bound"] = number(std::pow(2.0 * *sup, k) * to_double(a.sup_abs()));
    Json values = Json::array();
    for (std::size_t i = 0; i < ak.size(); ++i) {
      const auto label = g.vertex_label(ak.support()[i]);
      values.push_back({{"x", label}, {"value", value_json(ak.values()[i])}});
      out.table.push_back({std::to_string(k), label, value_text(ak.values()[i])});
    }
    entry["values"] = std::move(values);
    iterates.push_back(std::move(entry));
  }
  out.report["graph"] = g.describe();
  out.report["degree_sup"] = sup ? number(*sup) : Json(nullptr);
  out.report["iterates"] = std::move(iterates);
  return out;
}

// ---------------------------------------------------------------------------
// solve / backward

CommandOutput solve_command(const RunConfig& c, std::shared_ptr<const Graph> g) {
  if (c.exact) throw UsageError("solve evaluates in binary64 only; drop --exact");
  auto times = c.times.empty() ? std::vector<double>{-0.1, -0.05, -0.01} : c.times;
  SeriesSolution s(g, parse_data<double>(*g, c.data), c.tol);
  const auto vs = parse_vertices(*g, c);
  const auto results = evaluate_grid(s, vs, times);
  CommandOutput out;
  out.table.push_back({"vertex", "t", "value", "tail_bound", "K_used"});
  Json rows = Json::array();
  for (const auto& r : results) {
    const auto label = g->vertex_label(r.vertex);
    rows.push_back({{"vertex", label},
                    {"t", number(r.t)},
                    {"value", number(r.value)},
                    {"tail_bound", number(r.tail_bound)},
                    {"K_used", r.k_used}});
    out.table.push_back(
        {label, format_double(r.t), format_double(r.value), format_double(r.tail_bound), std::to_string(r.k_used)});
  }
  out.report["graph"] = g->describe();
  out.report["degree_bound"] = number(s.degree_bound());
  out.report["data_bound"] = number(s.data_bound());
  out.report["results"] = std::move(rows);
  return out;
}

Json solvability_json(const Graph& g, const BackwardSolvabilityReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(witness_json(g, x));
  return {{"verdict", to_string(r.verdict)},
          {"a3", number(r.a3)},
          {"a4", number(r.a4)},
          {"degree_bound", number(r.degree_bound)},
          {"kmax", r.kmax},
          {"rmax", r.rmax},
          {"audited", r.audited},
          {"arithmetic", r.arithmetic},
          {"grid", r.grid},
          {"witnesses", std::move(w)},
          {"caveat", r.caveat}};
}

CommandOutput backward_command(const RunConfig& c, std::shared_ptr<const Graph> g) {
  auto times = c.times.empty() ? std::vector<double>{0.01, 0.05, 0.1} : c.times;
  for (double t : times) {
    if (!(t >= 0)) throw UsageError("backward times must be nonnegative");
  }
  const double d = c.degree_bound ? *c.degree_bound : g->degree_sup().value_or(0.0);
  if (!(d > 0)) throw UsageError("backward needs --degree-bound on graphs without a global degree bound");

  CommandOutput out;
  out.table.push_back({"vertex", "t", "value", "tail_bound", "K_used"});
  SeriesSolution s(g, parse_data<double>(*g, c.data), c.tol);
  Json rows = Json::array();
  for (Vertex v : parse_vertices(*g, c)) {
    for (double t : times) {
      const auto r = backward_solve(s, v, t);
      const auto label = g->vertex_label(v);
      rows.push_back({{"vertex", label},
                      {"t", number(t)},
                      {"value", number(r.value)},
                      {"tail_bound", number(r.tail_bound)},
                      {"K_used", r.k_used}});
      out.table.push_back(
          {label, format_double(t), format_double(r.value), format_double(r.tail_bound), std::to_string(r.k_used)});
    }
  }
  BackwardSolvabilityReport verdict =
      c.exact ? check_backward_solvability(*g, parse_data<Rational>(*g, c.data), d, c.kmax, c.rmax)
              : check_backward_solvability(*g, parse_data<double>(*g, c.data), d, c.kmax, c.rmax);
  out.report["graph"] = g->describe();
  out.report["results"] = std::move(rows);
  out.report["solvability"] = solvability_json(*g, verdict);
  if (verdict.verdict == BackwardVerdict::refuted_up_to_k) out.exit_code = kAuditFailure;
  return out;
}

// ---------------------------------------------------------------------------
// radius

CommandOutput radius_command(const RunConfig& c) {
  if (c.kmax < 1) throw UsageError("--kmax must be at least 1 for the remainder table");
  std::shared_ptr<const Graph> g;
  if (c.graph_file || c.family) g = resolve_graph(c);

  GrowthProfile gp;
  DegreeGrowth dg;
  Json fitted = nullptr;
  if (g) {
    if (c.rmax < 2) throw UsageError("--rmax must be at least 2 to fit growth profiles");
    const auto gf = fit_growth_profile(*g, parse_data<double>(*g, c.data), c.rmax);
    const auto df = fit_degree_growth(*g, c.rmax);
    gp = gf.profile;
    dg = df.growth;
    fitted = {{"a1", number(gp.a1)},
              {"a2", to_string(gp.a2)},
              {"a2_grid", gf.grid},
              {"c", number(dg.c)},
              {"a3", to_string(dg.a3)},
              {"a3_grid", df.grid},
              {"rmax", c.rmax}};
  }
  if (c.a1) gp.a1 = *c.a1;
  if (c.a2) gp.a2 = parse_rational(*c.a2);
  if (c.a3) dg.a3 = parse_rational(*c.a3);
  if (c.c) dg.c = *c.c;
  if (!(gp.a1 > 0) || !(dg.c > 0)) throw UsageError("A1 and C must be positive");
  if (gp.a2 < 0 || dg.a3 < 0) throw UsageError("A2 and A3 must be nonnegative");

  const auto cert = radius_estimate(gp, dg);
  CommandOutput out;
  out.report["fitted"] = fitted;
  out.report["profile"] = {{"a1", number(gp.a1)}, {"a2", to_string(gp.a2)}, {"c", number(dg.c)},
                           {"a3", to_string(dg.a3)}};
  out.report["certificate"] = certificate_json(cert);

  out.table.push_back({"k", "Q", "log_Q"});
  Json rows = Json::array();
  for (int k = 1; k <= c.kmax; ++k) {
    const double lq = log_remainder_bound(k, c.delta, dg, gp, c.radius);
    rows.push_back({{"k", k}, {"Q", number(std::exp(lq))}, {"log_Q", number(lq)}});
    out.table.push_back({std::to_string(k), format_double(std::exp(lq)), format_double(lq)});
  }
  out.report["remainder"] = {{"delta", number(c.delta)}, {"R", number(c.radius)}, {"rows", std::move(rows)}};
  if (cert.zeta > 0) {
    out.report["remainder"]["decay_threshold"] =
        number(remainder_decay_threshold(to_double(cert.zeta), c.delta, dg.c, c.radius));
  }

  if (g) {
    const auto audit = c.exact ? coefficient_bound_audit(*g, parse_data<Rational>(*g, c.data), gp, dg, c.kmax, c.rmax)
                               : coefficient_bound_audit(SeriesSolution(g, parse_data<double>(*g, c.data), c.tol), gp,
                                                         dg, c.kmax, c.rmax);
    Json a = {{"pass", audit.pass},
              {"precondition_ok", audit.precondition_ok},
              {"method", audit.method},
              {"arithmetic", audit.arithmetic},
              {"kmax", audit.kmax},
              {"rmax", audit.rmax},
              {"checked", audit.checked},
              {"violation", audit.violation ? witness_json(*g, *audit.violation) : Json(nullptr)},
              {"tightest", audit.checked > 0 ? witness_json(*g, audit.tightest) : Json(nullptr)},
              {"caveat", audit.caveat}};
    out.report["coefficient_audit"] = std::move(a);
    if (!audit.pass) out.exit_code = kAuditFailure;
  }
  return out;
}

// ---------------------------------------------------------------------------
// counterexample

CommandOutput counterexample_command(const RunConfig& c) {
  const FlatBumpParams& p = c.bump;
  p.validate(c.exact);
  if (c.kmax < 1) throw UsageError("--kmax must be at least 1");
  CommandOutput out;
  out.report["params"] = {{"beta", number(p.beta)},
                          {"theta", number(p.theta_value())},
                          {"epsilon", number(p.epsilon)},
                          {"T", number(p.T)},
                          {"C0", number(p.c0())}};
  const std::vector<double> residual_times{0.25, 0.5, 1.0};
  out.report["grid"] = {{"residual_x", {-10, 10}},
                        {"residual_t", number_list(residual_times)},
                        {"growth_t", number_list(default_time_grid())},
                        {"xmax", c.xmax},
                        {"probe_s", "2^-30"},
                        {"flatness_s", "2^-m, m = 1..40"}};

  double max_residual = 0.0;
  double max_v = 0.0;
  out.table.push_back({"x", "t", "v", "residual"});
  for (std::int64_t x = -10; x <= 10; ++x) {
    for (double t : residual_times) {
      const double r = heat_residual_1d(p, x, t);
      const double v = v_eval(p, x, t);
      max_residual = std::max(max_residual, std::fabs(r));
      max_v = std::max(max_v, std::fabs(v));
      out.table.push_back({std::to_string(x), format_double(t), format_double(v), format_double(r)});
    }
  }
  const bool residual_ok = max_residual <= 1e-9 * max_v;
  out.report["max_residual"] = number(max_residual);
  out.report["max_abs_v"] = number(max_v);
  out.report["max_relative_residual"] = number(max_v > 0 ? max_residual / max_v : max_residual);
  out.report["residual_pass"] = residual_ok;

  bool polynomial_ok = true;
  if (p.integral_beta()) {
    for (std::int64_t x = -10; x <= 10 && polynomial_ok; ++x) polynomial_ok = residual_polynomial(p, x).empty();
    out.report["residual_polynomial_zero"] = polynomial_ok;
  } else {
    out.report["residual_polynomial_zero"] = nullptr;
  }

  bool growth_ok = false;
  try {
    const auto growth = growth_audit(p, c.xmax);
    growth_ok = growth.pass;
    out.report["growth_pass"] = growth.pass;
    out.report["growth"] = {{"r0", number(growth.r0)},
                            {"x_min", growth.x_min},
                            {"x_max", growth.x_max},
                            {"checked", growth.checked},
                            {"tightest",
                             {{"x", growth.tightest.x},
                              {"t", number(growth.tightest.t)},
                              {"log_v", number(growth.tightest.log_v)},
                              {"log_bound", number(growth.tightest.log_bound)}}}};
    if (growth.violation) {
      out.report["growth"]["violation"] = {{"x", growth.violation->x},
                                           {"t", number(growth.violation->t)},
                                           {"log_v", number(growth.violation->log_v)},
                                           {"log_bound", number(growth.violation->log_bound)}};
    }
  } catch (const PreconditionError& e) {
    out.report["growth_pass"] = nullptr;
    out.report["growth"] = {{"skipped", e.what()}};
    growth_ok = true;
  }

  bool witness_ok = true;
  Json witnesses = Json::array();
  for (std::int64_t x = 0; x <= 3; ++x) {
    const auto w = non_analyticity_witness(p, x, c.kmax);
    witness_ok = witness_ok && w.flat && w.nonzero;
    witnesses.push_back({{"x", x},
                         {"flat", w.flat},
                         {"probe_log_abs", number_list(w.probe_log_abs)},
                         {"nonzero", w.nonzero},
                         {"positive_on_samples", w.positive},
                         {"conclusion", w.conclusion}});
  }
  out.report["non_analyticity"] = std::move(witnesses);

  Json flat = Json::array();
  for (const auto& row : flatness_table(p, c.kmax)) {
    flat.push_back({{"j", row.j}, {"decreasing", row.decreasing}, {"log_abs", number_list(row.log_abs)}});
  }
  out.report["flatness_table"] = std::move(flat);

  Json findings = Json::array();
  for (int k = 1; k <= 30; ++k) {
    const auto h = derivative_bound_audit(p, k, default_time_grid());
    findings.push_back({{"k", k}, {"holds", h.pass}, {"worst_log_margin", number(h.worst_margin)}});
  }
  out.report["derivative_bound_findings"] = std::move(findings);

  const bool all = residual_ok && polynomial_ok && growth_ok && witness_ok;
  out.report["conclusion"] =
      all ? "v solves the heat equation on Z, obeys the growth bound on the audited window, and has a vanishing "
            "Taylor series at the initial time while not vanishing: not time-analytic"
          : "audit failed; see the failing sections";
  if (!all) out.exit_code = kAuditFailure;
  return out;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double error = 0.0;
  double tol = 0.0;
  bool pass = true;
};

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

std::vector<Check> verify_graph(const std::shared_ptr<const FiniteGraph>& g, bool exact, double tol) {
  std::vector<Check> checks;
  auto record = [&](std::string name, double error, double limit) {
    checks.push_back({std::move(name), error, limit, error <= limit});
  };
  const auto op = dense_laplacian<double>(*g);
  const std::size_t n = op.size();
  std::mt19937_64 rng(0x5eed0000ULL + n);
  std::vector<double> rand_vec(n);
  for (auto& x : rand_vec) x = uniform_real(rng, -1.0, 1.0);
  const auto random_fn = op.to_function(rand_vec);
  const auto delta = LocalFunction<double>::delta(g->root());

  // Laplacian action.
  {
    const auto dense = matvec<double>(op.matrix, rand_vec);
    const auto local = op.to_vector(apply_laplacian(*g, random_fn));
    record("laplacian_action", max_abs_diff(dense, local), 1e-13);
  }
  // Iterates.
  {
    double err = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const auto dense = brute_iterate<double>(op, rand_vec, k);
      const auto local = op.to_vector(iterated_laplacian(*g, random_fn, k));
      err = std::max(err, max_abs_diff(dense, local) / std::max(1.0, max_abs(dense)));
    }
    record("iterates_k<=10_relative", err, 1e-10);
  }
  // Distances.
  {
    const auto dist = dense_distances(op, op.index_of(g->root()));
    double mismatches = 0;
    for (const auto& e : *g->ball_entries(g->root(), static_cast<int>(n))) {
      if (dist[op.index_of(e.v)] != e.distance) ++mismatches;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] >= 0 && distance(*g, g->root(), op.order[i]) != dist[i]) ++mismatches;
    }
    record("bfs_distances", mismatches, 0.0);
  }
  // Series against the dense exponential, forward and backward.
  const std::vector<double> times{-0.1, -0.05, -0.01};
  for (const auto& [label, data] : {std::pair{"delta", delta}, std::pair{"random", random_fn}}) {
    const SeriesSolution s(g, data, tol);
    const auto a = op.to_vector(data);
    double series_err = 0.0;
    double duality_bits = 0.0;
    double backward_err = 0.0;
    double tail = 0.0;
    for (double t : times) {
      const auto grid = evaluate_grid(s, op.order, std::span<const double>(&t, 1));
      const auto ref = expm_apply(op, a, t);
      for (std::size_t i = 0; i < n; ++i) {
        series_err = std::max(series_err, std::fabs(grid[i].value - ref[i]));
        tail = std::max(tail, grid[i].tail_bound);
        const auto back = backward_solve(s, op.order[i], -t);
        if (back.value != grid[i].value) ++duality_bits;
        backward_err = std::max(backward_err, std::fabs(back.value - ref[i]));
      }
    }
    record(std::string("series_vs_expm_") + label, series_err, 1e-10);
    record(std::string("backward_bit_identical_") + label, duality_bits, 0.0);
    record(std::string("backward_vs_expm_") + label, backward_err, 1e-10);
    record(std::string("tail_bound_") + label, tail, tol);

    double residual_excess = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 8); ++i) {
      const auto r = residual_check(s, op.order[i], -0.05, 0.01);
      residual_excess = std::max(residual_excess, r.residual - r.bound);
    }
    record(std::string("residual_minus_bound_") + label, residual_excess, 1e-12);
  }
  // Semigroup.
  {
    const auto a = op.to_vector(random_fn);
    const auto composed = expm_apply(op, expm_apply(op, a, 0.05), -0.1);
    const auto direct = expm_apply(op, a, -0.05);
    record("expm_semigroup", max_abs_diff(composed, direct), 1e-11);
    const auto identity = expm_apply(op, expm_apply(op, a, 0.5), -0.5);
    record("expm_inverse", max_abs_diff(identity, a), 1e-10);
  }
  if (exact) {
    const auto eop = dense_laplacian<Rational>(*g);
    double nonzero_rows = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational sum = 0;
      for (const auto& x : eop.matrix.row(i)) sum += x;
      if (sum != 0) ++nonzero_rows;
    }
    record("exact_row_sums", nonzero_rows, 0.0);
    const auto efn = random_fn.cast<Rational>();
    const auto ea = eop.to_vector(efn);
    double mismatches = 0;
    for (int k = 0; k <= 4; ++k) {
      const auto dense = brute_iterate<Rational>(eop, ea, k);
      const auto local = eop.to_vector(iterated_laplacian(*g, efn, k));
      if (dense != local) ++mismatches;
    }
    record("exact_iterates_k<=4", mismatches, 0.0);
  }
  return checks;
}

CommandOutput verify_command(const RunConfig& c) {
  std::vector<NamedGraph> graphs;
  if (c.family) throw UsageError("verify needs a finite graph: use --graph FILE or no graph for the fixtures");
  if (c.graph_file) graphs.push_back({*c.graph_file, load_graph_file(*c.graph_file)});
  else graphs = oracle_fixture_set();

  CommandOutput out;
  out.table.push_back({"graph", "check", "error", "tol", "pass"});
  Json rows = Json::array();
  bool all = true;
  for (const auto& [name, g] : graphs) {
    Json checks = Json::array();
    for (const auto& ch : verify_graph(g, c.exact, c.tol)) {
      all = all && ch.pass;
      checks.push_back({{"check", ch.name}, {"error", number(ch.error)}, {"tol", number(ch.tol)}, {"pass", ch.pass}});
      out.table.push_back({name, ch.name, format_double(ch.error), format_double(ch.tol), ch.pass ? "true" : "false"});
    }
    rows.push_back({{"graph", name}, {"vertices", g->size()}, {"checks", std::move(checks)}});
  }
  out.report["graphs"] = std::move(rows);
  out.report["pass"] = all;
  if (!all) out.exit_code = kAuditFailure;
  return out;
}

}  // namespace

CommandOutput run(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (c.kmax < 0 || c.rmax < 0) throw UsageError("--kmax and --rmax must be nonnegative");
  if (!(c.tol > 0)) throw UsageError("--tol must be positive");
  CommandOutput out;
  if (c.command == "laplacian") {
    const auto g = resolve_graph(c);
    out = c.exact ? laplacian_command<Rational>(c, *g) : laplacian_command<double>(c, *g);
  } else if (c.command == "solve") {
    out = solve_command(c, resolve_graph(c));
  } else if (c.command == "backward") {
    out = backward_command(c, resolve_graph(c));
  } else if (c.command == "radius") {
    out = radius_command(c);
  } else if (c.command == "counterexample") {
    out = counterexample_command(c);
  } else if (c.command == "verify") {
    out = verify_command(c);
  } else {
    throw UsageError("unknown command '" + c.command + "'");
  }
  Json doc;
  doc["config"] = config_json(c);
  doc["arithmetic"] = arithmetic_name(c.exact);
  for (auto& [key, value] : out.report.items()) doc[key] = value;
  doc["exit_code"] = out.exit_code;
  out.report = std::move(doc);
  return out;
}

std::string to_csv(const std::vector<std::vector<std::string>>& table) {
  std::string out;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      const auto& cell = row[i];
      if (cell.find_first_of(",\"\n") == std::string::npos) {
        out += cell;
      } else {
        out += '"';
        for (char ch : cell) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--graph", c.graph_file, "Finite graph JSON file");
  sub->add_option("--family", c.family, "Graph family: z, lattice:d, tree:k");
  sub->add_option("--data", c.data, "Initial data entries label=value (default: delta at the root)");
  sub->add_option("--vertex", c.vertices, "Evaluation vertices (default: B_rmax(root))");
  sub->add_option("--t", c.times, "Times, comma separated")->delimiter(',')->allow_extra_args(false);
  sub->add_option("--tol", c.tol, "Series truncation tolerance");
  sub->add_option("--kmax", c.kmax, "Largest iterate / derivative order");
  sub->add_option("--rmax", c.rmax, "Audit radius around the root");
  sub->add_flag("--exact", c.exact, "Exact rational arithmetic where available");
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat equation solvers and audits on weighted graphs", "heatgraph"};
  app.require_subcommand(1);
  RunConfig c;
  std::optional<double> theta;

  auto* laplacian = app.add_subcommand("laplacian", "Iterated Laplacians of finitely supported data");
  auto* solve = app.add_subcommand("solve", "Power series solution on a vertex x time grid");
  auto* backward = app.add_subcommand("backward", "Backward heat problem and solvability audit");
  auto* radius = app.add_subcommand("radius", "Analytic radius, remainder table and coefficient audit");
  auto* counter = app.add_subcommand("counterexample", "Audits of the flat-bump solution on Z");
  auto* verify = app.add_subcommand("verify", "Dense oracle cross-checks on finite graphs");
  for (auto* sub : {laplacian, solve, backward, radius, counter, verify}) add_common(sub, c);

  radius->add_option("--a1", c.a1, "A1");
  radius->add_option("--a2", c.a2, "A2 (decimal or p/q)");
  radius->add_option("--a3", c.a3, "A3 (decimal or p/q)");
  radius->add_option("--c", c.c, "C");
  radius->add_option("--delta", c.delta, "Step size for the remainder table");
  radius->add_option("--R", c.radius, "Ball radius for the remainder table");
  backward->add_option("--degree-bound", c.degree_bound, "D, an upper bound for Deg");
  counter->add_option("--beta", c.bump.beta, "beta");
  counter->add_option("--theta", theta, "theta");
  counter->add_option("--epsilon", c.bump.epsilon, "epsilon");
  counter->add_option("--T", c.bump.T, "time shift T");
  counter->add_option("--xmax", c.xmax, "Right end of the growth audit window");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPass;
    }
    err << "heatgraph: " << e.what() << "\n";
    return kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.bump.theta = theta;

  CommandOutput result;
  try {
    result = run(c);
  } catch (const TruncationFailure& e) {
    err << "heatgraph: " << e.what() << " (best bound " << e.best_bound() << ")\n";
    return kAuditFailure;
  } catch (const AuditWindowEmpty& e) {
    err << "heatgraph: " << e.what() << " (R0 = " << e.r0() << ")\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {  // UsageError, PreconditionError
    err << "heatgraph: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "heatgraph: " << e.what() << "\n";
    return kUsage;
  } catch (const RadiusExceeded& e) {
    err << "heatgraph: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    err << "heatgraph: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "heatgraph: " << e.what() << "\n";
    return kAuditFailure;
  }

  const std::string text = c.format == "csv" ? to_csv(result.table) : dump_json(result.report);
  if (c.out) {
    std::ofstream file(*c.out, std::ios::binary);
    if (!file) {
      err << "heatgraph: cannot write " << *c.out << "\n";
      return kUsage;
    }
    file << text;
  } else {
    out << text;
  }
  return result.exit_code;
}

}  // namespace heat::cli
