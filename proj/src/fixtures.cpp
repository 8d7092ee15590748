#include "heat/fixtures.hpp"

#include <set>
#include <utility>

#include "heat/errors.hpp"

namespace heat {

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_index: empty range");
  return rng() % n;
}

namespace {

std::vector<VertexRecord> unit_vertices(std::int64_t first, int n) {
  std::vector<VertexRecord> vs;
  for (int i = 0; i < n; ++i) vs.push_back({first + i, 1.0});
  return vs;
}

}  // namespace

std::shared_ptr<const FiniteGraph> complete2(double weight) {
  return std::make_shared<FiniteGraph>(unit_vertices(0, 2), std::vector<EdgeRecord>{{0, 1, weight}}, 0, "K2");
}

std::shared_ptr<const FiniteGraph> path_graph(int n) {
  if (n < 1) throw DomainError("path_graph: n must be positive");
  std::vector<EdgeRecord> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1, 1.0});
  return std::make_shared<FiniteGraph>(unit_vertices(0, n), std::move(es), 0, "P" + std::to_string(n));
}

std::shared_ptr<const FiniteGraph> cycle_graph(int n) {
  if (n < 3) throw DomainError("cycle_graph: n must be at least 3");
  std::vector<EdgeRecord> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n, 1.0});
  return std::make_shared<FiniteGraph>(unit_vertices(0, n), std::move(es), 0, "C" + std::to_string(n));
}

std::shared_ptr<const FiniteGraph> random_weighted_graph(int n, int extra, std::uint64_t seed) {
  if (n < 2) throw DomainError("random_weighted_graph: n must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<VertexRecord> vs;
  for (int i = 0; i < n; ++i) vs.push_back({i, uniform_real(rng, 0.5, 2.0)});
  std::set<std::pair<int, int>> seen;
  std::vector<EdgeRecord> es;
  for (int i = 0; i + 1 < n; ++i) {
    seen.insert({i, i + 1});
    es.push_back({i, i + 1, uniform_real(rng, 0.5, 2.0)});
  }
  for (int added = 0, attempts = 0; added < extra && attempts < 100 * (extra + 1); ++attempts) {
    auto u = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    auto v = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    es.push_back({u, v, uniform_real(rng, 0.5, 2.0)});
    ++added;
  }
  return std::make_shared<FiniteGraph>(std::move(vs), std::move(es), 0,
                                       "random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
}

std::shared_ptr<const FiniteGraph> integer_segment(int n) {
  if (n < 2) throw DomainError("integer_segment: n must be at least 2");
  const std::int64_t first = -(n / 2);
  std::vector<EdgeRecord> es;
  for (std::int64_t i = first; i + 1 < first + n; ++i) es.push_back({i, i + 1, 1.0});
  return std::make_shared<FiniteGraph>(unit_vertices(first, n), std::move(es), 0,
                                       "Z[" + std::to_string(first) + "," + std::to_string(first + n - 1) + "]");
}

std::vector<NamedGraph> oracle_fixture_set() {
  return {
      {"K2", complete2()},
      {"P10", path_graph(10)},
      {"C100", cycle_graph(100)},
      {"random50", random_weighted_graph(50, 75, 20240611)},
      {"Z200", integer_segment(200)},
  };
}

}  // namespace heat
