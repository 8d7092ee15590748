#pragma once

// Small finite graphs shared by the verify command, the tests and the
// benchmarks. Random graphs are drawn from std::mt19937_64 with an explicit,
// portable mapping to doubles, so a seed names the same graph everywhere.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "heat/graph.hpp"

namespace heat {

/// Uniform double in [lo, hi) from the top 53 bits of one draw.
double uniform_real(std::mt19937_64& rng, double lo, double hi);
/// Uniform integer in [0, n) by modulo reduction (n is tiny next to 2^64).
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

std::shared_ptr<const FiniteGraph> complete2(double weight = 1.0);
std::shared_ptr<const FiniteGraph> path_graph(int n);
std::shared_ptr<const FiniteGraph> cycle_graph(int n);
/// Connected graph on 0..n-1: a path plus `extra` random chords, weights in
/// [0.5, 2), measures in [0.5, 2). Root 0.
std::shared_ptr<const FiniteGraph> random_weighted_graph(int n, int extra, std::uint64_t seed);
/// Path on the integers -n/2 .. n - n/2 - 1 with unit weights, root 0.
std::shared_ptr<const FiniteGraph> integer_segment(int n);

struct NamedGraph {
  std::string name;
  std::shared_ptr<const FiniteGraph> graph;
};

/// K2, P10, C100, a random weighted graph on 50 vertices, and a 200 vertex
/// segment of Z.
std::vector<NamedGraph> oracle_fixture_set();

}  // namespace heat
