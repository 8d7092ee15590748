#pragma once

// Weighted graph Laplacian
//
//   (Lap f)(x) = sum_y omega(x,y)/mu(x) * (f(y) - f(x))
//
// applied to finitely supported functions. One application grows the
// support by exactly one ring, so k iterates of a compactly supported
// function live on the k-neighborhood of its support and can be computed
// exactly on infinite graphs.

#include <cstddef>
#include <deque>
#include <shared_mutex>
#include <span>
#include <vector>

#include "heat/graph.hpp"
#include "heat/local_function.hpp"
#include "heat/parallel.hpp"

namespace heat {

/// Lap f on (supp f)_1. The output support is exactly one_neighborhood(supp f).
template <class T>
LocalFunction<T> apply_laplacian(const Graph& g, const LocalFunction<T>& f,
                                 Execution exec = Execution::parallel);

/// Lap^k a by k successive applications.
template <class T>
LocalFunction<T> iterated_laplacian(const Graph& g, const LocalFunction<T>& a, int k,
                                    Execution exec = Execution::parallel);

/// 2 Deg(x) max_{y in B_1(x)} |f(y)|, which dominates |Lap f(x)|.
template <class T>
T key_estimate_bound(const Graph& g, const LocalFunction<T>& f, Vertex x);

/// Set form: 2 (max_{y in K} Deg(y)) (max over (K)_1 of |f|), which
/// dominates max_{x in K} |Lap f(x)|.
template <class T>
T key_estimate_set_bound(const Graph& g, const LocalFunction<T>& f, std::span<const Vertex> k);

/// 2^j (max_{B_{j-1}(x)} Deg)^j max_{B_j(x)} |a|, which dominates |Lap^j a(x)|.
template <class T>
T iterate_sup_bound(const Graph& g, const LocalFunction<T>& a, Vertex x, int j);

/// Memoized iterates a_k = Lap^k a. Extension is serialized behind a
/// unique lock; materialized entries are immutable and may be read from any
/// thread while the table grows.
template <class T>
class IteratedLaplacianTable {
 public:
  /// `max_support` bounds the size of any materialized entry; exceeding it
  /// throws std::length_error.
  IteratedLaplacianTable(const Graph& g, LocalFunction<T> base,
                         std::size_t max_support = std::size_t{1} << 24,
                         Execution exec = Execution::parallel);

  IteratedLaplacianTable(const IteratedLaplacianTable&) = delete;
  IteratedLaplacianTable& operator=(const IteratedLaplacianTable&) = delete;

  /// Materializes entries 0..k and returns entry k.
  const LocalFunction<T>& at(int k) const;
  /// Number of entries materialized so far.
  int size() const;
  const LocalFunction<T>& base() const { return entries_.front(); }
  const Graph& graph() const { return *graph_; }

  /// Test hook: replaces entry k (materializing it first). Used to inject
  /// faults into audits; later entries are left as they are.
  void overwrite(int k, LocalFunction<T> value);

 private:
  const Graph* graph_;
  std::size_t max_support_;
  Execution exec_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<LocalFunction<T>> entries_;  // deque: references stay valid
};

// ---------------------------------------------------------------------------
// Radial functions on graphs with an equitable distance partition around the
// root. A function constant on spheres stays constant on spheres under Lap,
// and Lap acts on the sphere values as a tridiagonal operator:
//   (Lap F)_l = down_l (F_{l-1} - F_l) + up_l (F_{l+1} - F_l).

/// One application on sphere values F_0..F_{n-1}; the result is one level
/// longer, since the support grows by one sphere.
template <class T>
std::vector<T> apply_laplacian_radial(std::span<const LevelRates> rates, std::span<const T> levels);

}  // namespace heat
