#include "heat/laplacian.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>

namespace heat {

namespace {

template <class T>
T laplacian_at(const Graph& g, const LocalFunction<T>& f, Vertex y, std::vector<Neighbor>& nbrs) {
  g.neighbors(y, nbrs);
  const T fy = f(y);
  const T mu = from_double<T>(g.measure(y));
  T acc(0);
  for (const auto& n : nbrs) acc += from_double<T>(n.weight) * (f(n.to) - fy);
  return acc / mu;
}

template <class T>
T max_abs_over(const LocalFunction<T>& f, std::span<const Vertex> vs) {
  T m(0);
  for (Vertex v : vs) m = std::max(m, T(abs_value(f(v))));
  return m;
}

template <class T>
T pow_int(T base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

template <class T>
LocalFunction<T> apply_laplacian(const Graph& g, const LocalFunction<T>& f, Execution exec) {
  std::vector<Vertex> support = one_neighborhood(g, f.support());
  std::vector<T> values(support.size());
  const auto n = static_cast<std::ptrdiff_t>(support.size());

  if (exec == Execution::serial) {
    std::vector<Neighbor> nbrs;
    for (std::ptrdiff_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = laplacian_at(g, f, support[static_cast<std::size_t>(i)], nbrs);
  } else {
    std::exception_ptr failure;
#pragma omp parallel num_threads(worker_count())
    {
      std::vector<Neighbor> nbrs;
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
          values[static_cast<std::size_t>(i)] = laplacian_at(g, f, support[static_cast<std::size_t>(i)], nbrs);
        } catch (...) {
#pragma omp critical(heat_laplacian_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return LocalFunction<T>(std::move(support), std::move(values));
}

template <class T>
LocalFunction<T> iterated_laplacian(const Graph& g, const LocalFunction<T>& a, int k, Execution exec) {
  if (k < 0) throw DomainError("iterated_laplacian: k must be nonnegative");
  LocalFunction<T> cur = a;
  for (int i = 0; i < k; ++i) cur = apply_laplacian(g, cur, exec);
  return cur;
}

template <class T>
T key_estimate_bound(const Graph& g, const LocalFunction<T>& f, Vertex x) {
  const auto b1 = ball(g, x, 1);
  return T(2) * degree_as<T>(g, x) * max_abs_over(f, b1);
}

template <class T>
T key_estimate_set_bound(const Graph& g, const LocalFunction<T>& f, std::span<const Vertex> k) {
  T deg(0);
  for (Vertex y : k) deg = std::max(deg, degree_as<T>(g, y));
  const auto k1 = one_neighborhood(g, k);
  return T(2) * deg * max_abs_over(f, k1);
}

template <class T>
T iterate_sup_bound(const Graph& g, const LocalFunction<T>& a, Vertex x, int j) {
  if (j < 1) throw DomainError("iterate_sup_bound: j must be positive");
  T deg(0);
  for (Vertex y : ball(g, x, j - 1)) deg = std::max(deg, degree_as<T>(g, y));
  return pow_int(T(2) * deg, j) * max_abs_over(a, ball(g, x, j));
}

template <class T>
IteratedLaplacianTable<T>::IteratedLaplacianTable(const Graph& g, LocalFunction<T> base,
                                                  std::size_t max_support, Execution exec)
    : graph_(&g), max_support_(max_support), exec_(exec) {
  entries_.push_back(std::move(base));
}

template <class T>
const LocalFunction<T>& IteratedLaplacianTable<T>::at(int k) const {
  if (k < 0) throw DomainError("IteratedLaplacianTable: negative index");
  {
    std::shared_lock lock(mutex_);
    if (static_cast<std::size_t>(k) < entries_.size()) return entries_[static_cast<std::size_t>(k)];
  }
  std::unique_lock lock(mutex_);
  while (entries_.size() <= static_cast<std::size_t>(k)) {
    const auto& last = entries_.back();
    if (last.size() > max_support_) {
      throw std::length_error("iterated Laplacian support exceeds " + std::to_string(max_support_) +
                              " vertices at k=" + std::to_string(entries_.size() - 1));
    }
    entries_.push_back(apply_laplacian(*graph_, last, exec_));
  }
  return entries_[static_cast<std::size_t>(k)];
}

template <class T>
int IteratedLaplacianTable<T>::size() const {
  std::shared_lock lock(mutex_);
  return static_cast<int>(entries_.size());
}

template <class T>
void IteratedLaplacianTable<T>::overwrite(int k, LocalFunction<T> value) {
  (void)at(k);
  std::unique_lock lock(mutex_);
  entries_[static_cast<std::size_t>(k)] = std::move(value);
}

template <class T>
std::vector<T> apply_laplacian_radial(std::span<const LevelRates> rates, std::span<const T> levels) {
  const std::size_t n = levels.size();
  if (rates.size() < n + 1) throw DomainError("apply_laplacian_radial: not enough level rates");
  auto value = [&](std::size_t l) { return l < n ? levels[l] : T(0); };
  std::vector<T> out(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    const T fl = value(l);
    T acc = from_double<T>(rates[l].up) * (value(l + 1) - fl);
    if (l > 0) acc += from_double<T>(rates[l].down) * (value(l - 1) - fl);
    out[l] = acc;
  }
  return out;
}

#define HEAT_INSTANTIATE(T)                                                                        \
  template LocalFunction<T> apply_laplacian<T>(const Graph&, const LocalFunction<T>&, Execution);  \
  template LocalFunction<T> iterated_laplacian<T>(const Graph&, const LocalFunction<T>&, int,      \
                                                  Execution);                                      \
  template T key_estimate_bound<T>(const Graph&, const LocalFunction<T>&, Vertex);                 \
  template T key_estimate_set_bound<T>(const Graph&, const LocalFunction<T>&,                      \
                                       std::span<const Vertex>);                                   \
  template T iterate_sup_bound<T>(const Graph&, const LocalFunction<T>&, Vertex, int);             \
  template class IteratedLaplacianTable<T>;                                                        \
  template std::vector<T> apply_laplacian_radial<T>(std::span<const LevelRates>, std::span<const T>);

HEAT_INSTANTIATE(double)
HEAT_INSTANTIATE(Rational)

#undef HEAT_INSTANTIATE

}  // namespace heat
