#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "heat/errors.hpp"
#include "heat/graph.hpp"
#include "heat/scalar.hpp"

namespace heat {

/// Finitely supported vertex function. The support is stored sorted and
/// unique; every vertex outside it evaluates to exactly zero. Stored values
/// may themselves be zero.
template <class T>
class LocalFunction {
 public:
  using value_type = T;

  LocalFunction() = default;

  /// `support` must be sorted and unique, one value per vertex.
  LocalFunction(std::vector<Vertex> support, std::vector<T> values)
      : support_(std::move(support)), values_(std::move(values)) {
    if (support_.size() != values_.size()) throw DomainError("LocalFunction: support/value size mismatch");
    if (!std::is_sorted(support_.begin(), support_.end()) ||
        std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
      throw DomainError("LocalFunction: support must be sorted and unique");
    }
  }

  static LocalFunction delta(Vertex v, T value = T(1)) { return LocalFunction({v}, {std::move(value)}); }

  static LocalFunction from_pairs(std::vector<std::pair<Vertex, T>> pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vertex> support;
    std::vector<T> values;
    for (auto& [v, x] : pairs) {
      if (!support.empty() && support.back() == v) throw DomainError("LocalFunction: duplicate vertex");
      support.push_back(v);
      values.push_back(std::move(x));
    }
    return LocalFunction(std::move(support), std::move(values));
  }

  T operator()(Vertex v) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), v);
    if (it == support_.end() || *it != v) return T(0);
    return values_[static_cast<std::size_t>(it - support_.begin())];
  }

  std::span<const Vertex> support() const noexcept { return support_; }
  std::span<const T> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return support_.size(); }
  bool empty() const noexcept { return support_.empty(); }

  T sup_abs() const {
    T m(0);
    for (const auto& x : values_) m = std::max(m, T(abs_value(x)));
    return m;
  }

  /// Support restricted to vertices with a nonzero value.
  std::vector<Vertex> nonzero_support() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (values_[i] != T(0)) out.push_back(support_[i]);
    }
    return out;
  }

  template <class U>
  LocalFunction<U> cast() const {
    std::vector<U> values;
    values.reserve(values_.size());
    for (const auto& x : values_) {
      if constexpr (std::is_same_v<U, double>) values.push_back(to_double(x));
      else values.push_back(U(x));
    }
    return LocalFunction<U>(support_, std::move(values));
  }

  friend bool operator==(const LocalFunction&, const LocalFunction&) = default;

 private:
  std::vector<Vertex> support_;
  std::vector<T> values_;
};

/// alpha*f + beta*g over the union of supports.
template <class T>
LocalFunction<T> linear_combination(const T& alpha, const LocalFunction<T>& f, const T& beta,
                                    const LocalFunction<T>& g) {
  std::vector<Vertex> support;
  std::set_union(f.support().begin(), f.support().end(), g.support().begin(), g.support().end(),
                 std::back_inserter(support));
  std::vector<T> values;
  values.reserve(support.size());
  for (Vertex v : support) values.push_back(alpha * f(v) + beta * g(v));
  return LocalFunction<T>(std::move(support), std::move(values));
}

}  // namespace heat
