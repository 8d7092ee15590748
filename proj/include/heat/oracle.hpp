#pragma once

// Dense brute-force references for finite graphs. Nothing here uses the
// support-tracking machinery of the Laplacian module: the Laplacian is a
// plain n x n matrix and e^{tL} comes from a Taylor polynomial with scaling
// and squaring.

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "heat/graph.hpp"
#include "heat/local_function.hpp"
#include "heat/parallel.hpp"
#include "heat/scalar.hpp"

namespace heat {

/// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
std::vector<T> matvec(const DenseMatrix<T>& m, std::span<const T> v, Execution exec = Execution::parallel);
template <class T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b, Execution exec = Execution::parallel);

/// Largest absolute column sum.
double norm1(const DenseMatrix<double>& m);

template <class T>
struct DenseOperator {
  DenseMatrix<T> matrix;
  std::vector<Vertex> order;                       // row i <-> order[i]
  std::unordered_map<std::int64_t, std::size_t> index;

  std::size_t size() const { return order.size(); }
  std::size_t index_of(Vertex v) const;
  std::vector<T> to_vector(const LocalFunction<T>& f) const;
  LocalFunction<T> to_function(std::span<const T> v) const;
};

inline constexpr std::size_t kDenseOracleCap = 2000;

/// Dense Laplacian in the graph's vertex order. Refuses (DomainError)
/// infinite graphs and graphs with more than kDenseOracleCap vertices.
template <class T>
DenseOperator<T> dense_laplacian(const Graph& g);

/// e^{tL} a by scaling and squaring with a degree-20 Taylor core, scaled so
/// that ||tL / 2^m||_1 <= 1/2.
std::vector<double> expm_apply(const DenseOperator<double>& op, std::span<const double> a, double t,
                               Execution exec = Execution::parallel);

/// L^k a by k matrix-vector products. Requires 0 <= k <= 50.
template <class T>
std::vector<T> brute_iterate(const DenseOperator<T>& op, std::span<const T> a, int k,
                             Execution exec = Execution::parallel);

/// Hop distances from `source` by BFS over the nonzero pattern of the matrix;
/// -1 marks unreachable vertices.
std::vector<std::int64_t> dense_distances(const DenseOperator<double>& op, std::size_t source);

}  // namespace heat
