#include "heat/oracle.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "heat/errors.hpp"

namespace heat {

template <class T>
std::vector<T> matvec(const DenseMatrix<T>& m, std::span<const T> v, Execution exec) {
  if (v.size() != m.cols()) throw DomainError("matvec: dimension mismatch");
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
  std::vector<T> out(m.rows(), T(0));
  auto row_dot = [&](std::ptrdiff_t i) {
    T acc(0);
    const auto r = m.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * v[j];
    out[static_cast<std::size_t>(i)] = acc;
  };
  if (exec == Execution::serial || !std::is_same_v<T, double>) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) row_dot(i);
  } else {
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < rows; ++i) row_dot(i);
  }
  return out;
}

template <class T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b, Execution exec) {
  if (a.cols() != b.rows()) throw DomainError("matmul: dimension mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  auto row_product = [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  };
  if (exec == Execution::serial || !std::is_same_v<T, double>) {
    for (std::ptrdiff_t i = 0; i < rows; ++i) row_product(i);
  } else {
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (std::ptrdiff_t i = 0; i < rows; ++i) row_product(i);
  }
  return c;
}

template std::vector<double> matvec(const DenseMatrix<double>&, std::span<const double>, Execution);
template std::vector<Rational> matvec(const DenseMatrix<Rational>&, std::span<const Rational>, Execution);
template DenseMatrix<double> matmul(const DenseMatrix<double>&, const DenseMatrix<double>&, Execution);
template DenseMatrix<Rational> matmul(const DenseMatrix<Rational>&, const DenseMatrix<Rational>&, Execution);

double norm1(const DenseMatrix<double>& m) {
  std::vector<double> col(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) col[j] += std::fabs(m(i, j));
  }
  double best = 0.0;
  for (double c : col) best = std::max(best, c);
  return best;
}

template <class T>
std::size_t DenseOperator<T>::index_of(Vertex v) const {
  auto it = index.find(id_of(v));
  if (it == index.end()) throw DomainError("dense oracle: vertex not in the operator");
  return it->second;
}

template <class T>
std::vector<T> DenseOperator<T>::to_vector(const LocalFunction<T>& f) const {
  std::vector<T> out(size(), T(0));
  for (std::size_t i = 0; i < f.size(); ++i) out[index_of(f.support()[i])] = f.values()[i];
  return out;
}

template <class T>
LocalFunction<T> DenseOperator<T>::to_function(std::span<const T> v) const {
  if (v.size() != size()) throw DomainError("dense oracle: vector length mismatch");
  std::vector<std::pair<Vertex, T>> pairs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != T(0)) pairs.emplace_back(order[i], v[i]);
  }
  return LocalFunction<T>::from_pairs(std::move(pairs));
}

template <class T>
DenseOperator<T> dense_laplacian(const Graph& g) {
  if (!g.is_finite()) throw DomainError("dense oracle requires a finite graph: " + g.describe());
  const auto vs = g.vertices();
  if (vs.size() > kDenseOracleCap) {
    throw DomainError("dense oracle refuses " + std::to_string(vs.size()) + " vertices (cap " +
                      std::to_string(kDenseOracleCap) + ")");
  }
  DenseOperator<T> op;
  op.order.assign(vs.begin(), vs.end());
  for (std::size_t i = 0; i < op.order.size(); ++i) op.index.emplace(id_of(op.order[i]), i);
  op.matrix = DenseMatrix<T>(op.size(), op.size());
  std::vector<Neighbor> nbrs;
  for (std::size_t i = 0; i < op.size(); ++i) {
    g.neighbors(op.order[i], nbrs);
    const T mu = from_double<T>(g.measure(op.order[i]));
    T diag(0);
    for (const auto& n : nbrs) {
      const T rate = from_double<T>(n.weight) / mu;
      op.matrix(i, op.index_of(n.to)) += rate;
      diag -= rate;
    }
    op.matrix(i, i) = diag;
  }
  return op;
}

template struct DenseOperator<double>;
template struct DenseOperator<Rational>;
template DenseOperator<double> dense_laplacian<double>(const Graph&);
template DenseOperator<Rational> dense_laplacian<Rational>(const Graph&);

namespace {

constexpr int kTaylorOrder = 20;

// sum_{i<=20} B^i v / i! by Horner.
std::vector<double> taylor_apply(const DenseMatrix<double>& b, std::span<const double> v, Execution exec) {
  std::vector<double> acc(v.begin(), v.end());
  for (int i = kTaylorOrder; i >= 1; --i) {
    auto next = matvec<double>(b, acc, exec);
    for (std::size_t j = 0; j < next.size(); ++j) acc[j] = v[j] + next[j] / i;
  }
  return acc;
}

}  // namespace

std::vector<double> expm_apply(const DenseOperator<double>& op, std::span<const double> a, double t,
                               Execution exec) {
  const std::size_t n = op.size();
  if (a.size() != n) throw DomainError("expm_apply: vector length mismatch");
  if (!std::isfinite(t)) throw DomainError("expm_apply: non-finite t");
  if (t == 0.0) return {a.begin(), a.end()};

  const double norm = std::fabs(t) * norm1(op.matrix);
  int m = 0;
  while (std::ldexp(norm, -m) > 0.5) ++m;
  DenseMatrix<double> b(n, n);
  const double scale = std::ldexp(t, -m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b(i, j) = op.matrix(i, j) * scale;
  }

  // Few squarings: apply the scaled exponential 2^m times to the vector.
  if (m <= 6) {
    std::vector<double> v(a.begin(), a.end());
    for (long rep = 0; rep < (1L << m); ++rep) v = taylor_apply(b, v, exec);
    return v;
  }
  DenseMatrix<double> e(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n, 0.0);
    col[j] = 1.0;
    const auto ej = taylor_apply(b, col, exec);
    for (std::size_t i = 0; i < n; ++i) e(i, j) = ej[i];
  }
  for (int i = 0; i < m; ++i) e = matmul(e, e, exec);
  return matvec<double>(e, a, exec);
}

template <class T>
std::vector<T> brute_iterate(const DenseOperator<T>& op, std::span<const T> a, int k, Execution exec) {
  if (k < 0 || k > 50) throw DomainError("brute_iterate: k must be in [0, 50]");
  std::vector<T> v(a.begin(), a.end());
  for (int i = 0; i < k; ++i) v = matvec<T>(op.matrix, v, exec);
  return v;
}

template std::vector<double> brute_iterate(const DenseOperator<double>&, std::span<const double>, int, Execution);
template std::vector<Rational> brute_iterate(const DenseOperator<Rational>&, std::span<const Rational>, int,
                                             Execution);

std::vector<std::int64_t> dense_distances(const DenseOperator<double>& op, std::size_t source) {
  const std::size_t n = op.size();
  if (source >= n) throw DomainError("dense_distances: source out of range");
  std::vector<std::int64_t> dist(n, -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const auto row = op.matrix.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || row[j] == 0.0 || dist[j] >= 0) continue;
      dist[j] = dist[i] + 1;
      queue.push_back(j);
    }
  }
  return dist;
}

}  // namespace heat
