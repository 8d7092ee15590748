#pragma once

// Locally finite weighted graphs G = (V, E, mu, omega) with a distinguished
// root p. Finite graphs are stored in CSR form; the infinite families (the
// integer line, the lattices Z^d and k-regular trees) are generated lazily
// from a neighbor oracle over a canonical integer vertex encoding.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heat/errors.hpp"
#include "heat/scalar.hpp"

namespace heat {

/// Opaque vertex id. Its meaning is fixed by the owning graph: the integer
/// itself on Z, packed coordinates on Z^d, the breadth-first index of the
/// path word on trees, the declared id on finite graphs.
enum class Vertex : std::int64_t {};

constexpr Vertex vertex(std::int64_t id) noexcept { return Vertex{id}; }
constexpr std::int64_t id_of(Vertex v) noexcept { return static_cast<std::int64_t>(v); }

struct Neighbor {
  Vertex to;
  double weight;  // omega(x, to) > 0
};

/// Weighted transition rates sum(omega/mu) from a vertex at distance l from
/// the root into the spheres l-1, l and l+1. A graph whose distance partition
/// around the root is equitable has one such triple per level.
struct LevelRates {
  double down = 0.0;
  double same = 0.0;
  double up = 0.0;
  friend bool operator==(const LevelRates&, const LevelRates&) = default;
};

struct BallEntry {
  Vertex v;
  int distance;
};

class Graph {
 public:
  virtual ~Graph() = default;

  virtual Vertex root() const = 0;
  virtual bool contains(Vertex v) const = 0;
  /// Clears `out` and writes the neighbors of v. Throws DomainError for
  /// vertices outside the graph.
  virtual void neighbors(Vertex v, std::vector<Neighbor>& out) const = 0;
  virtual double measure(Vertex v) const = 0;
  virtual bool is_finite() const = 0;
  /// All vertices in increasing id order; finite graphs only.
  virtual std::span<const Vertex> vertices() const;
  /// Closed-form combinatorial distance where the family has one.
  virtual std::optional<std::int64_t> closed_form_distance(Vertex, Vertex) const {
    return std::nullopt;
  }
  /// sup_x Deg(x), when known without enumeration.
  virtual std::optional<double> degree_sup() const { return std::nullopt; }
  /// Rates of the distance partition around the root at `level`, when the
  /// family knows the partition to be equitable.
  virtual std::optional<LevelRates> radial_rates(std::int64_t) const { return std::nullopt; }
  /// Largest neighbor count of any vertex, when known.
  virtual std::optional<std::size_t> max_neighbors() const { return std::nullopt; }

  virtual std::string describe() const = 0;
  virtual std::string vertex_label(Vertex v) const;
  virtual Vertex parse_vertex(std::string_view label) const;

  /// omega(x, y); 0 when x and y are not adjacent.
  double weight(Vertex x, Vertex y) const;

  /// Memoized BFS ball around x in breadth-first order, distances attached.
  /// Safe to call concurrently; the cache behaves as if absent.
  std::shared_ptr<const std::vector<BallEntry>> ball_entries(Vertex x, int radius) const;

 protected:
  void require(Vertex v) const;

 private:
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::int64_t, int>, std::shared_ptr<const std::vector<BallEntry>>>
      ball_cache_;
};

/// Deg(x) = sum_y omega(x,y)/mu(x).
double degree(const Graph& g, Vertex x);

/// Deg(x) in the requested arithmetic (exact conversion of the stored weights).
template <class T>
T degree_as(const Graph& g, Vertex x);

/// Combinatorial distance. Closed form on lazy families, BFS on finite
/// graphs. Throws UnreachableError for disconnected pairs.
std::int64_t distance(const Graph& g, Vertex x, Vertex y);

/// Plain BFS distance, used as the cross-check for closed forms. Returns
/// nullopt when y is not found within `limit` hops.
std::optional<std::int64_t> bfs_distance(const Graph& g, Vertex x, Vertex y, int limit);

/// B_R(x) as a sorted vertex list.
std::vector<Vertex> ball(const Graph& g, Vertex x, int radius);

/// (K)_1 = K together with all neighbors of K, sorted and unique.
std::vector<Vertex> one_neighborhood(const Graph& g, std::span<const Vertex> k);

/// Per-level rates for levels 0..max_level. Uses the family's declaration
/// when present; otherwise audits every vertex of B_{max_level}(root) and
/// returns nullopt unless the partition is equitable there.
std::optional<std::vector<LevelRates>> radial_structure(const Graph& g, int max_level);

// ---------------------------------------------------------------------------
// Families

class IntegerLine final : public Graph {
 public:
  explicit IntegerLine(double omega = 1.0, double mu = 1.0);
  Vertex root() const override { return vertex(0); }
  bool contains(Vertex) const override { return true; }
  void neighbors(Vertex v, std::vector<Neighbor>& out) const override;
  double measure(Vertex) const override { return mu_; }
  bool is_finite() const override { return false; }
  std::optional<std::int64_t> closed_form_distance(Vertex x, Vertex y) const override;
  std::optional<double> degree_sup() const override { return 2.0 * omega_ / mu_; }
  std::optional<LevelRates> radial_rates(std::int64_t level) const override;
  std::optional<std::size_t> max_neighbors() const override { return 2; }
  std::string describe() const override;

 private:
  double omega_;
  double mu_;
};

/// Z^d for 1 <= d <= 4, coordinates packed into 16-bit signed fields.
class Lattice final : public Graph {
 public:
  static constexpr int kMaxDim = 4;
  static constexpr std::int64_t kCoordLimit = 32767;

  explicit Lattice(int dim, double omega = 1.0, double mu = 1.0);
  int dim() const noexcept { return dim_; }

  Vertex encode(std::span<const std::int64_t> coords) const;
  std::vector<std::int64_t> decode(Vertex v) const;

  Vertex root() const override { return vertex(0); }
  bool contains(Vertex v) const override;
  void neighbors(Vertex v, std::vector<Neighbor>& out) const override;
  double measure(Vertex) const override { return mu_; }
  bool is_finite() const override { return false; }
  std::optional<std::int64_t> closed_form_distance(Vertex x, Vertex y) const override;
  std::optional<double> degree_sup() const override { return 2.0 * dim_ * omega_ / mu_; }
  std::optional<LevelRates> radial_rates(std::int64_t level) const override;
  std::optional<std::size_t> max_neighbors() const override { return 2 * dim_; }
  std::string describe() const override;
  std::string vertex_label(Vertex v) const override;
  Vertex parse_vertex(std::string_view label) const override;

 private:
  int dim_;
  double omega_;
  double mu_;
};

/// Unrooted k-regular tree. A vertex is the reduced path word from the root:
/// first letter in [0,k), later letters in [0,k-1) (the parent is excluded).
/// The id is the breadth-first index of that word.
class RegularTree final : public Graph {
 public:
  explicit RegularTree(int arity, double omega = 1.0, double mu = 1.0);
  int arity() const noexcept { return k_; }

  Vertex encode(std::span<const int> word) const;
  std::vector<int> decode(Vertex v) const;
  int depth(Vertex v) const;

  Vertex root() const override { return vertex(0); }
  bool contains(Vertex v) const override { return id_of(v) >= 0; }
  void neighbors(Vertex v, std::vector<Neighbor>& out) const override;
  double measure(Vertex) const override { return mu_; }
  bool is_finite() const override { return false; }
  std::optional<std::int64_t> closed_form_distance(Vertex x, Vertex y) const override;
  std::optional<double> degree_sup() const override { return k_ * omega_ / mu_; }
  std::optional<LevelRates> radial_rates(std::int64_t level) const override;
  std::optional<std::size_t> max_neighbors() const override { return static_cast<std::size_t>(k_); }
  std::string describe() const override;
  std::string vertex_label(Vertex v) const override;
  Vertex parse_vertex(std::string_view label) const override;

 private:
  std::int64_t level_offset(int level) const;
  std::int64_t level_size(int level) const;

  int k_;
  double omega_;
  double mu_;
  std::vector<std::int64_t> offsets_;  // offsets_[l] = first id at depth l
};

struct EdgeRecord {
  std::int64_t u;
  std::int64_t v;
  double w;
};

struct VertexRecord {
  std::int64_t id;
  double mu;
};

class FiniteGraph final : public Graph {
 public:
  /// Validates every graph invariant; throws SchemaError naming the record.
  FiniteGraph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges,
              std::int64_t root, std::string name = "finite");

  Vertex root() const override { return root_; }
  bool contains(Vertex v) const override;
  void neighbors(Vertex v, std::vector<Neighbor>& out) const override;
  double measure(Vertex v) const override;
  bool is_finite() const override { return true; }
  std::span<const Vertex> vertices() const override { return ids_; }
  std::optional<double> degree_sup() const override { return degree_sup_; }
  std::optional<std::size_t> max_neighbors() const override { return max_neighbors_; }
  std::string describe() const override { return name_; }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t index_of(Vertex v) const;
  std::span<const Neighbor> neighbor_span(Vertex v) const;
  const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }

 private:
  std::vector<Vertex> ids_;  // sorted
  std::vector<double> mu_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::unordered_map<std::int64_t, std::size_t> index_;
  std::vector<EdgeRecord> edges_;
  Vertex root_{};
  double degree_sup_ = 0.0;
  std::size_t max_neighbors_ = 0;
  std::string name_;
};

/// Parses the graph JSON document
/// {"root": id, "vertices": [{"id", "mu"}...], "edges": [{"u", "v", "w"}...]}.
std::shared_ptr<const FiniteGraph> load_graph(std::string_view json_text, std::string name = "finite");
std::shared_ptr<const FiniteGraph> load_graph_file(const std::string& path);
std::string graph_to_json(const FiniteGraph& g);

/// Family descriptor used by the CLI and the fixtures.
struct GraphFamily {
  enum class Kind { integer_line, lattice, tree, finite_file };
  Kind kind = Kind::integer_line;
  int param = 0;  // d for lattices, k for trees
  double omega = 1.0;
  double mu = 1.0;
  std::string path;
};

/// "z", "lattice:d", "tree:k".
GraphFamily parse_family(std::string_view text);
std::shared_ptr<const Graph> make_graph(const GraphFamily& family);

}  // namespace heat
