#include "heat/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace heat {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("not an integer vertex label: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph base

std::span<const Vertex> Graph::vertices() const {
  throw DomainError("vertex enumeration requested on an infinite graph: " + describe());
}

std::string Graph::vertex_label(Vertex v) const { return std::to_string(id_of(v)); }

Vertex Graph::parse_vertex(std::string_view label) const {
  if (label == "root" || label == "p") return root();
  Vertex v = vertex(parse_int(label));
  require(v);
  return v;
}

void Graph::require(Vertex v) const {
  if (!contains(v)) {
    throw DomainError("unknown vertex " + std::to_string(id_of(v)) + " in " + describe());
  }
}

double Graph::weight(Vertex x, Vertex y) const {
  std::vector<Neighbor> nbrs;
  neighbors(x, nbrs);
  for (const auto& n : nbrs) {
    if (n.to == y) return n.weight;
  }
  return 0.0;
}

std::shared_ptr<const std::vector<BallEntry>> Graph::ball_entries(Vertex x, int radius) const {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  require(x);
  const auto key = std::make_pair(id_of(x), radius);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = ball_cache_.find(key); it != ball_cache_.end()) return it->second;
  }

  auto entries = std::make_shared<std::vector<BallEntry>>();
  std::unordered_set<std::int64_t> seen{id_of(x)};
  entries->push_back({x, 0});
  std::vector<Neighbor> nbrs;
  for (std::size_t head = 0; head < entries->size(); ++head) {
    const BallEntry cur = (*entries)[head];
    if (cur.distance == radius) continue;
    neighbors(cur.v, nbrs);
    for (const auto& n : nbrs) {
      if (seen.insert(id_of(n.to)).second) entries->push_back({n.to, cur.distance + 1});
    }
  }

  std::shared_ptr<const std::vector<BallEntry>> result = std::move(entries);
  // Large balls are not retained.
  if (result->size() <= (std::size_t{1} << 20)) {
    std::lock_guard lock(cache_mutex_);
    auto [it, inserted] = ball_cache_.emplace(key, result);
    return it->second;
  }
  return result;
}

double degree(const Graph& g, Vertex x) {
  std::vector<Neighbor> nbrs;
  g.neighbors(x, nbrs);
  double sum = 0.0;
  for (const auto& n : nbrs) sum += n.weight;
  return sum / g.measure(x);
}

template <class T>
T degree_as(const Graph& g, Vertex x) {
  std::vector<Neighbor> nbrs;
  g.neighbors(x, nbrs);
  T sum{0};
  for (const auto& n : nbrs) sum += from_double<T>(n.weight);
  return sum / from_double<T>(g.measure(x));
}

template double degree_as<double>(const Graph&, Vertex);
template Rational degree_as<Rational>(const Graph&, Vertex);

std::optional<std::int64_t> bfs_distance(const Graph& g, Vertex x, Vertex y, int limit) {
  if (!g.contains(x) || !g.contains(y)) {
    throw DomainError("distance query with unknown vertex in " + g.describe());
  }
  if (x == y) return 0;
  std::unordered_set<std::int64_t> seen{id_of(x)};
  std::vector<Vertex> frontier{x};
  std::vector<Vertex> next;
  std::vector<Neighbor> nbrs;
  for (int d = 1; d <= limit && !frontier.empty(); ++d) {
    next.clear();
    for (Vertex v : frontier) {
      g.neighbors(v, nbrs);
      for (const auto& n : nbrs) {
        if (n.to == y) return d;
        if (seen.insert(id_of(n.to)).second) next.push_back(n.to);
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

std::int64_t distance(const Graph& g, Vertex x, Vertex y) {
  if (!g.contains(x) || !g.contains(y)) {
    throw DomainError("distance query with unknown vertex in " + g.describe());
  }
  if (auto d = g.closed_form_distance(x, y)) return *d;
  if (!g.is_finite()) {
    throw DomainError("infinite graph without a closed-form distance: " + g.describe());
  }
  if (auto d = bfs_distance(g, x, y, std::numeric_limits<int>::max())) return *d;
  throw UnreachableError("vertices " + g.vertex_label(x) + " and " + g.vertex_label(y) +
                         " are in different components of " + g.describe());
}

std::vector<Vertex> ball(const Graph& g, Vertex x, int radius) {
  auto entries = g.ball_entries(x, radius);
  std::vector<Vertex> out;
  out.reserve(entries->size());
  for (const auto& e : *entries) out.push_back(e.v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> one_neighborhood(const Graph& g, std::span<const Vertex> k) {
  std::vector<Vertex> out(k.begin(), k.end());
  std::vector<Neighbor> nbrs;
  for (Vertex v : k) {
    g.neighbors(v, nbrs);
    for (const auto& n : nbrs) out.push_back(n.to);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<LevelRates>> radial_structure(const Graph& g, int max_level) {
  if (max_level < 0) throw DomainError("radial_structure: negative level");
  if (g.radial_rates(0)) {
    std::vector<LevelRates> rates;
    for (int l = 0; l <= max_level; ++l) {
      auto r = g.radial_rates(l);
      if (!r) return std::nullopt;
      rates.push_back(*r);
    }
    return rates;
  }

  auto entries = g.ball_entries(g.root(), max_level + 1);
  std::unordered_map<std::int64_t, int> level;
  for (const auto& e : *entries) level.emplace(id_of(e.v), e.distance);

  std::vector<std::optional<LevelRates>> rates(static_cast<std::size_t>(max_level) + 1);
  std::vector<Neighbor> nbrs;
  for (const auto& e : *entries) {
    if (e.distance > max_level) continue;
    g.neighbors(e.v, nbrs);
    LevelRates r;
    const double mu = g.measure(e.v);
    for (const auto& n : nbrs) {
      const int dn = level.at(id_of(n.to));
      const double rate = n.weight / mu;
      if (dn < e.distance) r.down += rate;
      else if (dn == e.distance) r.same += rate;
      else r.up += rate;
    }
    auto& slot = rates[static_cast<std::size_t>(e.distance)];
    if (!slot) slot = r;
    else if (!(*slot == r)) return std::nullopt;
  }
  std::vector<LevelRates> out;
  for (auto& r : rates) out.push_back(r.value_or(LevelRates{}));
  return out;
}

// ---------------------------------------------------------------------------
// Integer line

IntegerLine::IntegerLine(double omega, double mu) : omega_(omega), mu_(mu) {
  if (!(omega > 0) || !(mu > 0)) throw DomainError("Z family needs positive weights");
}

void IntegerLine::neighbors(Vertex v, std::vector<Neighbor>& out) const {
  const auto x = id_of(v);
  if (x == std::numeric_limits<std::int64_t>::min() || x == std::numeric_limits<std::int64_t>::max()) {
    throw DomainError("Z vertex out of representable range");
  }
  out.clear();
  out.push_back({vertex(x - 1), omega_});
  out.push_back({vertex(x + 1), omega_});
}

std::optional<std::int64_t> IntegerLine::closed_form_distance(Vertex x, Vertex y) const {
  const auto a = id_of(x);
  const auto b = id_of(y);
  return a > b ? a - b : b - a;
}

std::optional<LevelRates> IntegerLine::radial_rates(std::int64_t level) const {
  const double r = omega_ / mu_;
  if (level == 0) return LevelRates{0.0, 0.0, 2.0 * r};
  return LevelRates{r, 0.0, r};
}

std::string IntegerLine::describe() const {
  std::ostringstream os;
  os << "Z(omega=" << omega_ << ",mu=" << mu_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(int dim, double omega, double mu) : dim_(dim), omega_(omega), mu_(mu) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("lattice dimension must be in [1,4]");
  if (!(omega > 0) || !(mu > 0)) throw DomainError("lattice family needs positive weights");
}

Vertex Lattice::encode(std::span<const std::int64_t> coords) const {
  if (static_cast<int>(coords.size()) != dim_) throw DomainError("lattice coordinate arity mismatch");
  std::uint64_t bits = 0;
  for (int i = 0; i < dim_; ++i) {
    const auto c = coords[static_cast<std::size_t>(i)];
    if (c < -kCoordLimit || c > kCoordLimit) throw DomainError("lattice coordinate out of range");
    bits |= (static_cast<std::uint64_t>(c) & 0xFFFFu) << (16 * i);
  }
  return vertex(static_cast<std::int64_t>(bits));
}

std::vector<std::int64_t> Lattice::decode(Vertex v) const {
  const auto bits = static_cast<std::uint64_t>(id_of(v));
  std::vector<std::int64_t> coords(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    coords[static_cast<std::size_t>(i)] = static_cast<std::int16_t>((bits >> (16 * i)) & 0xFFFFu);
  }
  return coords;
}

bool Lattice::contains(Vertex v) const {
  const auto bits = static_cast<std::uint64_t>(id_of(v));
  if (dim_ < kMaxDim && (bits >> (16 * dim_)) != 0) return false;
  for (auto c : decode(v)) {
    if (c < -kCoordLimit) return false;
  }
  return true;
}

void Lattice::neighbors(Vertex v, std::vector<Neighbor>& out) const {
  require(v);
  auto coords = decode(v);
  out.clear();
  for (int i = 0; i < dim_; ++i) {
    auto& c = coords[static_cast<std::size_t>(i)];
    for (int step : {-1, 1}) {
      c += step;
      out.push_back({encode(coords), omega_});
      c -= step;
    }
  }
}

std::optional<std::int64_t> Lattice::closed_form_distance(Vertex x, Vertex y) const {
  const auto a = decode(x);
  const auto b = decode(y);
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return d;
}

std::optional<LevelRates> Lattice::radial_rates(std::int64_t level) const {
  if (dim_ != 1) return std::nullopt;
  const double r = omega_ / mu_;
  if (level == 0) return LevelRates{0.0, 0.0, 2.0 * r};
  return LevelRates{r, 0.0, r};
}

std::string Lattice::describe() const {
  std::ostringstream os;
  os << "Z^" << dim_ << "(omega=" << omega_ << ",mu=" << mu_ << ")";
  return os.str();
}

std::string Lattice::vertex_label(Vertex v) const {
  std::string s;
  for (auto c : decode(v)) {
    if (!s.empty()) s += ',';
    s += std::to_string(c);
  }
  return s;
}

Vertex Lattice::parse_vertex(std::string_view label) const {
  if (label == "root" || label == "p") return root();
  std::vector<std::int64_t> coords;
  for (auto part : split(label, ',')) coords.push_back(parse_int(part));
  return encode(coords);
}

// ---------------------------------------------------------------------------
// Regular tree

RegularTree::RegularTree(int arity, double omega, double mu) : k_(arity), omega_(omega), mu_(mu) {
  if (arity < 2) throw DomainError("tree arity must be at least 2");
  if (!(omega > 0) || !(mu > 0)) throw DomainError("tree family needs positive weights");
  offsets_.push_back(0);
  offsets_.push_back(1);
  std::int64_t size = k_;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  while (offsets_.back() <= kMax - size) {
    offsets_.push_back(offsets_.back() + size);
    if (size > kMax / (k_ - 1)) break;
    size *= (k_ - 1);
  }
}

std::int64_t RegularTree::level_offset(int level) const {
  if (level < 0 || static_cast<std::size_t>(level) >= offsets_.size()) {
    throw DomainError("tree depth beyond the 64-bit id range");
  }
  return offsets_[static_cast<std::size_t>(level)];
}

std::int64_t RegularTree::level_size(int level) const {
  if (static_cast<std::size_t>(level) + 1 >= offsets_.size()) {
    throw DomainError("tree depth beyond the 64-bit id range");
  }
  return offsets_[static_cast<std::size_t>(level) + 1] - offsets_[static_cast<std::size_t>(level)];
}

int RegularTree::depth(Vertex v) const {
  const auto id = id_of(v);
  if (id < 0) throw DomainError("negative tree id");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  const int level = static_cast<int>(it - offsets_.begin()) - 1;
  if (static_cast<std::size_t>(level) + 1 >= offsets_.size()) {
    throw DomainError("tree id beyond the 64-bit id range");
  }
  return level;
}

Vertex RegularTree::encode(std::span<const int> word) const {
  const int level = static_cast<int>(word.size());
  (void)level_size(level);
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int limit = i == 0 ? k_ : k_ - 1;
    if (word[i] < 0 || word[i] >= limit) throw DomainError("tree word letter out of range");
    idx = i == 0 ? word[i] : idx * (k_ - 1) + word[i];
  }
  return vertex(level_offset(level) + idx);
}

std::vector<int> RegularTree::decode(Vertex v) const {
  const int level = depth(v);
  std::int64_t idx = id_of(v) - level_offset(level);
  std::vector<int> word(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 1; --i) {
    word[static_cast<std::size_t>(i)] = static_cast<int>(idx % (k_ - 1));
    idx /= (k_ - 1);
  }
  if (level > 0) word[0] = static_cast<int>(idx);
  return word;
}

void RegularTree::neighbors(Vertex v, std::vector<Neighbor>& out) const {
  const int level = depth(v);
  const std::int64_t idx = id_of(v) - level_offset(level);
  out.clear();
  if (level == 0) {
    const auto base = level_offset(1);
    for (int c = 0; c < k_; ++c) out.push_back({vertex(base + c), omega_});
    return;
  }
  const auto parent = level == 1 ? std::int64_t{0} : level_offset(level - 1) + idx / (k_ - 1);
  out.push_back({vertex(parent), omega_});
  (void)level_size(level + 1);
  const auto base = level_offset(level + 1) + idx * (k_ - 1);
  for (int c = 0; c < k_ - 1; ++c) out.push_back({vertex(base + c), omega_});
}

std::optional<std::int64_t> RegularTree::closed_form_distance(Vertex x, Vertex y) const {
  const auto a = decode(x);
  const auto b = decode(y);
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  return static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
}

std::optional<LevelRates> RegularTree::radial_rates(std::int64_t level) const {
  const double r = omega_ / mu_;
  if (level == 0) return LevelRates{0.0, 0.0, k_ * r};
  return LevelRates{r, 0.0, (k_ - 1) * r};
}

std::string RegularTree::describe() const {
  std::ostringstream os;
  os << "T_" << k_ << "(omega=" << omega_ << ",mu=" << mu_ << ")";
  return os.str();
}

std::string RegularTree::vertex_label(Vertex v) const {
  const auto word = decode(v);
  if (word.empty()) return "root";
  std::string s;
  for (int c : word) {
    if (!s.empty()) s += '.';
    s += std::to_string(c);
  }
  return s;
}

Vertex RegularTree::parse_vertex(std::string_view label) const {
  if (label == "root" || label == "p" || label.empty()) return root();
  std::vector<int> word;
  for (auto part : split(label, '.')) word.push_back(static_cast<int>(parse_int(part)));
  return encode(word);
}

// ---------------------------------------------------------------------------
// Finite graphs

FiniteGraph::FiniteGraph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges,
                         std::int64_t root, std::string name)
    : edges_(std::move(edges)), name_(std::move(name)) {
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& rec = vertices[i];
    if (!(rec.mu > 0) || !std::isfinite(rec.mu)) {
      throw SchemaError("vertex " + std::to_string(rec.id) + ": mu must be positive and finite");
    }
    if (!index_.emplace(rec.id, i).second) {
      throw SchemaError("vertex " + std::to_string(rec.id) + ": duplicate id");
    }
    ids_.push_back(vertex(rec.id));
    mu_.push_back(rec.mu);
  }
  if (!index_.contains(root)) throw SchemaError("root " + std::to_string(root) + " is not a declared vertex");
  root_ = vertex(root);

  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  std::vector<std::vector<Neighbor>> adj(ids_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& rec = edges_[e];
    const std::string where = "edge #" + std::to_string(e) + " {u:" + std::to_string(rec.u) +
                              ",v:" + std::to_string(rec.v) + "}";
    if (rec.u == rec.v) throw SchemaError(where + ": self-loop");
    if (!index_.contains(rec.u) || !index_.contains(rec.v)) throw SchemaError(where + ": dangling vertex id");
    if (!(rec.w > 0) || !std::isfinite(rec.w)) throw SchemaError(where + ": weight must be positive and finite");
    const auto key = std::minmax(rec.u, rec.v);
    if (auto it = seen.find(key); it != seen.end()) {
      const auto& prev = edges_[it->second];
      if (prev.w != rec.w) {
        throw SchemaError(where + ": asymmetric weights (" + std::to_string(prev.w) + " vs " +
                          std::to_string(rec.w) + ")");
      }
      throw SchemaError(where + ": duplicate edge");
    }
    seen.emplace(key, e);
    adj[index_.at(rec.u)].push_back({vertex(rec.v), rec.w});
    adj[index_.at(rec.v)].push_back({vertex(rec.u), rec.w});
  }

  offsets_.push_back(0);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    auto& list = adj[i];
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    double sum = 0.0;
    for (const auto& n : list) sum += n.weight;
    degree_sup_ = std::max(degree_sup_, sum / mu_[i]);
    max_neighbors_ = std::max(max_neighbors_, list.size());
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
    offsets_.push_back(adjacency_.size());
  }
}

bool FiniteGraph::contains(Vertex v) const { return index_.contains(id_of(v)); }

std::size_t FiniteGraph::index_of(Vertex v) const {
  auto it = index_.find(id_of(v));
  if (it == index_.end()) {
    throw DomainError("unknown vertex " + std::to_string(id_of(v)) + " in " + name_);
  }
  return it->second;
}

std::span<const Neighbor> FiniteGraph::neighbor_span(Vertex v) const {
  const auto i = index_of(v);
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

void FiniteGraph::neighbors(Vertex v, std::vector<Neighbor>& out) const {
  auto span = neighbor_span(v);
  out.assign(span.begin(), span.end());
}

double FiniteGraph::measure(Vertex v) const { return mu_[index_of(v)]; }

std::shared_ptr<const FiniteGraph> load_graph(std::string_view json_text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("graph document is not valid JSON: ") + e.what());
  }
  auto field = [](const nlohmann::json& obj, const char* key, const std::string& where) -> const nlohmann::json& {
    if (!obj.is_object() || !obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
    return obj.at(key);
  };
  auto as_int = [](const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer id");
    return j.get<std::int64_t>();
  };
  auto as_real = [](const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    return j.get<double>();
  };

  const auto root = as_int(field(doc, "root", "document"), "root");
  const auto& vs = field(doc, "vertices", "document");
  const auto& es = field(doc, "edges", "document");
  if (!vs.is_array() || !es.is_array()) throw SchemaError("vertices and edges must be arrays");

  std::vector<VertexRecord> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertex #" + std::to_string(i);
    vertices.push_back({as_int(field(vs[i], "id", where), where), as_real(field(vs[i], "mu", where), where)});
  }
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edge #" + std::to_string(i);
    edges.push_back({as_int(field(es[i], "u", where), where), as_int(field(es[i], "v", where), where),
                     as_real(field(es[i], "w", where), where)});
  }
  return std::make_shared<const FiniteGraph>(std::move(vertices), std::move(edges), root, std::move(name));
}

std::shared_ptr<const FiniteGraph> load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto name = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return load_graph(buf.str(), name);
}

std::string graph_to_json(const FiniteGraph& g) {
  nlohmann::ordered_json doc;
  doc["root"] = id_of(g.root());
  doc["vertices"] = nlohmann::ordered_json::array();
  for (Vertex v : g.vertices()) doc["vertices"].push_back({{"id", id_of(v)}, {"mu", g.measure(v)}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}});
  return doc.dump(1);
}

GraphFamily parse_family(std::string_view text) {
  GraphFamily f;
  if (text == "z" || text == "Z") {
    f.kind = GraphFamily::Kind::integer_line;
    return f;
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto head = text.substr(0, colon);
    auto param = static_cast<int>(parse_int(text.substr(colon + 1)));
    if (head == "lattice") {
      f.kind = GraphFamily::Kind::lattice;
      f.param = param;
      return f;
    }
    if (head == "tree") {
      f.kind = GraphFamily::Kind::tree;
      f.param = param;
      return f;
    }
  }
  throw DomainError("unknown graph family '" + std::string(text) + "' (expected z, lattice:d, tree:k)");
}

std::shared_ptr<const Graph> make_graph(const GraphFamily& family) {
  switch (family.kind) {
    case GraphFamily::Kind::integer_line:
      return std::make_shared<const IntegerLine>(family.omega, family.mu);
    case GraphFamily::Kind::lattice:
      return std::make_shared<const Lattice>(family.param, family.omega, family.mu);
    case GraphFamily::Kind::tree:
      return std::make_shared<const RegularTree>(family.param, family.omega, family.mu);
    case GraphFamily::Kind::finite_file:
      return load_graph_file(family.path);
  }
  throw DomainError("unhandled graph family");
}

}  // namespace heat
