#include "lexnav/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "lexnav/rng.hpp"
#include "lexnav/util.hpp"

namespace lexnav {

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::Lattice: return "LATTICE";
    case GraphKind::Lexical: return "LEXICAL";
    case GraphKind::PaMix: return "PA_MIX";
  }
  throw std::logic_error("bad graph kind");
}

GraphKind graph_kind_from_name(std::string_view name) {
  if (name == "LATTICE") return GraphKind::Lattice;
  if (name == "LEXICAL") return GraphKind::Lexical;
  if (name == "PA_MIX") return GraphKind::PaMix;
  throw std::runtime_error("unknown graph kind: " + std::string(name));
}

int64_t LatticeConfig::nodes() const {
  int64_t n = 1;
  for (int k = 0; k < dims; ++k) {
    n *= side;
    if (n > (int64_t{1} << 31)) throw std::invalid_argument("lattice too large");
  }
  return n;
}

void LatticeConfig::validate() const {
  if (dims < 1) throw std::invalid_argument("lattice dimensionality must be >= 1");
  if (side < 3) throw std::invalid_argument("lattice side must be >= 3");
  if (!(alpha >= 0)) throw std::invalid_argument("clustering exponent must be >= 0");
  if (q < 0) throw std::invalid_argument("long-range link count must be >= 0");
  nodes();
}

void PaMixConfig::validate() const {
  if (m < 1) throw std::invalid_argument("links per new node must be >= 1");
  if (nodes < m + 1) throw std::invalid_argument("node count must be >= m+1");
  if (!(gamma >= 0)) throw std::invalid_argument("lexical-bias exponent must be >= 0");
  if (vocab < 1) throw std::invalid_argument("vocabulary size must be >= 1");
}

int PaMixConfig::terms_per_page() const {
  return std::min<int64_t>(vocab, std::clamp<int64_t>((vocab + 2) / 3, 2, 32));
}

int NavGraph::lattice_distance(int32_t a, int32_t b) const {
  int dist = 0;
  for (int k = 0; k < dims; ++k) {
    const int d = std::abs(coord(a, k) - coord(b, k));
    dist += std::min(d, side - d);
  }
  return dist;
}

void NavGraph::check_node(int32_t v) const {
  if (v < 0 || static_cast<size_t>(v) >= out.size())
    throw std::invalid_argument("node id " + std::to_string(v) + " out of range");
}

namespace {

// Number of values of one torus coordinate delta at circular distance d.
int64_t per_dim_count(int side, int d) {
  if (d == 0) return 1;
  if (2 * d == side) return 1;  // even side: +d and -d coincide
  return d < (side + 1) / 2 ? 2 : 0;
}

int per_dim_max(int side) { return side / 2; }

// ways[k][t] = number of coordinate-delta combinations over dims k..D-1 with
// total circular distance t.
std::vector<std::vector<int64_t>> distance_ways(int dims, int side) {
  const int dmax = per_dim_max(side);
  std::vector<std::vector<int64_t>> ways(dims + 1);
  ways[dims] = {1};
  for (int k = dims - 1; k >= 0; --k) {
    const auto& next = ways[k + 1];
    ways[k].assign(next.size() + dmax, 0);
    for (size_t t = 0; t < ways[k].size(); ++t)
      for (int d = 0; d <= dmax && d <= static_cast<int>(t); ++d)
        if (t - d < next.size()) ways[k][t] += per_dim_count(side, d) * next[t - d];
  }
  return ways;
}

struct LatticeGeometry {
  int dims, side;
  int64_t n;
  std::vector<int64_t> strides;  // row-major, dim 0 most significant

  explicit LatticeGeometry(int dims_, int side_) : dims(dims_), side(side_) {
    strides.resize(dims);
    int64_t s = 1;
    for (int k = dims - 1; k >= 0; --k) {
      strides[k] = s;
      s *= side;
    }
    n = s;
  }
  int32_t node_at(const std::vector<int>& c) const {
    int64_t id = 0;
    for (int k = 0; k < dims; ++k) id += c[k] * strides[k];
    return static_cast<int32_t>(id);
  }
  void coords_of(int32_t node, std::vector<int>& c) const {
    for (int k = 0; k < dims; ++k) c[k] = static_cast<int>((node / strides[k]) % side);
  }
};

// Draws one long-range endpoint at torus distance r >= 1 from `origin`,
// uniform within the distance class.
class LongRangeSampler {
 public:
  LongRangeSampler(const LatticeGeometry& geom, double alpha)
      : geom_(geom), ways_(distance_ways(geom.dims, geom.side)) {
    const auto& sizes = ways_[0];
    cumulative_.assign(sizes.size(), 0.0);
    double total = 0;
    for (size_t r = 1; r < sizes.size(); ++r) {
      total += static_cast<double>(sizes[r]) * std::pow(static_cast<double>(r), -alpha);
      cumulative_[r] = total;
    }
    total_weight_ = total;
  }

  int32_t sample(const std::vector<int>& origin, Rng& rng, std::vector<int>& scratch) const {
    // Class by inverse CDF, then an exact integer draw over the class.
    const double x = rng.unit() * total_weight_;
    size_t r = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), x) -
               cumulative_.begin();
    r = std::min(r, cumulative_.size() - 1);

    int residual = static_cast<int>(r);
    const int dmax = per_dim_max(geom_.side);
    for (int k = 0; k < geom_.dims; ++k) {
      const auto& next = ways_[k + 1];
      int64_t t = static_cast<int64_t>(rng.below(static_cast<uint64_t>(ways_[k][residual])));
      int chosen = -1;
      for (int d = 0; d <= dmax && d <= residual; ++d) {
        if (residual - d >= static_cast<int>(next.size())) continue;
        const int64_t w = per_dim_count(geom_.side, d) * next[residual - d];
        if (t < w) {
          chosen = d;
          break;
        }
        t -= w;
      }
      int delta = 0;
      if (chosen > 0) {
        if (2 * chosen == geom_.side)
          delta = chosen;  // single representative on even sides
        else
          delta = rng.below(2) ? -chosen : chosen;
      }
      scratch[k] = (origin[k] + delta + geom_.side) % geom_.side;
      residual -= chosen;
    }
    return geom_.node_at(scratch);
  }

  const std::vector<int64_t>& class_sizes() const { return ways_[0]; }
  double class_weight_total() const { return total_weight_; }

 private:
  LatticeGeometry geom_;
  std::vector<std::vector<int64_t>> ways_;
  std::vector<double> cumulative_;
  double total_weight_ = 0;
};

}  // namespace

std::vector<int64_t> torus_distance_class_sizes(int dims, int side) {
  return distance_ways(dims, side)[0];
}

NavGraph generate_kleinberg_lattice(const LatticeConfig& config) {
  config.validate();
  const LatticeGeometry geom(config.dims, config.side);

  NavGraph g;
  g.kind = GraphKind::Lattice;
  g.dims = config.dims;
  g.side = config.side;
  g.alpha = config.alpha;
  g.q = config.q;
  g.seed = config.seed;
  g.out.resize(geom.n);
  g.in_degree.assign(geom.n, 0);
  g.coords.resize(geom.n * config.dims);

  std::vector<int> c(config.dims), nb(config.dims);
  for (int32_t u = 0; u < geom.n; ++u) {
    geom.coords_of(u, c);
    for (int k = 0; k < config.dims; ++k) g.coords[static_cast<size_t>(u) * config.dims + k] = c[k];
    auto& out = g.out[u];
    out.reserve(2 * config.dims + config.q);
    for (int k = 0; k < config.dims; ++k) {
      nb = c;
      nb[k] = (c[k] + 1) % config.side;
      out.push_back(geom.node_at(nb));
      nb[k] = (c[k] + config.side - 1) % config.side;
      out.push_back(geom.node_at(nb));
    }
  }

  if (config.q > 0) {
    Rng rng(config.seed);
    const LongRangeSampler sampler(geom, config.alpha);
    for (int32_t u = 0; u < geom.n; ++u) {
      geom.coords_of(u, c);
      for (int j = 0; j < config.q; ++j) g.out[u].push_back(sampler.sample(c, rng, nb));
    }
  }

  for (int32_t u = 0; u < geom.n; ++u)
    for (int32_t v : g.out[u]) ++g.in_degree[v];
  return g;
}

NavGraph generate_lexical_graph(const LatticeConfig& config, int vocab_block) {
  if (vocab_block < 2) throw std::invalid_argument("vocab_block must be >= 2");
  NavGraph g = generate_kleinberg_lattice(config);
  g.kind = GraphKind::Lexical;

  const int window = config.side / 2;
  g.vectors.resize(g.num_nodes());
  std::vector<std::pair<TermId, double>> entries;
  for (int32_t u = 0; u < g.num_nodes(); ++u) {
    entries.clear();
    for (int k = 0; k < config.dims; ++k) {
      const int base = g.coord(u, k);
      for (int j = 0; j < window; ++j) {
        const int64_t slot = static_cast<int64_t>(k) * config.side + (base + j) % config.side;
        for (int b = 0; b < vocab_block; ++b)
          entries.emplace_back(static_cast<TermId>(slot * vocab_block + b), 1.0);
      }
    }
    g.vectors[u] = TermVector::from_entries(entries);
  }
  return g;
}

NavGraph generate_pa_mixture(const PaMixConfig& config) {
  config.validate();
  Rng rng(config.seed);

  NavGraph g;
  g.kind = GraphKind::PaMix;
  g.alpha = config.gamma;
  g.q = config.m;
  g.seed = config.seed;
  g.out.resize(config.nodes);
  g.in_degree.assign(config.nodes, 0);
  g.vectors.resize(config.nodes);

  const int terms = config.terms_per_page();
  std::vector<std::pair<TermId, double>> entries;
  auto draw_vector = [&] {
    // Floyd's sampling of `terms` distinct ids from the vocabulary.
    entries.clear();
    std::unordered_set<int> seen;
    for (int v = config.vocab - terms; v < config.vocab; ++v) {
      int t = static_cast<int>(rng.below(static_cast<uint64_t>(v) + 1));
      if (!seen.insert(t).second) {
        seen.insert(v);
        t = v;
      }
      entries.emplace_back(static_cast<TermId>(t), 1.0);
    }
    return TermVector::from_entries(entries);
  };

  const int32_t clique = config.m + 1;
  for (int32_t u = 0; u < clique; ++u) g.vectors[u] = draw_vector();
  for (int32_t u = 0; u < clique; ++u)
    for (int32_t v = 0; v < clique; ++v)
      if (u != v) {
        g.out[u].push_back(v);
        ++g.in_degree[v];
      }

  constexpr double kInfiniteDistanceFactor = 1e-9;
  std::vector<double> weights;
  for (int32_t u = clique; u < config.nodes; ++u) {
    g.vectors[u] = draw_vector();

    weights.resize(u);
    double total = 0;
    for (int32_t v = 0; v < u; ++v) {
      double w = static_cast<double>(g.degree(v));
      if (config.gamma != 0) {
        const LexicalDistance r = lexical_distance(g.vectors[u], g.vectors[v]);
        w *= r.is_infinite() ? kInfiniteDistanceFactor
                             : std::pow(1.0 + r.value, -config.gamma);
      }
      weights[v] = w;
      total += w;
    }

    // m picks without replacement; weights frozen at the start of the round.
    for (int j = 0; j < config.m; ++j) {
      const double x = rng.unit() * total;
      double cum = 0;
      int32_t pick = -1;
      for (int32_t v = 0; v < u; ++v) {
        cum += weights[v];
        if (x < cum && weights[v] > 0) {
          pick = v;
          break;
        }
      }
      if (pick < 0) {  // numerical slack: fall back to the last eligible node
        for (int32_t v = u - 1; v >= 0; --v)
          if (weights[v] > 0) {
            pick = v;
            break;
          }
      }
      g.out[u].push_back(pick);
      ++g.in_degree[pick];
      total -= weights[pick];
      weights[pick] = 0;
    }
  }
  return g;
}

namespace {

std::string vector_to_field(const TermVector& v) {
  std::string out;
  bool first = true;
  for (const auto& [id, w] : v.entries()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(id);
    out += ':';
    out += format_double(w);
  }
  return out;
}

TermVector vector_from_field(std::string_view field) {
  std::vector<std::pair<TermId, double>> entries;
  if (!field.empty()) {
    for (auto part : split(field, ',')) {
      const size_t colon = part.find(':');
      if (colon == std::string_view::npos) throw std::runtime_error("bad term entry");
      entries.emplace_back(static_cast<TermId>(parse_int(part.substr(0, colon), "term id")),
                           parse_double(part.substr(colon + 1), "term weight"));
    }
  }
  return TermVector::from_entries(std::move(entries));
}

}  // namespace

std::string graph_to_text(const NavGraph& g) {
  std::string out;
  out += graph_kind_name(g.kind);
  out += ' ';
  out += std::to_string(g.dims);
  out += ' ';
  out += std::to_string(g.side);
  out += ' ';
  out += format_double(g.alpha);
  out += ' ';
  out += std::to_string(g.q);
  out += ' ';
  out += std::to_string(g.seed);
  out += ' ';
  out += std::to_string(g.num_nodes());
  out += '\n';

  for (int32_t u = 0; u < g.num_nodes(); ++u) {
    out += std::to_string(u);
    out += '\t';
    if (g.kind == GraphKind::Lattice) {
      for (int k = 0; k < g.dims; ++k) {
        if (k) out += ',';
        out += std::to_string(g.coord(u, k));
      }
    } else {
      out += vector_to_field(g.vectors[u]);
    }
    out += '\t';
    for (size_t i = 0; i < g.out[u].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.out[u][i]);
    }
    out += '\n';
  }
  return out;
}

NavGraph graph_from_text(std::string_view text, std::string_view context) {
  auto fail = [&](size_t line, const std::string& msg) -> std::runtime_error {
    return std::runtime_error(std::string(context) + ": line " + std::to_string(line + 1) + ": " +
                              msg);
  };

  auto lines = split(text, '\n');
  if (lines.empty() || lines[0].empty()) throw fail(0, "missing graph header");
  auto header = split(lines[0], ' ');
  if (header.size() != 7) throw fail(0, "expected 7 header fields");

  NavGraph g;
  g.kind = graph_kind_from_name(header[0]);
  g.dims = static_cast<int>(parse_int(header[1], "D"));
  g.side = static_cast<int>(parse_int(header[2], "side"));
  g.alpha = parse_double(header[3], "alpha");
  g.q = static_cast<int>(parse_int(header[4], "q"));
  g.seed = parse_uint(header[5], "seed");
  const int64_t n = parse_int(header[6], "N");
  if (n < 0) throw fail(0, "negative node count");

  g.out.resize(n);
  g.in_degree.assign(n, 0);
  if (g.kind != GraphKind::PaMix) {
    if (g.dims < 1 || g.side < 1) throw fail(0, "lattice header needs D >= 1 and side >= 1");
    g.coords.resize(n * g.dims);
  }
  if (g.kind != GraphKind::Lattice) g.vectors.resize(n);

  int64_t next_id = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (fields.size() != 3) throw fail(i, "expected 3 tab-separated fields");
    const int64_t id = parse_int(fields[0], "node id");
    if (id != next_id) throw fail(i, "node ids must be dense and in order");
    if (id >= n) throw fail(i, "more nodes than the header declares");
    ++next_id;

    if (g.kind == GraphKind::Lattice) {
      auto parts = split(fields[1], ',');
      if (static_cast<int>(parts.size()) != g.dims) throw fail(i, "coordinate arity mismatch");
      for (int k = 0; k < g.dims; ++k) {
        const int64_t ck = parse_int(parts[k], "coordinate");
        if (ck < 0 || ck >= g.side) throw fail(i, "coordinate out of range");
        g.coords[static_cast<size_t>(id) * g.dims + k] = static_cast<int32_t>(ck);
      }
    } else {
      try {
        g.vectors[id] = vector_from_field(fields[1]);
      } catch (const std::exception& e) {
        throw fail(i, e.what());
      }
    }

    if (!fields[2].empty()) {
      for (auto part : split(fields[2], ',')) {
        const int64_t v = parse_int(part, "outlink id");
        if (v < 0 || v >= n) throw fail(i, "outlink id out of range");
        if (v == id) throw fail(i, "self-loop");
        g.out[id].push_back(static_cast<int32_t>(v));
      }
    }
  }
  if (next_id != n) {
    throw std::runtime_error(std::string(context) + ": expected " + std::to_string(n) +
                             " node lines, got " + std::to_string(next_id));
  }

  if (g.kind == GraphKind::Lexical) {
    // Coordinates are implied by the row-major id layout.
    std::vector<int64_t> strides(g.dims);
    int64_t s = 1;
    for (int k = g.dims - 1; k >= 0; --k) {
      strides[k] = s;
      s *= g.side;
    }
    if (s != n) throw std::runtime_error(std::string(context) + ": side^D does not match N");
    for (int64_t u = 0; u < n; ++u)
      for (int k = 0; k < g.dims; ++k)
        g.coords[static_cast<size_t>(u) * g.dims + k] = static_cast<int32_t>((u / strides[k]) % g.side);
  }

  for (int64_t u = 0; u < n; ++u)
    for (int32_t v : g.out[u]) ++g.in_degree[v];
  return g;
}

}  // namespace lexnav
