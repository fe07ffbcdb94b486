#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexnav/textkit.hpp"

namespace lexnav {

enum class GraphKind { Lattice, Lexical, PaMix };

std::string_view graph_kind_name(GraphKind kind);
GraphKind graph_kind_from_name(std::string_view name);

struct LatticeConfig {
  int dims = 2;       // D
  int side = 0;       // nodes per dimension; N = side^D
  double alpha = 0;   // clustering exponent of the long-range link law
  int q = 1;          // long-range out-links per node
  uint64_t seed = 0;

  int64_t nodes() const;
  void validate() const;
};

struct PaMixConfig {
  int64_t nodes = 0;
  int m = 1;          // out-links per new node
  double gamma = 0;   // lexical-bias exponent of the attachment kernel
  int vocab = 0;      // vocabulary size for the random page vectors
  uint64_t seed = 0;

  void validate() const;
  // Distinct terms drawn per page, derived from the vocabulary size.
  int terms_per_page() const;
};

// Directed graph with per-node positions: lattice coordinates, term vectors,
// or both (lexical lattices keep coordinates for oracle checks only).
// Adjacency lists may contain parallel edges; lattice nodes always have
// exactly 2D local + q long-range out-links.
struct NavGraph {
  GraphKind kind = GraphKind::Lattice;
  int dims = 0;
  int side = 0;
  double alpha = 0;   // gamma for PaMix graphs
  int q = 0;          // m for PaMix graphs
  uint64_t seed = 0;

  std::vector<std::vector<int32_t>> out;
  std::vector<int32_t> in_degree;
  std::vector<int32_t> coords;      // flat N*dims, row-major; empty for PaMix
  std::vector<TermVector> vectors;  // empty for plain lattices

  int64_t num_nodes() const { return static_cast<int64_t>(out.size()); }
  int degree(int32_t v) const {
    return static_cast<int>(out[v].size()) + in_degree[v];
  }
  int coord(int32_t node, int dim) const { return coords[static_cast<size_t>(node) * dims + dim]; }
  // Torus Manhattan distance; only meaningful when coordinates exist.
  int lattice_distance(int32_t a, int32_t b) const;

  void check_node(int32_t v) const;
};

// Torus lattice: 2D unit-step out-links per node plus q long-range out-links,
// each endpoint drawn with probability proportional to r^(-alpha) over all
// other nodes (r = torus Manhattan distance), via inverse CDF over distance
// classes. Requires side >= 3.
NavGraph generate_kleinberg_lattice(const LatticeConfig& config);

// Same linkage as the Kleinberg lattice; in addition every node gets a term
// vector built from per-dimension circular windows of width floor(side/2),
// one block of vocab_block terms per (dimension, position) slot. Cosine
// similarity then decreases strictly with torus Manhattan distance, reaching
// zero (infinite lexical distance) only for antipodal nodes, so content
// distance can stand in for lattice distance during navigation.
NavGraph generate_lexical_graph(const LatticeConfig& config, int vocab_block);

// Growth model: an (m+1)-clique seed, then each new node draws a sparse
// random vector and attaches m out-links without replacement, picking
// existing nodes with probability proportional to
//   degree(v) * (1 + r_lex(u,v))^(-gamma)
// where infinite lexical distance contributes a factor of 1e-9.
NavGraph generate_pa_mixture(const PaMixConfig& config);

// Text format: header `kind D side alpha q seed N`, then one line per node:
// `id<TAB>coords-or-terms<TAB>outlinks`. Lossless round-trip.
std::string graph_to_text(const NavGraph& graph);
NavGraph graph_from_text(std::string_view text, std::string_view context);

// Exact distance-class sizes of the D-dimensional torus: result[r] is the
// number of nodes at torus Manhattan distance r from any fixed node.
std::vector<int64_t> torus_distance_class_sizes(int dims, int side);

}  // namespace lexnav
