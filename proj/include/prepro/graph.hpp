#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prepro/matrix.hpp"
#include "prepro/rational.hpp"

namespace prepro {

// Self-loop convention for adjacency matrices: a loop counts 1 in graph mode
// and 2 in double-quiver mode. Everything downstream takes the mode
// explicitly.
enum class Mode { Graph, Double };

inline const char* mode_name(Mode m) { return m == Mode::Graph ? "graph" : "double"; }

struct Arrow {
  std::string id, tail, head;
};

// Finite multigraph with ordered vertices. Edges are unordered pairs as
// declared (self-loops allowed); an optional orientation turns the edge list
// into arrows.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges,
        std::optional<std::vector<Arrow>> arrows = std::nullopt);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
  const std::optional<std::vector<Arrow>>& arrows() const { return arrows_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  int vertex_index(const std::string& id) const;  // throws InputError if unknown

  bool connected() const;

  // Symmetric integer adjacency in the given mode.
  Mat<Rat> adjacency(Mode mode) const;

  // Graph with one vertex removed (with its incident edges); used by the
  // extending-vertex test.
  Graph without_vertex(int v) const;

  // Canonical serialization: vertices sorted, edges sorted lexicographically
  // (endpoints sorted within each pair), arrows sorted by id. Its SHA-256 is
  // the cache key prefix.
  std::string canonical_json() const;
  std::string cache_key() const;

  std::string to_json() const;
  static Graph from_json_text(const std::string& text);
  static Graph load(const std::string& path);

 private:
  std::vector<std::string> vertices_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::optional<std::vector<Arrow>> arrows_;
};

// Constructors for the graphs used throughout: chains A_n, cycles
// \hat{A}_{n-1}, tadpoles T_n, the 2-vertex double edge \hat{A}_1, and stars.
Graph make_chain(int n);
Graph make_cycle(int n);
Graph make_tadpole(int n);
Graph make_double_edge();

struct StarGraph {
  Graph graph;
  std::string center;
};

// Star with rays of the given lengths: 1 + sum(p_r - 1) vertices; ray r is a
// chain of p_r - 1 vertices attached to the center.
StarGraph star(const std::vector<int>& ray_lengths);

struct FoldResult {
  Graph tadpole;                                          // T_n
  std::vector<std::pair<std::string, std::string>> map;   // A_{2n} vertex -> T_n vertex
  Graph a2n;                                              // the unfolded A_{2n}
};

// Two-to-one folding A_{2n} -> T_n; the folded end carries the self-loop.
FoldResult fold_a2n(int n);

}  // namespace prepro
