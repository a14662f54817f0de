#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "contractlab/item_set.hpp"

namespace contractlab {

// Undirected simple graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertices);

  static Graph complete(std::size_t vertices);
  static Graph cycle(std::size_t vertices);
  // Erdos-Renyi G(n, p) drawn from the given engine.
  static Graph random(std::size_t vertices, double edge_probability, std::mt19937_64& rng);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const;

  // Rejects self loops and out-of-range endpoints; duplicate edges are a no-op.
  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  std::span<const Word> neighbours(std::size_t v) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  // True when every pair of vertices in the set is adjacent (the empty set and
  // singletons count as cliques).
  bool is_clique(std::span<const Word> vertices) const;
  bool is_clique(const ItemSet& vertices) const;

  // Disjoint union with a fresh complete graph on k vertices numbered n..n+k-1.
  Graph with_added_clique(std::size_t k) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> adjacency_;  // n_ rows of words_ words
};

}  // namespace contractlab
