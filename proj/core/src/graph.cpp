#include "contractlab/graph.hpp"

#include "contractlab/errors.hpp"

namespace contractlab {

Graph::Graph(std::size_t vertices)
    : n_(vertices), words_(words_for(vertices)), adjacency_(vertices * words_for(vertices), 0) {}

Graph Graph::complete(std::size_t vertices) {
  Graph g(vertices);
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = u + 1; v < vertices; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(std::size_t vertices) {
  if (vertices < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  Graph g(vertices);
  for (std::size_t v = 0; v < vertices; ++v) g.add_edge(v, (v + 1) % vertices);
  return g;
}

Graph Graph::random(std::size_t vertices, double edge_probability, std::mt19937_64& rng) {
  Graph g(vertices);
  std::bernoulli_distribution coin(edge_probability);
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = u + 1; v < vertices; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

std::size_t Graph::edge_count() const { return popcount(adjacency_) / 2; }

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint outside the vertex range");
  if (u == v) throw InvalidArgument("self loops are not allowed in a simple graph");
  adjacency_[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits);
  adjacency_[v * words_ + u / kWordBits] |= Word{1} << (u % kWordBits);
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw InvalidArgument("vertex outside the vertex range");
  return test_bit(neighbours(u), v);
}

std::span<const Word> Graph::neighbours(std::size_t v) const {
  return std::span<const Word>(adjacency_).subspan(v * words_, words_);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (test_bit(neighbours(u), v)) out.emplace_back(u, v);
  return out;
}

bool Graph::is_clique(std::span<const Word> vertices) const {
  for (std::size_t w = 0; w < vertices.size(); ++w) {
    Word bits = vertices[w];
    while (bits != 0) {
      const std::size_t v = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      auto row = neighbours(v);
      // every other member of the set must be a neighbour of v
      for (std::size_t x = 0; x < vertices.size(); ++x) {
        Word others = vertices[x];
        if (x == w) others &= ~(Word{1} << (v % kWordBits));
        if ((others & ~row[x]) != 0) return false;
      }
    }
  }
  return true;
}

bool Graph::is_clique(const ItemSet& vertices) const {
  if (vertices.ground_size() != n_) throw DimensionError("vertex set does not match graph size");
  return is_clique(vertices.words());
}

Graph Graph::with_added_clique(std::size_t k) const {
  Graph g(n_ + k);
  for (auto [u, v] : edges()) g.add_edge(u, v);
  for (std::size_t u = n_; u < n_ + k; ++u)
    for (std::size_t v = u + 1; v < n_ + k; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace contractlab
