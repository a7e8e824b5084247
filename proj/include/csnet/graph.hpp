#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace csnet {

// Simple undirected graph in compressed sorted-adjacency form; immutable
// after construction.
class Graph {
  public:
    using vertex = std::uint32_t;
    using edge = std::pair<vertex, vertex>;

    Graph() = default;

    // Edges may appear in any order but must be unique unordered pairs
    // without self-loops; throws std::invalid_argument otherwise.
    static Graph from_edges(vertex n, const std::vector<edge>& edges);

    vertex num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return m_; }
    std::uint32_t degree(vertex v) const {
        return static_cast<std::uint32_t>(off_[v + 1] - off_[v]);
    }
    std::span<const vertex> neighbors(vertex v) const {
        return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
    }
    bool has_edge(vertex u, vertex v) const;
    std::uint32_t max_degree() const;

    // Walks the structure and throws std::logic_error on any violation:
    // self-loop, duplicate neighbor, unsorted list, or asymmetry.
    void validate() const;

  private:
    vertex n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> off_ = {0};
    std::vector<vertex> adj_;
};

}  // namespace csnet
