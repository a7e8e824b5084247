#include "csnet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace csnet {

Graph Graph::from_edges(vertex n, const std::vector<edge>& edges) {
    Graph g;
    g.n_ = n;
    g.m_ = edges.size();
    g.off_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("graph: vertex id out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop not allowed");
        ++g.off_[u + 1];
        ++g.off_[v + 1];
    }
    for (std::size_t i = 1; i < g.off_.size(); ++i) g.off_[i] += g.off_[i - 1];
    g.adj_.resize(2 * edges.size());
    std::vector<std::uint64_t> cursor(g.off_.begin(), g.off_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (vertex v = 0; v < n; ++v) {
        auto first = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.off_[v]);
        auto last = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.off_[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw std::invalid_argument("graph: duplicate edge");
    }
    return g;
}

bool Graph::has_edge(vertex u, vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint32_t Graph::max_degree() const {
    std::uint32_t best = 0;
    for (vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

void Graph::validate() const {
    if (off_.size() != static_cast<std::size_t>(n_) + 1 || off_[0] != 0 ||
        off_[n_] != adj_.size() || adj_.size() != 2 * m_)
        throw std::logic_error("graph: inconsistent storage");
    for (vertex v = 0; v < n_; ++v) {
        auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] == v) throw std::logic_error("graph: self-loop");
            if (nb[i] >= n_) throw std::logic_error("graph: neighbor out of range");
            if (i > 0 && nb[i] <= nb[i - 1])
                throw std::logic_error("graph: adjacency not strictly increasing");
            if (!has_edge(nb[i], v)) throw std::logic_error("graph: asymmetric adjacency");
        }
    }
}

}  // namespace csnet
