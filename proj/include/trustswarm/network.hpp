#pragma once
// Undirected simple graph over agent indices, G(n,p) generation, and the red
// agent's edge rewiring.

#include <cstddef>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trustswarm {

using VertexId = std::size_t;

class AgentGraph {
  public:
    AgentGraph() = default;
    explicit AgentGraph(std::size_t n) : adjacency_(n) {}

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_edge(VertexId a, VertexId b) const {
        check_vertex(a);
        check_vertex(b);
        return adjacency_[a].count(b) != 0;
    }

    /// Inserts {a,b}. Returns false when the edge already exists.
    bool add_edge(VertexId a, VertexId b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) {
            throw std::invalid_argument("self-loops are not allowed");
        }
        if (!adjacency_[a].insert(b).second) {
            return false;
        }
        adjacency_[b].insert(a);
        ++edge_count_;
        return true;
    }

    bool remove_edge(VertexId a, VertexId b) {
        check_vertex(a);
        check_vertex(b);
        if (adjacency_[a].erase(b) == 0) {
            return false;
        }
        adjacency_[b].erase(a);
        --edge_count_;
        return true;
    }

    const std::set<VertexId>& neighbors(VertexId i) const {
        check_vertex(i);
        return adjacency_[i];
    }

    std::size_t degree(VertexId i) const { return neighbors(i).size(); }

    /// Edges as (low, high) pairs in ascending order.
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count_);
        for (VertexId a = 0; a < adjacency_.size(); ++a) {
            for (VertexId b : adjacency_[a]) {
                if (a < b) {
                    out.emplace_back(a, b);
                }
            }
        }
        return out;
    }

    bool operator==(const AgentGraph&) const = default;

  private:
    void check_vertex(VertexId i) const {
        if (i >= adjacency_.size()) {
            throw std::out_of_range("vertex " + std::to_string(i) + " outside graph of " +
                                    std::to_string(adjacency_.size()) + " vertices");
        }
    }

    std::vector<std::set<VertexId>> adjacency_;
    std::size_t edge_count_{0};
};

/// Erdős–Rényi G(n,p): every unordered pair is an edge independently with probability p.
template <class Rng>
AgentGraph generate_random_graph(std::size_t n, double p, Rng& rng) {
    if (n < 2) {
        throw std::invalid_argument("random graph needs at least 2 vertices");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    AgentGraph g(n);
    std::bernoulli_distribution coin(p);
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            if (coin(rng)) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

namespace detail {
template <class Rng>
VertexId pick_uniform(const std::vector<VertexId>& candidates, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)];
}
}  // namespace detail

/**
 * One shaping move by the red agent, applied in place.
 *
 *   1. pick a blue agent A_i linked to red;
 *   2. pick a blue agent A_j linked to A_i;
 *   3. cut A_i -- A_j;
 *   4. link red -- A_j.
 *
 * "Blue" excludes both red and the leader, so the leader's links are never
 * touched. If red -- A_j already exists, step 4 redraws A_j among the blue
 * agents not yet linked to red. Any step without a candidate leaves the graph
 * unchanged. Returns true when an edge moved. The edge count is conserved.
 */
template <class Rng>
bool rewire_red_in_place(AgentGraph& graph, VertexId red, VertexId leader, Rng& rng) {
    if (red == leader) {
        throw std::invalid_argument("red and leader must be distinct vertices");
    }
    auto is_blue = [&](VertexId v) { return v != red && v != leader; };

    std::vector<VertexId> first;
    for (VertexId v : graph.neighbors(red)) {
        if (is_blue(v)) {
            first.push_back(v);
        }
    }
    if (first.empty()) {
        return false;
    }
    const VertexId a_i = detail::pick_uniform(first, rng);

    std::vector<VertexId> second;
    for (VertexId v : graph.neighbors(a_i)) {
        if (is_blue(v)) {
            second.push_back(v);
        }
    }
    if (second.empty()) {
        return false;
    }
    const VertexId a_j = detail::pick_uniform(second, rng);

    VertexId target = a_j;
    if (graph.has_edge(red, a_j)) {
        std::vector<VertexId> unlinked;
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            if (is_blue(v) && !graph.has_edge(red, v)) {
                unlinked.push_back(v);
            }
        }
        if (unlinked.empty()) {
            return false;
        }
        target = detail::pick_uniform(unlinked, rng);
    }
    graph.remove_edge(a_i, a_j);
    graph.add_edge(red, target);
    return true;
}

template <class Rng>
AgentGraph rewire_red(AgentGraph graph, VertexId red, VertexId leader, Rng& rng) {
    rewire_red_in_place(graph, red, leader, rng);
    return graph;
}

/// Debug dump: one "i j" pair per line, i < j, ascending.
inline void write_edge_list(std::ostream& os, const AgentGraph& g) {
    for (const auto& [a, b] : g.edges()) {
        os << a << ' ' << b << '\n';
    }
}

}  // namespace trustswarm
