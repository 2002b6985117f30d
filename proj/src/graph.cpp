#include "keygraph/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace keygraph {

Graph::Graph(int node_count) {
    if (node_count < 0) throw std::invalid_argument("negative node count");
    adj_.resize(static_cast<std::size_t>(node_count));
}

Graph Graph::from_edges(int node_count, std::span<const Edge> edges) {
    Graph g(node_count);
    g.edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        g.edges_.push_back(e);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end()) {
        throw std::invalid_argument("repeated edge");
    }
    for (const Edge& e : g.edges_) {
        g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    return g;
}

Graph Graph::complete(int node_count) {
    std::vector<Edge> edges;
    for (int u = 0; u < node_count; ++u)
        for (int v = u + 1; v < node_count; ++v) edges.push_back({u, v});
    return from_edges(node_count, edges);
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

Graph Graph::without_nodes(std::span<const int> removed) const {
    std::vector<int> relabel(adj_.size(), 0);
    for (int v : removed) {
        if (v < 0 || v >= node_count()) throw std::invalid_argument("removed node out of range");
        relabel[static_cast<std::size_t>(v)] = -1;
    }
    int next = 0;
    for (auto& id : relabel) id = id < 0 ? -1 : next++;
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
        const int a = relabel[static_cast<std::size_t>(e.u)];
        const int b = relabel[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) kept.push_back({a, b});
    }
    return from_edges(next, kept);
}

GraphBuilder::GraphBuilder(int node_count) : n_(node_count) {}

void GraphBuilder::add_edge(int u, int v) { edges_.push_back({u, v}); }

Graph GraphBuilder::build() && {
    Graph g = Graph::from_edges(n_, edges_);
    edges_.clear();
    return g;
}

}  // namespace keygraph
