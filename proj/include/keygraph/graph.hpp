#pragma once

#include <span>
#include <utility>
#include <vector>

namespace keygraph {

struct Edge {
    int u;
    int v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on nodes [0, n) with sorted adjacency lists and a
/// flat edge list (each edge stored once with u < v, sorted).
class Graph {
public:
    Graph() = default;
    explicit Graph(int node_count);

    /// Throws std::invalid_argument on self-loops, out-of-range endpoints or
    /// repeated pairs.
    static Graph from_edges(int node_count, std::span<const Edge> edges);
    static Graph complete(int node_count);

    int node_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::span<const Edge> edges() const { return edges_; }
    bool has_edge(int u, int v) const;

    /// Subgraph induced by removing `removed` nodes, relabelled densely in
    /// ascending order of the surviving node ids.
    Graph without_nodes(std::span<const int> removed) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
};

/// Collects edges, then validates them once in build().
class GraphBuilder {
public:
    explicit GraphBuilder(int node_count);
    void add_edge(int u, int v);
    Graph build() &&;

private:
    int n_;
    std::vector<Edge> edges_;
};

}  // namespace keygraph
