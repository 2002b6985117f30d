#pragma once

#include <span>
#include <vector>

#include "keygraph/graph.hpp"

namespace keygraph {

struct VertexCut {
    int kappa = 0;
    /// Ascending node ids; empty when the graph is disconnected or complete.
    std::vector<int> nodes;
};

struct ConnectivityReport {
    int min_degree = 0;
    int vertex_connectivity = 0;
    std::vector<int> min_vertex_cut;
    bool is_connected = false;
    int component_count = 0;
};

int min_degree(const Graph& g);
int component_count(const Graph& g);
bool is_connected(const Graph& g);

/// Exact vertex connectivity and one minimum vertex cut.
///
/// Nodes are split into in/out copies joined by a unit arc, edges become
/// uncapacitated arcs both ways, and kappa is the smallest s-t flow over the
/// pairs (s, t) with s a minimum-degree node and t not adjacent to s, plus
/// the non-adjacent pairs inside N(s). Pairs are visited in ascending node
/// order and the cut comes from the first pair that attains the minimum.
/// A complete graph on n nodes has kappa = n - 1 and no cut.
VertexCut vertex_connectivity(const Graph& g);

/// min(kappa, cap). Flows stop augmenting at the running minimum, so this is
/// much cheaper than vertex_connectivity when cap is below the min degree.
int vertex_connectivity_at_most(const Graph& g, int cap);

/// kappa >= k, with a min-degree pre-check and exit at the first pair whose
/// flow falls short of k.
bool is_k_connected(const Graph& g, int k);

ConnectivityReport analyze_connectivity(const Graph& g);

/// Entry d is whether the graph is still connected after removing
/// victims[0..d]. Throws std::invalid_argument on out-of-range or repeated
/// victims, or when the victims would remove every node.
std::vector<bool> delete_and_check(const Graph& g, std::span<const int> victims);

}  // namespace keygraph
