#pragma once

#include <optional>
#include <span>
#include <vector>

#include "keygraph/graph.hpp"
#include "keygraph/model.hpp"
#include "keygraph/rng.hpp"

namespace keygraph {

struct SampleOptions {
    /// Also store the full key graph and channel graph edge sets. Costs one
    /// ring intersection per node pair instead of one per on-channel.
    bool retain_factors = false;
};

/// One realization of H = K(n; mu, K, P) intersected with G(n; alpha).
struct SampledNetwork {
    ModelParams params;
    std::vector<int> classes;                ///< zero-based class of each node
    std::vector<std::vector<int>> keyrings;  ///< strictly increasing key ids in [0, P)
    Graph graph;                             ///< intersection graph
    std::optional<std::vector<Edge>> key_edges;
    std::optional<std::vector<Edge>> channel_edges;
};

/// Draws one network. Stream consumption order: one class draw per node,
/// then one key ring per node, then one channel indicator per pair (x, y)
/// with x < y in lexicographic order. The same (params, seed) always yields
/// the same network.
SampledNetwork sample_network(const ModelParams& params, const SeedSpec& seed,
                              const SampleOptions& options = {});

/// Class of one node: first i with u < mu_1 + ... + mu_i.
int draw_class(std::span<const double> class_probs, Xoshiro256& rng);

/// `ring_size` distinct keys from [0, pool), sorted ascending. Floyd's subset
/// sampling when ring_size <= pool / 64, partial Fisher-Yates otherwise.
std::vector<int> draw_keyring(int pool, int ring_size, Xoshiro256& rng);

/// True iff two strictly increasing key lists share an element.
bool intersect_rings(std::span<const int> a, std::span<const int> b);

}  // namespace keygraph
