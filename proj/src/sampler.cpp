#include "keygraph/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace keygraph {

int draw_class(std::span<const double> class_probs, Xoshiro256& rng) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    const int last = static_cast<int>(class_probs.size()) - 1;
    for (int i = 0; i < last; ++i) {
        cumulative += class_probs[static_cast<std::size_t>(i)];
        if (u < cumulative) return i;
    }
    return last;
}

std::vector<int> draw_keyring(int pool, int ring_size, Xoshiro256& rng) {
    if (ring_size < 0 || ring_size > pool) {
        throw std::invalid_argument("draw_keyring: ring size must lie in [0, pool]");
    }
    std::vector<int> ring;
    ring.reserve(static_cast<std::size_t>(ring_size));
    if (ring_size <= pool / 64) {
        // Floyd: for j = P-K .. P-1 pick t in [0, j]; take t, or j if t is taken.
        for (int j = pool - ring_size; j < pool; ++j) {
            const int t = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(j) + 1));
            auto pos = std::lower_bound(ring.begin(), ring.end(), t);
            if (pos != ring.end() && *pos == t) {
                // j exceeds every key chosen so far
                ring.push_back(j);
            } else {
                ring.insert(pos, t);
            }
        }
        return ring;
    }
    std::vector<int> keys(static_cast<std::size_t>(pool));
    std::iota(keys.begin(), keys.end(), 0);
    for (int i = 0; i < ring_size; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       rng.uniform_below(static_cast<std::uint64_t>(pool - i));
        std::swap(keys[static_cast<std::size_t>(i)], keys[j]);
    }
    ring.assign(keys.begin(), keys.begin() + ring_size);
    std::sort(ring.begin(), ring.end());
    return ring;
}

bool intersect_rings(std::span<const int> a, std::span<const int> b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

SampledNetwork sample_network(const ModelParams& params, const SeedSpec& seed,
                              const SampleOptions& options) {
    const int n = params.node_count();
    Xoshiro256 rng(seed);

    std::vector<int> classes(static_cast<std::size_t>(n));
    for (auto& c : classes) c = draw_class(params.class_probs(), rng);

    std::vector<std::vector<int>> rings(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        rings[static_cast<std::size_t>(x)] =
            draw_keyring(params.pool_size(), params.ring_size(classes[static_cast<std::size_t>(x)]), rng);
    }

    const double alpha = params.channel_on_prob();
    std::vector<Edge> edges;
    std::optional<std::vector<Edge>> key_edges;
    std::optional<std::vector<Edge>> channel_edges;
    if (options.retain_factors) {
        key_edges.emplace();
        channel_edges.emplace();
    }
    // holder[key] == x marks the keys of the current row node x
    std::vector<int> holder(static_cast<std::size_t>(params.pool_size()), -1);
    auto shares_with = [&](int x, int y) {
        for (int key : rings[static_cast<std::size_t>(y)]) {
            if (holder[static_cast<std::size_t>(key)] == x) return true;
        }
        return false;
    };
    for (int x = 0; x < n; ++x) {
        for (int key : rings[static_cast<std::size_t>(x)]) holder[static_cast<std::size_t>(key)] = x;
        for (int y = x + 1; y < n; ++y) {
            const bool channel_on = rng.bernoulli(alpha);
            if (options.retain_factors) {
                const bool shares_key = shares_with(x, y);
                if (shares_key) key_edges->push_back({x, y});
                if (channel_on) channel_edges->push_back({x, y});
                if (channel_on && shares_key) edges.push_back({x, y});
            } else if (channel_on && shares_with(x, y)) {
                edges.push_back({x, y});
            }
        }
    }

    return SampledNetwork{params, std::move(classes), std::move(rings),
                          Graph::from_edges(n, edges), std::move(key_edges),
                          std::move(channel_edges)};
}

}  // namespace keygraph
