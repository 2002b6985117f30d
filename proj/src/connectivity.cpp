#include "keygraph/connectivity.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>

namespace keygraph {

namespace {

/// Residual network of the node-split graph. Node v becomes in(v) = 2v and
/// out(v) = 2v + 1; arcs are stored in CSR form with paired reverse arcs.
class SplitFlowNetwork {
public:
    explicit SplitFlowNetwork(const Graph& g) : n_(g.node_count()) {
        const int nodes = 2 * n_;
        std::vector<int> degree(static_cast<std::size_t>(nodes), 0);
        // split arc + reverse
        for (int v = 0; v < n_; ++v) {
            ++degree[static_cast<std::size_t>(in(v))];
            ++degree[static_cast<std::size_t>(out(v))];
        }
        // each edge {u, v}: out(u)->in(v) and out(v)->in(u); a reverse arc
        // lives at the head of each
        for (const Edge& e : g.edges()) {
            ++degree[static_cast<std::size_t>(out(e.u))];
            ++degree[static_cast<std::size_t>(in(e.u))];
            ++degree[static_cast<std::size_t>(out(e.v))];
            ++degree[static_cast<std::size_t>(in(e.v))];
        }
        start_.assign(static_cast<std::size_t>(nodes) + 1, 0);
        for (int x = 0; x < nodes; ++x) {
            start_[static_cast<std::size_t>(x) + 1] = start_[static_cast<std::size_t>(x)] + degree[static_cast<std::size_t>(x)];
        }
        const int arcs = start_.back();
        head_.resize(static_cast<std::size_t>(arcs));
        rev_.resize(static_cast<std::size_t>(arcs));
        base_cap_.resize(static_cast<std::size_t>(arcs));
        std::vector<int> fill(start_.begin(), start_.end() - 1);
        auto add = [&](int from, int to, int cap) {
            const int a = fill[static_cast<std::size_t>(from)]++;
            const int b = fill[static_cast<std::size_t>(to)]++;
            head_[static_cast<std::size_t>(a)] = to;
            rev_[static_cast<std::size_t>(a)] = b;
            base_cap_[static_cast<std::size_t>(a)] = cap;
            head_[static_cast<std::size_t>(b)] = from;
            rev_[static_cast<std::size_t>(b)] = a;
            base_cap_[static_cast<std::size_t>(b)] = 0;
        };
        const int unbounded = n_ + 1;
        for (int v = 0; v < n_; ++v) add(in(v), out(v), 1);
        for (const Edge& e : g.edges()) {
            add(out(e.u), in(e.v), unbounded);
            add(out(e.v), in(e.u), unbounded);
        }
        cap_.resize(base_cap_.size());
        fwd_mark_.assign(static_cast<std::size_t>(nodes), 0);
        bwd_mark_.assign(static_cast<std::size_t>(nodes), 0);
        fwd_arc_.assign(static_cast<std::size_t>(nodes), -1);
        bwd_arc_.assign(static_cast<std::size_t>(nodes), -1);
        fwd_queue_.resize(static_cast<std::size_t>(nodes));
        bwd_queue_.resize(static_cast<std::size_t>(nodes));
    }

    static int in(int v) { return 2 * v; }
    static int out(int v) { return 2 * v + 1; }

    /// Number of internally vertex-disjoint s-t paths, capped at `limit`.
    /// When the returned value is below `limit` the flow is maximum and
    /// last_cut() describes a minimum s-t vertex separator.
    int max_flow(int s, int t, int limit) {
        std::copy(base_cap_.begin(), base_cap_.end(), cap_.begin());
        source_ = out(s);
        sink_ = in(t);
        int flow = 0;
        while (flow < limit && augment()) ++flow;
        return flow;
    }

    /// Nodes whose split arc crosses the source side of the residual network
    /// left by the last max_flow call.
    std::vector<int> last_cut() {
        ++stamp_;
        std::size_t qh = 0;
        std::size_t qt = 0;
        fwd_queue_[qt++] = source_;
        fwd_mark_[idx(source_)] = stamp_;
        while (qh < qt) {
            const int x = fwd_queue_[qh++];
            for (int a = start_[idx(x)]; a < start_[idx(x) + 1]; ++a) {
                const int y = head_[idx(a)];
                if (cap_[idx(a)] == 0 || fwd_mark_[idx(y)] == stamp_) continue;
                fwd_mark_[idx(y)] = stamp_;
                fwd_queue_[qt++] = y;
            }
        }
        std::vector<int> cut;
        for (int v = 0; v < n_; ++v) {
            if (fwd_mark_[idx(in(v))] == stamp_ && fwd_mark_[idx(out(v))] != stamp_) cut.push_back(v);
        }
        return cut;
    }

private:
    static std::size_t idx(int x) { return static_cast<std::size_t>(x); }

    // Bidirectional BFS for one augmenting path; each round expands a full
    // level of whichever frontier is smaller.
    bool augment() {
        ++stamp_;
        std::size_t fh = 0, ft = 0, bh = 0, bt = 0;
        fwd_queue_[ft++] = source_;
        fwd_mark_[idx(source_)] = stamp_;
        bwd_queue_[bt++] = sink_;
        bwd_mark_[idx(sink_)] = stamp_;
        int meet = -1;
        while (meet < 0 && fh < ft && bh < bt) {
            if (ft - fh <= bt - bh) {
                const std::size_t level_end = ft;
                while (meet < 0 && fh < level_end) {
                    const int x = fwd_queue_[fh++];
                    for (int a = start_[idx(x)]; a < start_[idx(x) + 1]; ++a) {
                        const int y = head_[idx(a)];
                        if (cap_[idx(a)] == 0 || fwd_mark_[idx(y)] == stamp_) continue;
                        fwd_mark_[idx(y)] = stamp_;
                        fwd_arc_[idx(y)] = a;
                        if (bwd_mark_[idx(y)] == stamp_) {
                            meet = y;
                            break;
                        }
                        fwd_queue_[ft++] = y;
                    }
                }
            } else {
                const std::size_t level_end = bt;
                while (meet < 0 && bh < level_end) {
                    const int y = bwd_queue_[bh++];
                    for (int b = start_[idx(y)]; b < start_[idx(y) + 1]; ++b) {
                        const int a = rev_[idx(b)];
                        const int x = head_[idx(b)];
                        if (cap_[idx(a)] == 0 || bwd_mark_[idx(x)] == stamp_) continue;
                        bwd_mark_[idx(x)] = stamp_;
                        bwd_arc_[idx(x)] = a;
                        if (fwd_mark_[idx(x)] == stamp_) {
                            meet = x;
                            break;
                        }
                        bwd_queue_[bt++] = x;
                    }
                }
            }
        }
        if (meet < 0) return false;
        for (int z = meet; z != source_;) {
            const int a = fwd_arc_[idx(z)];
            --cap_[idx(a)];
            ++cap_[idx(rev_[idx(a)])];
            z = head_[idx(rev_[idx(a)])];
        }
        for (int z = meet; z != sink_;) {
            const int a = bwd_arc_[idx(z)];
            --cap_[idx(a)];
            ++cap_[idx(rev_[idx(a)])];
            z = head_[idx(a)];
        }
        return true;
    }

    int n_;
    std::vector<int> start_;
    std::vector<int> head_;
    std::vector<int> rev_;
    std::vector<int> base_cap_;
    std::vector<int> cap_;
    std::vector<unsigned> fwd_mark_;
    std::vector<unsigned> bwd_mark_;
    std::vector<int> fwd_arc_;
    std::vector<int> bwd_arc_;
    std::vector<int> fwd_queue_;
    std::vector<int> bwd_queue_;
    unsigned stamp_ = 0;
    int source_ = 0;
    int sink_ = 0;
};

int min_degree_node(const Graph& g) {
    int best = 0;
    for (int v = 1; v < g.node_count(); ++v) {
        if (g.degree(v) < g.degree(best)) best = v;
    }
    return best;
}

enum class Mode { kExactWithCut, kCapped, kThreshold };

struct Outcome {
    int value;
    std::vector<int> cut;
};

// Shared driver. kExactWithCut: exact kappa and the first minimum cut.
// kCapped: min(kappa, cap). kThreshold: value >= cap iff kappa >= cap, exits
// at the first deficient pair.
Outcome solve(const Graph& g, int cap, Mode mode) {
    const int n = g.node_count();
    if (n < 2 || !is_connected(g)) return {0, {}};
    const int s = min_degree_node(g);
    const int delta = g.degree(s);
    if (delta == n - 1) return {std::min(n - 1, cap), {}};

    SplitFlowNetwork net(g);
    Outcome result{mode == Mode::kExactWithCut ? delta + 1 : std::min(delta, cap), {}};

    // Returns false when the search can stop.
    auto probe = [&](int a, int b) {
        const int f = net.max_flow(a, b, result.value);
        if (f < result.value) {
            result.value = f;
            if (mode == Mode::kExactWithCut) result.cut = net.last_cut();
            if (mode == Mode::kThreshold) return false;
        }
        // a connected graph has flow >= 1 between every pair
        return result.value > 1;
    };

    const auto nbrs = g.neighbors(s);
    for (int t = 0; t < n; ++t) {
        if (t == s || std::binary_search(nbrs.begin(), nbrs.end(), t)) continue;
        if (!probe(s, t)) return result;
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            if (g.has_edge(nbrs[i], nbrs[j])) continue;
            if (!probe(nbrs[i], nbrs[j])) return result;
        }
    }
    return result;
}

}  // namespace

int min_degree(const Graph& g) {
    if (g.node_count() == 0) return 0;
    return g.degree(min_degree_node(g));
}

int component_count(const Graph& g) {
    const int n = g.node_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    int components = 0;
    for (int root = 0; root < n; ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        ++components;
        seen[static_cast<std::size_t>(root)] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

VertexCut vertex_connectivity(const Graph& g) {
    Outcome o = solve(g, INT_MAX, Mode::kExactWithCut);
    return {o.value, std::move(o.cut)};
}

int vertex_connectivity_at_most(const Graph& g, int cap) {
    if (cap < 0) throw std::invalid_argument("connectivity cap must be non-negative");
    if (cap == 0) return 0;
    return solve(g, cap, Mode::kCapped).value;
}

bool is_k_connected(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > g.node_count() - 1) return false;
    if (min_degree(g) < k) return false;
    return solve(g, k, Mode::kThreshold).value >= k;
}

ConnectivityReport analyze_connectivity(const Graph& g) {
    ConnectivityReport report;
    report.min_degree = min_degree(g);
    report.component_count = component_count(g);
    report.is_connected = report.component_count == 1;
    VertexCut cut = vertex_connectivity(g);
    report.vertex_connectivity = cut.kappa;
    report.min_vertex_cut = std::move(cut.nodes);
    return report;
}

std::vector<bool> delete_and_check(const Graph& g, std::span<const int> victims) {
    const int n = g.node_count();
    if (static_cast<int>(victims.size()) >= n) {
        throw std::invalid_argument("cannot delete every node of the graph");
    }
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (int v : victims) {
        if (v < 0 || v >= n) throw std::invalid_argument("victim " + std::to_string(v) + " out of range");
        if (removed[static_cast<std::size_t>(v)]) throw std::invalid_argument("victim " + std::to_string(v) + " repeated");
        removed[static_cast<std::size_t>(v)] = 1;
    }
    std::fill(removed.begin(), removed.end(), 0);

    std::vector<bool> result;
    result.reserve(victims.size());
    std::vector<char> seen(static_cast<std::size_t>(n));
    std::vector<int> stack;
    int remaining = n;
    for (int v : victims) {
        removed[static_cast<std::size_t>(v)] = 1;
        --remaining;
        std::copy(removed.begin(), removed.end(), seen.begin());
        const int root = static_cast<int>(std::find(removed.begin(), removed.end(), 0) - removed.begin());
        seen[static_cast<std::size_t>(root)] = 1;
        stack.assign(1, root);
        int reached = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(x)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        result.push_back(reached == remaining);
    }
    return result;
}

}  // namespace keygraph
