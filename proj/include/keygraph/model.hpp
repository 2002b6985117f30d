#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace keygraph {

/// Parameters of the intersection of an inhomogeneous random key graph
/// K(n; mu, K, P) with an Erdos-Renyi channel graph G(n; alpha).
///
/// Class indices are zero-based throughout the library: class 0 holds the
/// smallest key ring. Construction validates every field and normalizes the
/// class weights so they sum to one; it throws std::invalid_argument on bad
/// input.
class ModelParams {
public:
    ModelParams(int node_count, std::vector<double> class_weights,
                std::vector<int> ring_sizes, int pool_size, double channel_on_prob);

    int node_count() const { return n_; }
    int class_count() const { return static_cast<int>(mu_.size()); }
    int pool_size() const { return pool_; }
    double channel_on_prob() const { return alpha_; }

    double class_prob(int i) const;
    int ring_size(int i) const;
    int max_ring_size() const { return ring_.back(); }
    int min_ring_size() const { return ring_.front(); }

    std::span<const double> class_probs() const { return mu_; }
    std::span<const int> ring_sizes() const { return ring_; }

    /// Mean key ring size sum_j mu_j K_j.
    double mean_ring_size() const;

    ModelParams with_node_count(int n) const;
    ModelParams with_ring_sizes(std::vector<int> ring_sizes) const;
    ModelParams with_channel_on_prob(double alpha) const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    int n_;
    std::vector<double> mu_;
    std::vector<int> ring_;
    int pool_;
    double alpha_;
};

/// Probability that a ring of `ring_a` keys and an independent ring of
/// `ring_b` keys, both drawn uniformly without replacement from a pool of
/// `pool` keys, share at least one key. Exactly 1 when ring_a + ring_b > pool.
double key_overlap_prob(int pool, int ring_a, int ring_b);

/// Key-graph edge probability between a class-i and a class-j node.
double key_edge_prob(const ModelParams& params, int i, int j);

/// Mean key-graph edge probability of a class-i node: sum_j mu_j p_ij.
double class_key_edge_prob(const ModelParams& params, int i);

/// Mean edge probability of a class-i node in the intersection graph:
/// alpha * class_key_edge_prob(i).
double class_edge_prob(const ModelParams& params, int i);

/// Deviation of n * Lambda_1 from the critical scaling ln n + (k-1) ln ln n.
/// Requires n >= 3.
double gamma_deviation(const ModelParams& params, int k);

/// K_1 * K_avg / P clamped to [0, 1]; the small-overlap approximation of
/// class_key_edge_prob(params, 0).
double asymptotic_min_class_key_edge_prob(const ModelParams& params);

/// Right-hand side of the critical-threshold inequality on lambda_1:
/// (ln n + (k-1) ln ln n) / (alpha n).
double critical_key_edge_prob(int n, double alpha, int k);

/// True when 2 <= K_1 <= ... <= K_r <= P/2.
bool is_admissible(std::span<const int> ring_sizes, int pool);

struct ScalingReport {
    bool admissible = false;
    double gamma = 0.0;  ///< NaN when n < 3.
    double lambda1_exact = 0.0;
    double lambda1_asymptotic = 0.0;
    double pool_per_node = 0.0;            ///< P / n
    double max_ring_per_pool = 0.0;        ///< K_r / P
    double ring_spread_per_log_n = 0.0;    ///< (K_r / K_1) / ln n
};

ScalingReport scaling_report(const ModelParams& params, int k);

}  // namespace keygraph
