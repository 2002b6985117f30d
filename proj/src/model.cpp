#include "keygraph/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace keygraph {

namespace {

void check_class(const ModelParams& params, int i) {
    if (i < 0 || i >= params.class_count()) {
        throw std::out_of_range("class index " + std::to_string(i) + " out of range [0, " +
                                std::to_string(params.class_count()) + ")");
    }
}

}  // namespace

ModelParams::ModelParams(int node_count, std::vector<double> class_weights,
                         std::vector<int> ring_sizes, int pool_size, double channel_on_prob)
    : n_(node_count),
      mu_(std::move(class_weights)),
      ring_(std::move(ring_sizes)),
      pool_(pool_size),
      alpha_(channel_on_prob) {
    if (n_ < 2) throw std::invalid_argument("node count must be at least 2");
    if (mu_.empty()) throw std::invalid_argument("at least one node class is required");
    if (mu_.size() != ring_.size()) {
        throw std::invalid_argument("class weights and ring sizes differ in length (" +
                                    std::to_string(mu_.size()) + " vs " +
                                    std::to_string(ring_.size()) + ")");
    }
    for (double w : mu_) {
        if (!std::isfinite(w) || w <= 0.0) {
            throw std::invalid_argument("class weights must be positive and finite");
        }
    }
    const double total = std::accumulate(mu_.begin(), mu_.end(), 0.0);
    if (total != 1.0) {
        for (double& w : mu_) w /= total;
    }
    if (std::abs(std::accumulate(mu_.begin(), mu_.end(), 0.0) - 1.0) > 1e-12) {
        throw std::invalid_argument("class weights do not normalize to 1");
    }

    if (pool_ < 1) throw std::invalid_argument("key pool size must be positive");
    for (int k : ring_) {
        if (k < 1) throw std::invalid_argument("key ring sizes must be positive");
        if (k > pool_) throw std::invalid_argument("key ring larger than the key pool");
    }
    if (!std::is_sorted(ring_.begin(), ring_.end())) {
        throw std::invalid_argument("key ring sizes must be non-decreasing by class");
    }
    if (!(alpha_ > 0.0 && alpha_ <= 1.0)) {
        throw std::invalid_argument("channel-on probability must lie in (0, 1]");
    }
}

double ModelParams::class_prob(int i) const {
    check_class(*this, i);
    return mu_[static_cast<std::size_t>(i)];
}

int ModelParams::ring_size(int i) const {
    check_class(*this, i);
    return ring_[static_cast<std::size_t>(i)];
}

double ModelParams::mean_ring_size() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < mu_.size(); ++j) sum += mu_[j] * ring_[j];
    return sum;
}

ModelParams ModelParams::with_node_count(int n) const {
    return ModelParams(n, mu_, ring_, pool_, alpha_);
}

ModelParams ModelParams::with_ring_sizes(std::vector<int> ring_sizes) const {
    return ModelParams(n_, mu_, std::move(ring_sizes), pool_, alpha_);
}

ModelParams ModelParams::with_channel_on_prob(double alpha) const {
    return ModelParams(n_, mu_, ring_, pool_, alpha);
}

double key_overlap_prob(int pool, int ring_a, int ring_b) {
    if (pool < 1 || ring_a < 0 || ring_b < 0 || ring_a > pool || ring_b > pool) {
        throw std::invalid_argument("key_overlap_prob: ring sizes must lie in [0, pool]");
    }
    if (ring_a + ring_b > pool) return 1.0;
    // C(P - a, b) / C(P, b) = prod_{t < b} (P - a - t) / (P - t)
    double disjoint = 1.0;
    for (int t = 0; t < ring_b; ++t) {
        disjoint *= static_cast<double>(pool - ring_a - t) / static_cast<double>(pool - t);
    }
    return 1.0 - disjoint;
}

double key_edge_prob(const ModelParams& params, int i, int j) {
    check_class(params, i);
    check_class(params, j);
    // iterate over the smaller ring
    const int a = params.ring_size(i);
    const int b = params.ring_size(j);
    return key_overlap_prob(params.pool_size(), std::max(a, b), std::min(a, b));
}

double class_key_edge_prob(const ModelParams& params, int i) {
    check_class(params, i);
    double sum = 0.0;
    for (int j = 0; j < params.class_count(); ++j) {
        sum += params.class_prob(j) * key_edge_prob(params, i, j);
    }
    return sum;
}

double class_edge_prob(const ModelParams& params, int i) {
    return params.channel_on_prob() * class_key_edge_prob(params, i);
}

double critical_key_edge_prob(int n, double alpha, int k) {
    if (n < 3) throw std::invalid_argument("critical scaling needs n >= 3");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
    const double ln_n = std::log(static_cast<double>(n));
    return (ln_n + (k - 1) * std::log(ln_n)) / (alpha * n);
}

double gamma_deviation(const ModelParams& params, int k) {
    const int n = params.node_count();
    if (n < 3) throw std::invalid_argument("gamma_deviation needs n >= 3");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const double ln_n = std::log(static_cast<double>(n));
    return n * class_edge_prob(params, 0) - ln_n - (k - 1) * std::log(ln_n);
}

double asymptotic_min_class_key_edge_prob(const ModelParams& params) {
    const double v = params.min_ring_size() * params.mean_ring_size() / params.pool_size();
    return std::clamp(v, 0.0, 1.0);
}

bool is_admissible(std::span<const int> ring_sizes, int pool) {
    if (ring_sizes.empty() || ring_sizes.front() < 2) return false;
    if (!std::is_sorted(ring_sizes.begin(), ring_sizes.end())) return false;
    // K_r <= P / 2 without integer truncation
    return 2 * static_cast<long long>(ring_sizes.back()) <= pool;
}

ScalingReport scaling_report(const ModelParams& params, int k) {
    ScalingReport r;
    const double n = params.node_count();
    r.admissible = is_admissible(params.ring_sizes(), params.pool_size());
    r.gamma = params.node_count() >= 3 ? gamma_deviation(params, k)
                                       : std::numeric_limits<double>::quiet_NaN();
    r.lambda1_exact = class_key_edge_prob(params, 0);
    r.lambda1_asymptotic = asymptotic_min_class_key_edge_prob(params);
    r.pool_per_node = params.pool_size() / n;
    r.max_ring_per_pool = static_cast<double>(params.max_ring_size()) / params.pool_size();
    r.ring_spread_per_log_n =
        static_cast<double>(params.max_ring_size()) / params.min_ring_size() / std::log(n);
    return r;
}

}  // namespace keygraph
