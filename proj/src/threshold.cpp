#include "keygraph/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace keygraph {

KeyProfileRule KeyProfileRule::offsets(std::vector<int> offsets) {
    if (offsets.empty() || offsets.front() != 0) {
        throw std::invalid_argument("key profile offsets must start with 0");
    }
    if (!std::is_sorted(offsets.begin(), offsets.end())) {
        throw std::invalid_argument("key profile offsets must be non-decreasing");
    }
    return KeyProfileRule(Kind::kOffsets, std::move(offsets));
}

KeyProfileRule KeyProfileRule::fixed_tail(std::vector<int> tail) {
    if (!std::is_sorted(tail.begin(), tail.end())) {
        throw std::invalid_argument("fixed key ring tail must be non-decreasing");
    }
    if (!tail.empty() && tail.front() < 1) throw std::invalid_argument("ring sizes must be positive");
    return KeyProfileRule(Kind::kFixedTail, std::move(tail));
}

int KeyProfileRule::class_count() const {
    return kind_ == Kind::kOffsets ? static_cast<int>(values_.size())
                                   : static_cast<int>(values_.size()) + 1;
}

std::vector<int> KeyProfileRule::ring_sizes(int k1) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(class_count()));
    if (kind_ == Kind::kOffsets) {
        for (int off : values_) out.push_back(k1 + off);
    } else {
        if (!values_.empty() && k1 > values_.front()) {
            throw std::invalid_argument("K_1 exceeds the fixed ring sizes of larger classes");
        }
        out.push_back(k1);
        out.insert(out.end(), values_.begin(), values_.end());
    }
    return out;
}

int KeyProfileRule::max_admissible_k1(int pool) const {
    const int half = pool / 2;
    if (kind_ == Kind::kOffsets) return half - values_.back();
    if (values_.empty()) return half;
    return values_.back() <= half ? values_.front() : 0;
}

ThresholdResult solve_threshold(const ThresholdQuery& q) {
    if (q.n < 3) throw std::invalid_argument("threshold solving needs n >= 3");
    if (q.rule.class_count() != static_cast<int>(q.class_weights.size())) {
        throw std::invalid_argument("key profile and class weights differ in class count");
    }
    ThresholdResult result;
    result.rhs = critical_key_edge_prob(q.n, q.alpha, q.k);
    const int last = q.rule.max_admissible_k1(q.pool);
    // lambda_1 is non-decreasing in K_1 under a monotone profile, so the
    // first K_1 that clears rhs is the minimum.
    for (int k1 = 2; k1 <= last; ++k1) {
        const ModelParams params(q.n, q.class_weights, q.rule.ring_sizes(k1), q.pool, q.alpha);
        const double lambda1 = class_key_edge_prob(params, 0);
        if (lambda1 > result.rhs) {
            result.satisfied = true;
            result.k1_min = k1;
            result.ring_sizes = q.rule.ring_sizes(k1);
            result.lambda1 = lambda1;
            return result;
        }
    }
    return result;
}

PointClass classify_point(const ModelParams& params, int k) {
    const double gamma = gamma_deviation(params, k);
    const double ln_n = std::log(static_cast<double>(params.node_count()));
    const double scale = ln_n + (k - 1) * std::log(ln_n);
    const bool boundary = std::abs(gamma) <= 1e-12 * scale;
    return {boundary || gamma > 0.0 ? Side::kAbove : Side::kBelow, gamma, boundary};
}

}  // namespace keygraph
