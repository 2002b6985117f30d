#pragma once

#include <vector>

#include "keygraph/model.hpp"

namespace keygraph {

/// Maps a free smallest ring size K_1 to the full ring-size vector.
class KeyProfileRule {
public:
    enum class Kind { kOffsets, kFixedTail };

    /// K_i = K_1 + offsets[i]; offsets[0] must be 0 and offsets non-decreasing.
    static KeyProfileRule offsets(std::vector<int> offsets);
    /// K = (K_1, tail...); tail non-decreasing, K_1 ranges up to tail[0].
    static KeyProfileRule fixed_tail(std::vector<int> tail);

    Kind kind() const { return kind_; }
    const std::vector<int>& values() const { return values_; }
    int class_count() const;

    std::vector<int> ring_sizes(int k1) const;
    /// Largest K_1 whose vector is non-decreasing with K_r <= pool / 2.
    int max_admissible_k1(int pool) const;

private:
    KeyProfileRule(Kind kind, std::vector<int> values) : kind_(kind), values_(std::move(values)) {}
    Kind kind_;
    std::vector<int> values_;
};

struct ThresholdQuery {
    int n = 0;
    int pool = 0;
    std::vector<double> class_weights;
    double alpha = 1.0;
    int k = 1;
    KeyProfileRule rule = KeyProfileRule::offsets({0});
};

struct ThresholdResult {
    bool satisfied = false;      ///< false: no admissible K_1 meets the inequality
    int k1_min = 0;              ///< 0 when unsatisfied
    std::vector<int> ring_sizes; ///< profile at k1_min
    double lambda1 = 0.0;        ///< lambda_1 at k1_min
    double rhs = 0.0;            ///< (ln n + (k-1) ln ln n) / (alpha n)
};

/// Smallest admissible K_1 >= 2 with lambda_1(K_1) > rhs, by linear scan.
ThresholdResult solve_threshold(const ThresholdQuery& query);

enum class Side { kBelow, kAbove };

struct PointClass {
    Side side;
    double gamma;
    /// gamma is zero up to rounding; reported on the one-law side.
    bool on_boundary;
};

PointClass classify_point(const ModelParams& params, int k);

}  // namespace keygraph
