#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "keygraph/model.hpp"
#include "keygraph/threshold.hpp"

namespace keygraph {

enum class SweepAxis {
    kRingSize,       ///< values are K_1; the profile rule gives the other classes
    kAlpha,          ///< values are channel-on probabilities
    kK,              ///< values are target k; one shared set of samples
    kDeletionDepth,  ///< values are numbers of deleted min-cut nodes; shared samples
};

struct RecordFlags {
    bool min_degree = true;
    bool k_connectivity = true;
    bool vertex_cut_curve = false;
};

/// Declarative Monte Carlo sweep.
///
/// Every distinct parameter point of the sweep (one per value for the K_1 and
/// alpha axes, a single point for the k and depth axes) draws `trials`
/// networks. Trial t of point p uses the stream
/// SeedSpec{master_seed, (p << 32) | t}, so results do not depend on the
/// number of worker threads.
struct ExperimentSpec {
    std::string name = "experiment";
    ModelParams base;
    SweepAxis axis = SweepAxis::kRingSize;
    std::vector<double> values;
    /// Profile for the K_1 axis and threshold markers; defaults to the
    /// offsets of base's ring sizes from K_1.
    std::optional<KeyProfileRule> profile;
    int trials = 200;
    std::vector<int> k_list;
    std::uint64_t master_seed = 0;
    RecordFlags record;
    int threads = 0;  ///< 0 = hardware concurrency

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

struct KRow {
    int k = 0;
    int count_mindeg = 0;   ///< trials with min degree >= k
    int count_kconn = 0;    ///< trials with kappa >= k
    double prob_mindeg = 0.0;
    double prob_kconn = 0.0;
    double ci_half = 0.0;   ///< Wilson 95% half-width of prob_kconn
    /// Fraction of trials where [min degree >= k] and [kappa >= k] differ.
    double mismatch_fraction = 0.0;
    std::optional<int> threshold_k1;
};

struct ExperimentRow {
    double sweep_value = 0.0;
    ModelParams params;
    std::vector<KRow> per_k;
    double mean_delta = 0.0;
    /// Mean of min(kappa, kappa_cap).
    double mean_kappa = 0.0;
    int kappa_cap = 0;
};

struct ExperimentResult {
    std::string name;
    SweepAxis axis = SweepAxis::kRingSize;
    std::uint64_t master_seed = 0;
    int trials = 0;
    RecordFlags record;
    std::string code_version;
    std::vector<ExperimentRow> rows;
};

/// Runs the sweep. Trials run on a pool of spec.threads workers; per-trial
/// records are merged in trial order. Allocation failure surfaces as
/// std::runtime_error naming the experiment.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Survival curve of the deletion study: entry d is the fraction of trials in
/// which the network stays connected after deleting d nodes of a minimum
/// vertex cut, i.e. kappa > d. Requires the depth axis with
/// record.vertex_cut_curve set.
std::vector<double> deletion_experiment(const ExperimentSpec& spec);

/// Wilson score interval half-width at the given normal quantile.
double wilson_half_width(int successes, int trials, double z = 1.959963984540054);

std::string code_version();

inline constexpr const char* kCsvHeader =
    "experiment,n,P,alpha,k,K_profile,sweep_value,trials,count_mindeg,count_kconn,"
    "prob_mindeg,prob_kconn,ci_half,mean_delta,mean_kappa,threshold_K1,master_seed";

/// One row per (sweep value, k), in sweep order then k order. K_profile is
/// the ring-size vector joined by ';'. threshold_K1 is empty when no
/// admissible K_1 exists; min-degree or k-connectivity fields are empty when
/// that quantity was not recorded.
void write_csv(std::ostream& out, std::span<const ExperimentResult> results);
void write_csv(const std::filesystem::path& path, std::span<const ExperimentResult> results);

/// Writes `<prefix>_<name>_k<k>.dat` per k with "x y ci" lines (x = sweep
/// value, y = prob_kconn). Returns the files written.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& prefix,
                                                   const ExperimentResult& result);

/// Parses an experiment file: one spec object, or {"experiments": [...]}.
/// Unknown keys are rejected.
std::vector<ExperimentSpec> parse_experiment_specs(const std::string& json_text);
std::vector<ExperimentSpec> load_experiment_specs(const std::filesystem::path& path);

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct FigureOverrides {
    std::optional<int> n;
    std::optional<int> pool;
    std::optional<int> trials;
    std::optional<std::uint64_t> master_seed;
    std::optional<int> threads;
};

/// Canned reproductions of the four numerical studies (figure 1..4), with
/// n = 500, P = 10^4, mu = (1/2, 1/2) and 200 trials unless overridden.
std::vector<ExperimentSpec> figure_experiments(int figure, const FigureOverrides& overrides = {});

}  // namespace keygraph
