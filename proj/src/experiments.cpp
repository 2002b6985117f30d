#include "keygraph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <new>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "keygraph/connectivity.hpp"
#include "keygraph/sampler.hpp"
#include "keygraph/text.hpp"

#ifndef KEYGRAPH_VERSION
#define KEYGRAPH_VERSION "dev"
#endif

namespace keygraph {

namespace {

struct TrialRecord {
    int delta = 0;
    int kappa = 0;  // min(kappa, cap)
};

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

KeyProfileRule effective_profile(const ExperimentSpec& spec) {
    if (spec.profile) return *spec.profile;
    std::vector<int> offsets;
    const int k1 = spec.base.min_ring_size();
    for (int k : spec.base.ring_sizes()) offsets.push_back(k - k1);
    return KeyProfileRule::offsets(std::move(offsets));
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_trials(const ModelParams& params, const ExperimentSpec& spec,
                                    std::uint64_t point, int cap) {
    std::vector<TrialRecord> records(static_cast<std::size_t>(spec.trials));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (int t = next++; t < spec.trials; t = next++) {
                const SeedSpec seed{spec.master_seed, (point << 32) | static_cast<std::uint64_t>(t)};
                const SampledNetwork net = sample_network(params, seed);
                TrialRecord& rec = records[static_cast<std::size_t>(t)];
                rec.delta = min_degree(net.graph);
                rec.kappa = cap > 0 ? vertex_connectivity_at_most(net.graph, cap) : 0;
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = spec.trials;
        }
    };

    const int workers = std::min(worker_count(spec.threads), spec.trials);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

std::vector<int> ks_for(const ExperimentSpec& spec) {
    std::vector<int> ks;
    switch (spec.axis) {
        case SweepAxis::kK:
            for (double v : spec.values) ks.push_back(static_cast<int>(v));
            break;
        case SweepAxis::kDeletionDepth:
            for (double v : spec.values) ks.push_back(static_cast<int>(v) + 1);
            break;
        default:
            ks = spec.k_list;
    }
    return ks;
}

KRow summarize(const std::vector<TrialRecord>& records, int k) {
    KRow row;
    row.k = k;
    for (const auto& r : records) {
        row.count_mindeg += r.delta >= k ? 1 : 0;
        row.count_kconn += r.kappa >= k ? 1 : 0;
    }
    const int trials = static_cast<int>(records.size());
    row.prob_mindeg = static_cast<double>(row.count_mindeg) / trials;
    row.prob_kconn = static_cast<double>(row.count_kconn) / trials;
    row.ci_half = wilson_half_width(row.count_kconn, trials);
    int mismatches = 0;
    for (const auto& r : records) mismatches += (r.delta >= k) != (r.kappa >= k) ? 1 : 0;
    row.mismatch_fraction = static_cast<double>(mismatches) / trials;
    return row;
}

std::optional<int> threshold_marker(const ModelParams& params, const KeyProfileRule& profile, int k) {
    if (params.node_count() < 3 || profile.class_count() != params.class_count()) return std::nullopt;
    ThresholdQuery q;
    q.n = params.node_count();
    q.pool = params.pool_size();
    q.class_weights.assign(params.class_probs().begin(), params.class_probs().end());
    q.alpha = params.channel_on_prob();
    q.k = k;
    q.rule = profile;
    const ThresholdResult r = solve_threshold(q);
    if (!r.satisfied) return std::nullopt;
    return r.k1_min;
}

ExperimentRow make_row(double value, const ModelParams& params, const std::vector<TrialRecord>& records,
                       std::span<const int> ks, int cap, const KeyProfileRule& profile) {
    ExperimentRow row{value, params, {}, 0.0, 0.0, cap};
    for (int k : ks) {
        KRow kr = summarize(records, k);
        kr.threshold_k1 = threshold_marker(params, profile, k);
        row.per_k.push_back(kr);
    }
    double sum_delta = 0.0;
    double sum_kappa = 0.0;
    for (const auto& r : records) {
        sum_delta += r.delta;
        sum_kappa += r.kappa;
    }
    row.mean_delta = sum_delta / static_cast<double>(records.size());
    row.mean_kappa = sum_kappa / static_cast<double>(records.size());
    return row;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (threads < 0) throw std::invalid_argument("threads must be non-negative");
    const int n = base.node_count();
    switch (axis) {
        case SweepAxis::kRingSize: {
            const KeyProfileRule rule = effective_profile(*this);
            if (rule.class_count() != base.class_count()) {
                throw std::invalid_argument("key profile class count does not match the class weights");
            }
            for (double v : values) {
                if (!is_integral(v) || v < 1) throw std::invalid_argument("K_1 sweep values must be positive integers");
                (void)base.with_ring_sizes(rule.ring_sizes(static_cast<int>(v)));
            }
            break;
        }
        case SweepAxis::kAlpha:
            for (double v : values) (void)base.with_channel_on_prob(v);
            break;
        case SweepAxis::kK:
            for (double v : values) {
                if (!is_integral(v) || v < 1) throw std::invalid_argument("k sweep values must be positive integers");
            }
            break;
        case SweepAxis::kDeletionDepth:
            if (!record.vertex_cut_curve) {
                throw std::invalid_argument("deletion-depth sweeps require record.vertex_cut_curve");
            }
            for (double v : values) {
                if (!is_integral(v) || v < 0 || v > n - 2) {
                    throw std::invalid_argument("deletion depths must be integers in [0, n-2]");
                }
            }
            break;
    }
    if (axis == SweepAxis::kK || axis == SweepAxis::kDeletionDepth) {
        if (!k_list.empty()) throw std::invalid_argument("k_list must be empty when sweeping k or deletion depth");
    } else {
        if (k_list.empty()) throw std::invalid_argument("k_list must name at least one k");
        for (int k : k_list) {
            if (k < 1) throw std::invalid_argument("k values must be positive");
        }
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult result{spec.name, spec.axis, spec.master_seed, spec.trials, spec.record, code_version(), {}};
    const KeyProfileRule profile = effective_profile(spec);
    const std::vector<int> ks = ks_for(spec);
    const int cap = spec.record.k_connectivity || spec.record.vertex_cut_curve
                        ? *std::max_element(ks.begin(), ks.end())
                        : 0;

    try {
        if (spec.axis == SweepAxis::kK || spec.axis == SweepAxis::kDeletionDepth) {
            const auto records = run_trials(spec.base, spec, 0, cap);
            for (std::size_t i = 0; i < spec.values.size(); ++i) {
                result.rows.push_back(make_row(spec.values[i], spec.base, records,
                                               std::span<const int>(&ks[i], 1), cap, profile));
            }
        } else {
            for (std::size_t p = 0; p < spec.values.size(); ++p) {
                const double v = spec.values[p];
                const ModelParams params = spec.axis == SweepAxis::kRingSize
                                               ? spec.base.with_ring_sizes(profile.ring_sizes(static_cast<int>(v)))
                                               : spec.base.with_channel_on_prob(v);
                const auto records = run_trials(params, spec, p, cap);
                result.rows.push_back(make_row(v, params, records, ks, cap, profile));
            }
        }
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("experiment '" + spec.name + "' exceeded available memory");
    }
    return result;
}

std::vector<double> deletion_experiment(const ExperimentSpec& spec) {
    if (spec.axis != SweepAxis::kDeletionDepth) {
        throw std::invalid_argument("deletion_experiment needs a deletion-depth sweep");
    }
    const ExperimentResult result = run_experiment(spec);
    std::vector<double> survival;
    for (const auto& row : result.rows) survival.push_back(row.per_k.front().prob_kconn);
    return survival;
}

double wilson_half_width(int successes, int trials, double z) {
    if (trials <= 0) throw std::invalid_argument("wilson_half_width needs trials > 0");
    const double n = trials;
    const double p = successes / n;
    const double z2 = z * z;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

std::string code_version() { return std::string("keygraph ") + KEYGRAPH_VERSION; }

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::kRingSize: return "K1";
        case SweepAxis::kAlpha: return "alpha";
        case SweepAxis::kK: return "k";
        case SweepAxis::kDeletionDepth: return "depth";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "K1") return SweepAxis::kRingSize;
    if (name == "alpha") return SweepAxis::kAlpha;
    if (name == "k") return SweepAxis::kK;
    if (name == "depth") return SweepAxis::kDeletionDepth;
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected K1, alpha, k or depth)");
}

void write_csv(std::ostream& out, std::span<const ExperimentResult> results) {
    out << kCsvHeader << '\n';
    for (const auto& res : results) {
        for (const auto& row : res.rows) {
            const ModelParams& p = row.params;
            for (const auto& kr : row.per_k) {
                const bool deg = res.record.min_degree;
                const bool conn = res.record.k_connectivity || res.record.vertex_cut_curve;
                auto field = [](bool present, const std::string& s) { return present ? s : std::string(); };
                out << res.name << ',' << p.node_count() << ',' << p.pool_size() << ','
                    << text::format_real(p.channel_on_prob()) << ',' << kr.k << ','
                    << text::join(p.ring_sizes(), ";") << ',' << text::format_real(row.sweep_value) << ','
                    << res.trials << ',' << field(deg, std::to_string(kr.count_mindeg)) << ','
                    << field(conn, std::to_string(kr.count_kconn)) << ','
                    << field(deg, text::format_real(kr.prob_mindeg)) << ','
                    << field(conn, text::format_real(kr.prob_kconn)) << ','
                    << field(conn, text::format_real(kr.ci_half)) << ','
                    << field(deg, text::format_real(row.mean_delta)) << ','
                    << field(conn, text::format_real(row.mean_kappa)) << ','
                    << (kr.threshold_k1 ? std::to_string(*kr.threshold_k1) : std::string()) << ','
                    << res.master_seed << '\n';
            }
        }
    }
}

void write_csv(const std::filesystem::path& path, std::span<const ExperimentResult> results) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(out, results);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& prefix,
                                                   const ExperimentResult& result) {
    std::map<int, std::vector<std::pair<double, const KRow*>>> series;
    for (const auto& row : result.rows) {
        for (const auto& kr : row.per_k) series[kr.k].emplace_back(row.sweep_value, &kr);
    }
    std::vector<std::filesystem::path> written;
    for (const auto& [k, points] : series) {
        std::filesystem::path path = prefix;
        path += "_" + result.name + "_k" + std::to_string(k) + ".dat";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        out << "# " << result.name << " axis=" << to_string(result.axis) << " k=" << k
            << " trials=" << result.trials << " seed=" << result.master_seed << " " << result.code_version
            << "\n# x y ci\n";
        for (const auto& [x, kr] : points) {
            out << text::format_real(x) << ' ' << text::format_real(kr->prob_kconn) << ' '
                << text::format_real(kr->ci_half) << '\n';
        }
        if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
        written.push_back(path);
    }
    return written;
}

std::vector<ExperimentSpec> figure_experiments(int figure, const FigureOverrides& o) {
    const int n = o.n.value_or(500);
    const int pool = o.pool.value_or(10000);
    const std::vector<double> mu{0.5, 0.5};
    auto finish = [&](ExperimentSpec spec) {
        spec.trials = o.trials.value_or(200);
        spec.master_seed = o.master_seed.value_or(0);
        spec.threads = o.threads.value_or(0);
        return spec;
    };
    auto range = [](int lo, int hi) {
        std::vector<double> v;
        for (int x = lo; x <= hi; ++x) v.push_back(x);
        return v;
    };

    std::vector<ExperimentSpec> specs;
    switch (figure) {
        case 1:
            for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
                specs.push_back(finish(ExperimentSpec{
                    .name = "fig1_alpha" + text::format_real(alpha),
                    .base = ModelParams(n, mu, {5, 15}, pool, alpha),
                    .axis = SweepAxis::kRingSize,
                    .values = range(5, 40),
                    .profile = KeyProfileRule::offsets({0, 10}),
                    .k_list = {2},
                }));
            }
            break;
        case 2:
            specs.push_back(finish(ExperimentSpec{
                .name = "fig2",
                .base = ModelParams(n, mu, {15, 25}, pool, 0.4),
                .axis = SweepAxis::kRingSize,
                .values = range(15, 40),
                .profile = KeyProfileRule::offsets({0, 10}),
                .k_list = {4, 6, 8, 10},
            }));
            break;
        case 3: {
            std::vector<double> alphas;
            for (int i = 1; i <= 20; ++i) alphas.push_back(i / 20.0);
            for (auto [k1, k2] : {std::pair{10, 70}, {20, 60}, {30, 50}, {40, 40}}) {
                specs.push_back(finish(ExperimentSpec{
                    .name = "fig3_K" + std::to_string(k1) + "-" + std::to_string(k2),
                    .base = ModelParams(n, mu, {k1, k2}, pool, 0.5),
                    .axis = SweepAxis::kAlpha,
                    .values = alphas,
                    .k_list = {2},
                }));
            }
            break;
        }
        case 4:
            for (int k : {8, 10, 12, 14}) {
                ThresholdQuery q;
                q.n = n;
                q.pool = pool;
                q.class_weights = mu;
                q.alpha = 0.4;
                q.k = k;
                q.rule = KeyProfileRule::offsets({0, 10});
                const ThresholdResult t = solve_threshold(q);
                if (!t.satisfied) {
                    throw std::invalid_argument("no admissible K_1 for the k=" + std::to_string(k) + " design");
                }
                specs.push_back(finish(ExperimentSpec{
                    .name = "fig4_k" + std::to_string(k),
                    .base = ModelParams(n, mu, t.ring_sizes, pool, 0.4),
                    .axis = SweepAxis::kDeletionDepth,
                    .values = range(0, std::min(20, n - 2)),
                    .profile = KeyProfileRule::offsets({0, 10}),
                    .record = {.min_degree = true, .k_connectivity = true, .vertex_cut_curve = true},
                }));
            }
            break;
        default:
            throw std::invalid_argument("unknown figure " + std::to_string(figure) + " (expected 1-4)");
    }
    return specs;
}

}  // namespace keygraph
