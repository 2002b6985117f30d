#include "keygraph/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "keygraph/connectivity.hpp"
#include "keygraph/experiments.hpp"
#include "keygraph/model.hpp"
#include "keygraph/network_io.hpp"
#include "keygraph/sampler.hpp"
#include "keygraph/text.hpp"
#include "keygraph/threshold.hpp"

namespace keygraph {

namespace {

// Flag values as given; parsed by the command after CLI11 accepts the shape.
struct Flags {
    std::string n, pool, mu, ring, alpha, k, trials, seed, out, spec, offsets, fixed_tail, in, threads,
        dat, trial;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int need_int(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
    try {
        const long long v = text::parse_int(value);
        if (v < INT32_MIN || v > INT32_MAX) throw std::invalid_argument("out of range");
        return static_cast<int>(v);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

template <class F>
auto as_usage(const char* flag, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

ModelParams model_from(const Flags& f) {
    const int n = need_int(f.n, "--n");
    const int pool = need_int(f.pool, "--P");
    if (f.mu.empty()) throw UsageError("missing required flag --mu");
    if (f.ring.empty()) throw UsageError("missing required flag --K");
    if (f.alpha.empty()) throw UsageError("missing required flag --alpha");
    auto mu = as_usage("--mu", [&] { return text::parse_real_list(f.mu); });
    auto ring = as_usage("--K", [&] { return text::parse_int_list(f.ring); });
    const double alpha = as_usage("--alpha", [&] { return text::parse_real(f.alpha); });
    if (mu.size() != ring.size()) {
        throw UsageError("--mu and --K must list the same number of classes (" + std::to_string(mu.size()) +
                         " vs " + std::to_string(ring.size()) + ")");
    }
    return as_usage("model", [&] { return ModelParams(n, mu, ring, pool, alpha); });
}

int k_from(const Flags& f, int fallback) {
    const int k = f.k.empty() ? fallback : need_int(f.k, "--k");
    if (k < 1) throw UsageError("--k must be positive");
    return k;
}

std::uint64_t seed_from(const Flags& f) {
    if (!f.seed.empty()) return as_usage("--seed", [&] { return text::parse_u64(f.seed); });
    if (const char* env = std::getenv("KEYGRAPH_SEED"); env != nullptr && *env != '\0') {
        return as_usage("KEYGRAPH_SEED", [&] { return text::parse_u64(env); });
    }
    return 0;
}

std::optional<int> optional_int(const std::string& value, const char* flag) {
    if (value.empty()) return std::nullopt;
    return need_int(value, flag);
}

// Runs `emit` against --out when given, otherwise against `out`.
void with_output(const Flags& f, std::ostream& out, const std::function<void(std::ostream&)>& emit) {
    if (f.out.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + f.out + "' for writing");
    emit(file);
    file.flush();
    if (!file) throw std::runtime_error("write to '" + f.out + "' failed");
}

std::function<void()> cmd_prob(const Flags& f, std::ostream& out) {
    ModelParams params = model_from(f);
    const int k = k_from(f, 1);
    if (params.node_count() < 3) throw UsageError("prob needs --n >= 3");
    return [params, k, &out] {
        const int r = params.class_count();
        out << "# n=" << params.node_count() << " P=" << params.pool_size()
            << " alpha=" << text::format_real(params.channel_on_prob()) << " k=" << k << '\n';
        out << "p_ij";
        for (int j = 0; j < r; ++j) out << " class" << j + 1;
        out << '\n';
        for (int i = 0; i < r; ++i) {
            out << "class" << i + 1;
            for (int j = 0; j < r; ++j) out << ' ' << text::format_real(key_edge_prob(params, i, j));
            out << '\n';
        }
        out << "class mu K lambda Lambda\n";
        for (int i = 0; i < r; ++i) {
            out << i + 1 << ' ' << text::format_real(params.class_prob(i)) << ' ' << params.ring_size(i) << ' '
                << text::format_real(class_key_edge_prob(params, i)) << ' '
                << text::format_real(class_edge_prob(params, i)) << '\n';
        }
        const ScalingReport rep = scaling_report(params, k);
        const PointClass side = classify_point(params, k);
        out << "lambda1=" << text::format_real(rep.lambda1_exact) << '\n'
            << "lambda1_asymptotic=" << text::format_real(rep.lambda1_asymptotic) << '\n'
            << "gamma=" << text::format_real(rep.gamma) << '\n'
            << "side=" << (side.side == Side::kAbove ? "above" : "below")
            << (side.on_boundary ? " (boundary)" : "") << '\n'
            << "admissible=" << (rep.admissible ? "true" : "false") << '\n'
            << "P_over_n=" << text::format_real(rep.pool_per_node) << '\n'
            << "Kr_over_P=" << text::format_real(rep.max_ring_per_pool) << '\n'
            << "Kr_over_K1_over_ln_n=" << text::format_real(rep.ring_spread_per_log_n) << '\n';
    };
}

std::function<void()> cmd_threshold(const Flags& f, std::ostream& out) {
    ThresholdQuery q;
    q.n = need_int(f.n, "--n");
    q.pool = need_int(f.pool, "--P");
    if (f.mu.empty()) throw UsageError("missing required flag --mu");
    if (f.alpha.empty()) throw UsageError("missing required flag --alpha");
    q.class_weights = as_usage("--mu", [&] { return text::parse_real_list(f.mu); });
    q.alpha = as_usage("--alpha", [&] { return text::parse_real(f.alpha); });
    q.k = k_from(f, 1);
    if (!f.offsets.empty() && !f.fixed_tail.empty()) throw UsageError("give --offsets or --fixed-tail, not both");
    if (!f.fixed_tail.empty()) {
        q.rule = as_usage("--fixed-tail", [&] { return KeyProfileRule::fixed_tail(text::parse_int_list(f.fixed_tail)); });
    } else if (!f.offsets.empty()) {
        q.rule = as_usage("--offsets", [&] { return KeyProfileRule::offsets(text::parse_int_list(f.offsets)); });
    } else {
        q.rule = KeyProfileRule::offsets(std::vector<int>(q.class_weights.size(), 0));
    }
    if (q.rule.class_count() != static_cast<int>(q.class_weights.size())) {
        throw UsageError("key profile and --mu describe different numbers of classes");
    }
    if (q.pool < 1) throw UsageError("--P must be positive");
    // checks mu and alpha
    as_usage("model", [&] {
        return ModelParams(std::max(q.n, 2), q.class_weights, std::vector<int>(q.class_weights.size(), 1), q.pool,
                           q.alpha);
    });
    if (q.n < 3) throw UsageError("threshold needs --n >= 3");
    return [q, &out] {
        const ThresholdResult r = solve_threshold(q);
        if (!r.satisfied) {
            out << "K1_min=unsatisfiable\n"
                << "rhs=" << text::format_real(r.rhs) << '\n';
            return;
        }
        out << "K1_min=" << r.k1_min << '\n'
            << "K=" << text::join(r.ring_sizes, ",") << '\n'
            << "lambda1=" << text::format_real(r.lambda1) << '\n'
            << "rhs=" << text::format_real(r.rhs) << '\n';
    };
}

std::function<void()> cmd_sample(const Flags& f, std::ostream& out) {
    ModelParams params = model_from(f);
    const SeedSpec seed{seed_from(f), f.trial.empty()
                                          ? 0
                                          : as_usage("--trial", [&] { return text::parse_u64(f.trial); })};
    return [params, seed, f, &out] {
        const SampledNetwork net = sample_network(params, seed);
        with_output(f, out, [&](std::ostream& o) { write_network(o, net); });
    };
}

std::function<void()> cmd_analyze(const Flags& f, std::ostream& out) {
    if (f.in.empty()) throw UsageError("analyze needs a network dump (--in FILE)");
    const std::optional<int> k = optional_int(f.k, "--k");
    if (k && *k < 1) throw UsageError("--k must be positive");
    return [f, k, &out] {
        const SampledNetwork net = read_network(std::filesystem::path(f.in));
        const ConnectivityReport rep = analyze_connectivity(net.graph);
        out << "nodes=" << net.graph.node_count() << '\n'
            << "edges=" << net.graph.edge_count() << '\n'
            << "min_degree=" << rep.min_degree << '\n'
            << "vertex_connectivity=" << rep.vertex_connectivity << '\n'
            << "min_vertex_cut=" << text::join(rep.min_vertex_cut, ",") << '\n'
            << "connected=" << (rep.is_connected ? "true" : "false") << '\n'
            << "components=" << rep.component_count << '\n';
        if (k) {
            out << "min_degree_ge_k=" << (rep.min_degree >= *k ? "true" : "false") << '\n'
                << "k_connected=" << (rep.vertex_connectivity >= *k ? "true" : "false") << '\n';
        }
    };
}

void report_and_write(const Flags& f, std::ostream& out, const std::vector<ExperimentResult>& results) {
    with_output(f, out, [&](std::ostream& o) { write_csv(o, results); });
    if (!f.dat.empty()) {
        for (const auto& r : results) write_plot_data(f.dat, r);
    }
}

void apply_run_overrides(const Flags& f, std::vector<ExperimentSpec>& specs) {
    if (const auto trials = optional_int(f.trials, "--trials")) {
        if (*trials < 1) throw UsageError("--trials must be positive");
        for (auto& s : specs) s.trials = *trials;
    }
    if (const auto threads = optional_int(f.threads, "--threads")) {
        if (*threads < 0) throw UsageError("--threads must be non-negative");
        for (auto& s : specs) s.threads = *threads;
    }
}

std::function<void()> cmd_run(const Flags& f, std::ostream& out) {
    if (f.spec.empty()) throw UsageError("run needs --spec FILE");
    Flags copy = f;
    (void)optional_int(f.threads, "--threads");
    if (const auto trials = optional_int(f.trials, "--trials"); trials && *trials < 1) {
        throw UsageError("--trials must be positive");
    }
    if (!f.seed.empty()) (void)seed_from(f);
    return [copy, &out] {
        std::vector<ExperimentSpec> specs;
        try {
            specs = load_experiment_specs(copy.spec);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(e.what());
        }
        apply_run_overrides(copy, specs);
        if (!copy.seed.empty()) {
            for (auto& s : specs) s.master_seed = seed_from(copy);
        }
        std::vector<ExperimentResult> results;
        for (const auto& s : specs) results.push_back(run_experiment(s));
        report_and_write(copy, out, results);
    };
}

std::function<void()> cmd_figure(int figure, const Flags& f, std::ostream& out) {
    FigureOverrides o;
    o.n = optional_int(f.n, "--n");
    o.pool = optional_int(f.pool, "--P");
    o.trials = optional_int(f.trials, "--trials");
    o.threads = optional_int(f.threads, "--threads");
    o.master_seed = seed_from(f);
    auto specs = as_usage("figure", [&] { return figure_experiments(figure, o); });
    for (const auto& s : specs) as_usage("figure", [&] { s.validate(); return 0; });
    return [specs, f, &out] {
        std::vector<ExperimentResult> results;
        for (const auto& s : specs) results.push_back(run_experiment(s));
        report_and_write(f, out, results);
    };
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secure k-connectivity of heterogeneous sensor networks: random key graph "
                 "intersected with an on/off channel graph."};
    app.name("keygraph");
    app.require_subcommand(1, 1);
    Flags f;

    auto model_flags = [&](CLI::App* sub) {
        sub->add_option("--n", f.n, "number of nodes");
        sub->add_option("--P", f.pool, "key pool size");
        sub->add_option("--mu", f.mu, "class probabilities, comma separated");
        sub->add_option("--K", f.ring, "key ring sizes per class, comma separated, non-decreasing");
        sub->add_option("--alpha", f.alpha, "channel-on probability in (0, 1]");
    };
    auto output_flags = [&](CLI::App* sub) {
        sub->add_option("--out", f.out, "output file (default: stdout)");
        sub->add_option("--seed", f.seed, "master seed (default: $KEYGRAPH_SEED or 0)");
    };
    auto experiment_flags = [&](CLI::App* sub) {
        sub->add_option("--trials", f.trials, "trials per sweep point");
        sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
        sub->add_option("--dat", f.dat, "also write plot data files with this path prefix");
    };

    std::map<CLI::App*, std::function<std::function<void()>()>> handlers;

    auto* prob = app.add_subcommand("prob", "print edge probabilities, lambda/Lambda, gamma and scaling checks");
    model_flags(prob);
    prob->add_option("--k", f.k, "target connectivity k (default 1)");
    handlers[prob] = [&] { return cmd_prob(f, out); };

    auto* threshold = app.add_subcommand("threshold", "smallest K_1 above the critical threshold");
    threshold->add_option("--n", f.n, "number of nodes");
    threshold->add_option("--P", f.pool, "key pool size");
    threshold->add_option("--mu", f.mu, "class probabilities, comma separated");
    threshold->add_option("--alpha", f.alpha, "channel-on probability in (0, 1]");
    threshold->add_option("--k", f.k, "target connectivity k (default 1)");
    threshold->add_option("--offsets", f.offsets, "K_i = K_1 + offsets[i], offsets[0] = 0");
    threshold->add_option("--fixed-tail", f.fixed_tail, "fixed K_2..K_r; K_1 free");
    handlers[threshold] = [&] { return cmd_threshold(f, out); };

    auto* sample = app.add_subcommand("sample", "draw one network and write its dump");
    model_flags(sample);
    output_flags(sample);
    sample->add_option("--trial", f.trial, "trial index within the seed's streams (default 0)");
    handlers[sample] = [&] { return cmd_sample(f, out); };

    auto* analyze = app.add_subcommand("analyze", "min degree, vertex connectivity and a minimum cut of a dump");
    analyze->add_option("--in,in", f.in, "network dump file");
    analyze->add_option("--k", f.k, "also report the k predicates");
    handlers[analyze] = [&] { return cmd_analyze(f, out); };

    auto* run = app.add_subcommand("run", "run the experiments of a JSON spec file and write CSV");
    run->add_option("--spec", f.spec, "experiment spec file (JSON)");
    run->add_option("--out", f.out, "output file (default: stdout)");
    run->add_option("--seed", f.seed, "master seed for every experiment (default: each spec's master_seed)");
    experiment_flags(run);
    handlers[run] = [&] { return cmd_run(f, out); };

    for (int fig = 1; fig <= 4; ++fig) {
        static const char* const descriptions[] = {
            "2-connectivity vs K_1 for alpha = 0.2, 0.4, 0.6, 0.8",
            "k-connectivity vs K_1 for k = 4, 6, 8, 10 at alpha = 0.4",
            "2-connectivity vs alpha for K = (10,70), (20,60), (30,50), (40,40)",
            "connectivity after deleting minimum-cut nodes, k = 8, 10, 12, 14 designs",
        };
        auto* sub = app.add_subcommand("fig" + std::to_string(fig), descriptions[fig - 1]);
        sub->add_option("--n", f.n, "number of nodes (default 500)");
        sub->add_option("--P", f.pool, "key pool size (default 10000)");
        output_flags(sub);
        experiment_flags(sub);
        handlers[sub] = [&, fig] { return cmd_figure(fig, f, out); };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::function<void()> work;
    try {
        work = handlers.at(app.get_subcommands().front())();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return 2;
    }

    try {
        work();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace keygraph
