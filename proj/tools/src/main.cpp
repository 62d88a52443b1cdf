#include <algorithm>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unigad/checkpoint.hpp"
#include "unigad/graph_io.hpp"
#include "unigad/run_config.hpp"
#include "unigad/sampler.hpp"
#include "unigad/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace unigad;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string config_path;
};

// Config-file values sit between defaults and explicit flags: load the file
// first, then re-apply any flag the user actually passed.
TrainConfig resolve_train_config(CLI::App* cmd, const GlobalOpts& g,
                                 const TrainConfig& flag_values) {
    TrainConfig cfg;
    if (!g.config_path.empty()) apply_config_file(cfg, g.config_path);
    auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (passed("--depth")) cfg.depth = flag_values.depth;
    if (passed("--decay")) cfg.decay = flag_values.decay;
    if (passed("--hidden-dim")) cfg.hidden_dim = flag_values.hidden_dim;
    if (passed("--num-layers")) cfg.num_layers = flag_values.num_layers;
    if (passed("--propagation-steps")) cfg.propagation_steps = flag_values.propagation_steps;
    if (passed("--lr")) cfg.lr = flag_values.lr;
    if (passed("--epochs")) cfg.epochs = flag_values.epochs;
    if (passed("--train-frac")) cfg.train_frac = flag_values.train_frac;
    if (passed("--gamma-mode")) cfg.gamma_direct_ratio = flag_values.gamma_direct_ratio;
    if (passed("--levels")) cfg.levels = flag_values.levels;
    if (passed("--mask-level")) cfg.mask_levels = flag_values.mask_levels;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    return cfg;
}

json subgraph_line(const json& target, const SampledSubgraph& s) {
    json j;
    j["target"] = target;
    j["nodes"] = s.nodes;
    j["hops"] = s.hops;
    j["rq_num"] = s.rq.num;
    j["rq_den"] = s.rq.den;
    j["weights"] = s.pool_weights;
    return j;
}

int run_sample(const std::string& input, const std::string& targets, int depth, double decay,
               const std::string& out) {
    const Dataset ds = load_dataset(input);
    std::ostringstream lines;
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
        const Graph& g = ds.graphs[gi];
        const Signal sig = composite_feature(g.features());
        auto emit = [&](const json& target, const SampledSubgraph& s) {
            json j = subgraph_line(target, s);
            if (ds.multi) j["graph"] = gi;
            lines << j.dump() << "\n";
        };
        if (targets == "nodes" || targets == "all") {
            for (int v = 0; v < g.node_count(); ++v) {
                emit(json(v), mrq_sample_node(g, sig, v, depth, decay));
            }
        }
        if (targets == "edges" || targets == "all") {
            for (const Edge& e : g.edges()) {
                emit(json::array({e.first, e.second}),
                     mrq_sample_edge(g, sig, e, depth, decay));
            }
        }
    }
    atomic_write(out, lines.str());
    return 0;
}

int run_oracle_check(int trials, int max_nodes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
        std::vector<Edge> edges;
        for (int v = 1; v < n; ++v) {
            const int p = std::uniform_int_distribution<int>(0, v - 1)(rng);
            edges.emplace_back(std::min(p, v), std::max(p, v));
        }
        Graph g(n, edges);
        Eigen::VectorXd x(n);
        for (int v = 0; v < n; ++v) {
            x[v] = std::uniform_int_distribution<int>(-5, 5)(rng);
        }
        const Signal sig = make_signal(x, g);
        const int depth = std::uniform_int_distribution<int>(1, 2)(rng);
        const int root = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const SampledSubgraph dp = mrq_sample_node(g, sig, root, depth);
        const auto [best, best_nodes] = brute_force_max_rq(build_rooted_tree(g, {root}, depth), sig);
        if (compare(dp.rq, best) != 0) {
            ++mismatches;
            std::cerr << "mismatch: trial " << t << " root " << root << " dp=" << dp.rq.num
                      << "/" << dp.rq.den << " brute=" << best.num << "/" << best.den << "\n";
        }
    }
    std::cout << (trials - mismatches) << "/" << trials << " exact matches\n";
    return mismatches == 0 ? 0 : 1;
}

int emit_report(const MetricsReport& report, const std::string& out, bool allow_degenerate) {
    const std::string text = metrics_report_to_json(report) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        atomic_write(out, text);
    }
    if (report.has_undefined_metric() && !allow_degenerate) {
        std::cerr << "error: undefined metric on a degenerate split "
                     "(use --allow-degenerate to accept)\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unigad: multi-level graph anomaly detection toolkit"};
    app.require_subcommand(1);
    app.footer("Precedence: command-line flags override --config file values, "
               "which override built-in defaults.");

    GlobalOpts g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for sampling")->capture_default_str();
    app.add_option("--out", g.out, "Output path");
    app.add_option("--config", g.config_path, "key=value config file");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    std::string synth_kind = "single", synth_mode = "contextual";
    int synth_n = 400, synth_graphs = 200, synth_min = 30, synth_max = 60;
    double synth_rate = 0.1;
    synth->add_option("--kind", synth_kind, "single | multi")
        ->check(CLI::IsMember({"single", "multi"}))->capture_default_str();
    synth->add_option("--n", synth_n, "Node count (single)")->capture_default_str();
    synth->add_option("--rate", synth_rate, "Anomaly rate")->capture_default_str();
    synth->add_option("--mode", synth_mode, "contextual | structural | mixed (single)")
        ->check(CLI::IsMember({"contextual", "structural", "mixed"}))->capture_default_str();
    synth->add_option("--num-graphs", synth_graphs, "Graph count (multi)")->capture_default_str();
    synth->add_option("--min-nodes", synth_min, "Min nodes per graph (multi)")
        ->capture_default_str();
    synth->add_option("--max-nodes", synth_max, "Max nodes per graph (multi)")
        ->capture_default_str();

    // sample
    auto* sample = app.add_subcommand("sample", "MRQ-sample subgraphs for every target");
    std::string sample_input, sample_targets = "nodes";
    int sample_depth = 2;
    double sample_decay = 0.5;
    sample->add_option("--input", sample_input, "Dataset path")->required();
    sample->add_option("--targets", sample_targets, "nodes | edges | all")
        ->check(CLI::IsMember({"nodes", "edges", "all"}))->capture_default_str();
    sample->add_option("--depth", sample_depth, "BFS depth cap")->capture_default_str();
    sample->add_option("--decay", sample_decay, "Pooling decay in (0,1]")->capture_default_str();

    // train / transfer share hyperparameter flags
    TrainConfig flagged;
    auto add_train_flags = [&](CLI::App* cmd) {
        cmd->add_option("--depth", flagged.depth, "Sampler BFS depth");
        cmd->add_option("--decay", flagged.decay, "Pooling decay");
        cmd->add_option("--hidden-dim", flagged.hidden_dim, "Hidden width");
        cmd->add_option("--num-layers", flagged.num_layers, "Hidden layers per tower");
        cmd->add_option("--propagation-steps", flagged.propagation_steps, "Propagation steps");
        cmd->add_option("--lr", flagged.lr, "Learning rate");
        cmd->add_option("--epochs", flagged.epochs, "Training epochs");
        cmd->add_option("--train-frac", flagged.train_frac, "Training fraction of the split");
        cmd->add_option_function<std::string>(
            "--levels",
            [&](const std::string& s) { flagged.levels = parse_level_set(s); },
            "Restrict training levels (comma separated)");
        cmd->add_option_function<std::string>(
            "--gamma-mode",
            [&](const std::string& s) {
                if (s != "inverted" && s != "direct") {
                    throw CLI::ValidationError("--gamma-mode", "must be 'inverted' or 'direct'");
                }
                flagged.gamma_direct_ratio = (s == "direct");
            },
            "Imbalance weight direction: inverted (default) | direct");
        cmd->add_option_function<std::vector<std::string>>(
            "--mask-level",
            [&](const std::vector<std::string>& names) {
                for (const auto& name : names) flagged.mask_levels.insert(level_from_name(name));
            },
            "Mask a label level during training (repeatable)");
    };

    auto* train_cmd = app.add_subcommand("train", "Train a model on a dataset");
    std::string train_input, history_out;
    train_cmd->add_option("--input", train_input, "Dataset path")->required();
    train_cmd->add_option("--history", history_out, "Write per-epoch loss history JSON here");
    add_train_flags(train_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
    std::string eval_input, eval_ckpt;
    bool allow_degenerate = false;
    eval_cmd->add_option("--input", eval_input, "Dataset path")->required();
    eval_cmd->add_option("--checkpoint", eval_ckpt, "Checkpoint JSON")->required();
    eval_cmd->add_flag("--allow-degenerate", allow_degenerate,
                       "Exit 0 even when a metric is undefined");

    auto* transfer_cmd =
        app.add_subcommand("transfer", "Zero-shot transfer: train masked, evaluate the masked level");
    std::string transfer_input;
    bool transfer_allow_degenerate = false;
    transfer_cmd->add_option("--input", transfer_input, "Dataset path")->required();
    transfer_cmd->add_flag("--allow-degenerate", transfer_allow_degenerate,
                           "Exit 0 even when a metric is undefined");
    add_train_flags(transfer_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle-check",
                                          "Sampler vs. exhaustive search equivalence check");
    int oracle_trials = 200, oracle_max_nodes = 12;
    oracle_cmd->add_option("--trials", oracle_trials, "Random instances")->capture_default_str();
    oracle_cmd->add_option("--max-nodes", oracle_max_nodes, "Max nodes per instance (<= 20)")
        ->check(CLI::Range(2, 20))->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            if (g.out.empty()) throw std::invalid_argument("synth requires --out");
            Dataset ds = synth_kind == "single"
                             ? synth_single_graph(synth_n, synth_rate,
                                                  anomaly_mode_from_name(synth_mode), g.seed)
                             : synth_multi_graph(synth_graphs, synth_min, synth_max, synth_rate,
                                                 g.seed);
            save_dataset(ds, g.out);
            return 0;
        }
        if (sample->parsed()) {
            if (g.out.empty()) throw std::invalid_argument("sample requires --out");
            return run_sample(sample_input, sample_targets, sample_depth, sample_decay, g.out);
        }
        if (train_cmd->parsed()) {
            if (g.out.empty()) throw std::invalid_argument("train requires --out (checkpoint path)");
            TrainConfig cfg = resolve_train_config(train_cmd, g, flagged);
            Dataset ds = load_dataset(train_input);
            split(ds, cfg.train_frac, cfg.seed);
            TrainResult result = train(ds, cfg);
            save_checkpoint(result.model, cfg, g.out);
            if (!history_out.empty()) {
                atomic_write(history_out, history_to_json(result.history) + "\n");
            }
            return 0;
        }
        if (eval_cmd->parsed()) {
            TrainResult loaded = load_checkpoint(eval_ckpt);
            Dataset ds = load_dataset(eval_input);
            split(ds, loaded.config.train_frac, loaded.config.seed);
            MetricsReport report = evaluate(loaded.model, ds, loaded.config);
            report.config_echo = train_config_to_json(loaded.config);
            return emit_report(report, g.out, allow_degenerate);
        }
        if (transfer_cmd->parsed()) {
            TrainConfig cfg = resolve_train_config(transfer_cmd, g, flagged);
            if (cfg.mask_levels.empty()) {
                throw std::invalid_argument("transfer requires at least one --mask-level");
            }
            Dataset ds = load_dataset(transfer_input);
            split(ds, cfg.train_frac, cfg.seed);
            TrainResult result = train(ds, cfg);
            PreparedData data = prepare_data(ds, cfg);
            MetricsReport report =
                evaluate_prepared(result.model, data, cfg.mask_levels, SplitPart::test);
            report.seed = cfg.seed;
            report.config_echo = train_config_to_json(cfg);
            return emit_report(report, g.out, transfer_allow_degenerate);
        }
        if (oracle_cmd->parsed()) {
            return run_oracle_check(oracle_trials, oracle_max_nodes, g.seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
