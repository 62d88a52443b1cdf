#include "unigad/train.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "unigad/sampler.hpp"

namespace unigad {

namespace {

constexpr int kParts = 3;  // train / val / test

SplitPart part_of(std::int8_t raw) { return static_cast<SplitPart>(raw); }

struct TargetJob {
    Level level;
    SplitPart part;
    double label;
    std::vector<int> roots;  // union-graph ids; 1 for node, 2 for edge
};

}  // namespace

bool MetricsReport::has_undefined_metric() const {
    for (const auto& [level, m] : levels) {
        if (!m.auroc.has_value() || !m.auprc.has_value()) return true;
    }
    return false;
}

std::set<Level> active_levels(const Dataset& dataset, const TrainConfig& config) {
    std::set<Level> out;
    if (dataset.has_node_labels()) out.insert(Level::node);
    if (dataset.has_edge_labels()) out.insert(Level::edge);
    if (dataset.has_graph_labels()) out.insert(Level::graph);
    for (Level l : config.mask_levels) out.erase(l);
    if (!config.levels.empty()) {
        std::set<Level> keep;
        for (Level l : out) {
            if (config.levels.count(l)) keep.insert(l);
        }
        out = keep;
    }
    return out;
}

PreparedData prepare_data(const Dataset& dataset, const TrainConfig& config) {
    if (!dataset.has_split) throw std::invalid_argument("prepare_data: dataset has no split");
    PreparedData data;
    reset_sampler_call_count();

    // Union graph over all dataset graphs (single-graph datasets use the
    // leakage-filtered graph).
    std::vector<Graph> working;
    if (dataset.multi) {
        working = dataset.graphs;
    } else {
        working.push_back(filtered_single_graph(dataset));
    }
    std::vector<int> offset(working.size() + 1, 0);
    for (std::size_t g = 0; g < working.size(); ++g) {
        offset[g + 1] = offset[g] + working[g].node_count();
    }
    const int total_nodes = offset.back();
    std::vector<Edge> union_edges;
    for (std::size_t g = 0; g < working.size(); ++g) {
        for (const auto& e : working[g].edges()) {
            union_edges.emplace_back(e.first + offset[g], e.second + offset[g]);
        }
    }
    data.graph = Graph(total_nodes, union_edges);
    Eigen::MatrixXd feats(total_nodes, working.front().feat_dim());
    for (std::size_t g = 0; g < working.size(); ++g) {
        feats.middleRows(offset[g], working[g].node_count()) = working[g].features();
    }
    data.graph.set_features(feats);
    data.propagated = sgc_propagate(data.graph, feats, config.propagation_steps);

    // Composite sampling signal, normalized per graph.
    Signal signal;
    signal.values = Eigen::VectorXd::Zero(total_nodes);
    for (std::size_t g = 0; g < working.size(); ++g) {
        signal.values.segment(offset[g], working[g].node_count()) =
            composite_feature(working[g].features()).values;
    }

    // Collect targets per level and split part.
    std::vector<TargetJob> jobs;
    for (std::size_t g = 0; g < working.size(); ++g) {
        const Graph& graph = working[g];
        if (graph.has_node_labels()) {
            const auto& parts = dataset.node_split[g];
            for (int v = 0; v < graph.node_count(); ++v) {
                if (graph.node_labels()[v] == kUnlabeled) continue;
                if (parts[v] < 0) continue;
                jobs.push_back({Level::node, part_of(parts[v]),
                                static_cast<double>(graph.node_labels()[v]),
                                {v + offset[g]}});
            }
        }
        if (graph.has_edge_labels()) {
            const auto& eparts = dataset.edge_split[g];
            for (const auto& [e, lab] : graph.edge_labels()) {
                if (lab == kUnlabeled) continue;
                auto it = eparts.find(e);
                if (it == eparts.end() || it->second < 0) continue;
                jobs.push_back({Level::edge, part_of(it->second), static_cast<double>(lab),
                                {e.first + offset[g], e.second + offset[g]}});
            }
        }
        if (graph.graph_label().has_value() && dataset.graph_split[g] >= 0) {
            // Whole graphs use uniform mean pooling; no sampling needed.
            TargetJob job{Level::graph, part_of(dataset.graph_split[g]),
                          static_cast<double>(*graph.graph_label()),
                          {}};
            const double w = 1.0 / graph.node_count();
            jobs.push_back(std::move(job));
            auto& rows = data.rows[level_index(Level::graph)][static_cast<int>(
                part_of(dataset.graph_split[g]))];
            rows.emplace_back();
            for (int v = 0; v < graph.node_count(); ++v) {
                rows.back().emplace_back(v + offset[g], w);
            }
        }
    }

    // Sample node/edge targets once (concurrently when configured); results
    // are assembled in target order.
    std::vector<TargetJob*> sample_jobs;
    for (auto& job : jobs) {
        if (job.level != Level::graph) sample_jobs.push_back(&job);
    }
    std::vector<std::vector<std::pair<int, double>>> sampled(sample_jobs.size());
    const int threads = std::max(1, config.threads);
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const TargetJob& job = *sample_jobs[i];
            SampledSubgraph sub =
                job.roots.size() == 1
                    ? mrq_sample_node(data.graph, signal, job.roots[0], config.depth,
                                      config.decay)
                    : mrq_sample_edge(data.graph, signal, {job.roots[0], job.roots[1]},
                                      config.depth, config.decay);
            for (std::size_t k = 0; k < sub.nodes.size(); ++k) {
                sampled[i].emplace_back(sub.nodes[k], sub.pool_weights[k]);
            }
        }
    };
    if (threads == 1 || sample_jobs.size() < 64) {
        worker(0, sample_jobs.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (sample_jobs.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::size_t b = std::min(sample_jobs.size(), t * chunk);
            const std::size_t e = std::min(sample_jobs.size(), b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    // Assemble rows/labels in stable target order.
    std::array<std::array<std::vector<double>, kParts>, 3> label_acc;
    std::size_t si = 0;
    for (auto& job : jobs) {
        const int li = level_index(job.level);
        const int pi = static_cast<int>(job.part);
        if (job.level != Level::graph) {
            data.rows[li][pi].push_back(std::move(sampled[si++]));
        }
        label_acc[li][pi].push_back(job.label);
    }
    for (int li = 0; li < 3; ++li) {
        for (int pi = 0; pi < kParts; ++pi) {
            const auto& v = label_acc[li][pi];
            data.labels[li][pi] =
                Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
        }
    }
    data.sampler_calls = sampler_call_count();
    return data;
}

namespace {

Eigen::VectorXd level_probs(GraphStitchModel& model, const PreparedData& data,
                            Level level, SplitPart part) {
    Tape tape;
    Var h = model.encoder.forward(tape, data.propagated);
    Var pooled = tape.gather_weighted(h, data.rows_for(level, part));
    auto probs = forward_towers(model, tape, pooled);
    return tape.value(probs[level_index(level)]).col(0);
}

}  // namespace

Eigen::VectorXd predict_prepared(GraphStitchModel& model, const PreparedData& data,
                                 Level level, SplitPart part) {
    return level_probs(model, data, level, part);
}

TrainResult train(const Dataset& dataset, const TrainConfig& config) {
    const std::set<Level> active = active_levels(dataset, config);
    if (active.empty()) {
        throw std::invalid_argument("train: no labeled level available for training");
    }

    PreparedData data = prepare_data(dataset, config);

    EncoderConfig enc_cfg;
    enc_cfg.propagation_steps = config.propagation_steps;
    enc_cfg.hidden_dim = config.hidden_dim;
    enc_cfg.trainable = config.encoder_trainable;

    TrainResult result;
    result.config = config;
    result.model = GraphStitchModel(enc_cfg, static_cast<int>(data.propagated.cols()),
                                    config.hidden_dim, config.num_layers, config.seed,
                                    config.alpha_trainable);
    mask_levels(result.model, config.mask_levels);
    GraphStitchModel& model = result.model;

    std::vector<Tensor*> params = model.parameters();
    SgdMomentum optimizer(config.lr, config.momentum, config.clip_norm);
    std::mt19937_64 surgery_rng(config.seed ^ 0x9e3779b97f4a7c15ull);

    // Class-imbalance weights from the training labels.
    std::array<double, 3> gamma{1.0, 1.0, 1.0};
    for (Level l : active) {
        gamma[level_index(l)] =
            anomaly_ratio(data.labels_for(l, SplitPart::train), config.gamma_direct_ratio);
    }

    Eigen::VectorXd best_params;
    double best_score = -1.0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        Tape tape;
        Var h = model.encoder.forward(tape, data.propagated);

        std::array<double, 3> losses{std::nan(""), std::nan(""), std::nan("")};
        std::vector<Eigen::VectorXd> task_grads;
        for (Level l : active) {
            const auto& labels = data.labels_for(l, SplitPart::train);
            if (labels.size() == 0) continue;
            Var pooled = tape.gather_weighted(h, data.rows_for(l, SplitPart::train));
            auto probs = forward_towers(model, tape, pooled);
            Var loss = tape.weighted_ce(probs[level_index(l)], labels, gamma[level_index(l)]);
            losses[level_index(l)] = tape.value(loss)(0, 0);
            // Optimize the mean per sample, scaled by the task weight.
            Var objective =
                tape.scale(loss, config.beta[level_index(l)] / static_cast<double>(labels.size()));
            zero_grads(params);
            tape.backward(objective);
            task_grads.push_back(flatten_grads(params));
            tape.reset_gradients();
        }
        result.history.losses.push_back(losses);
        if (task_grads.empty()) break;

        Eigen::VectorXd combined;
        if (task_grads.size() >= 2) {
            combined = gradient_surgery(task_grads, surgery_rng).combined;
        } else {
            combined = task_grads.front();
        }
        optimizer.step(params, combined);

        const bool last = epoch + 1 == config.epochs;
        if (epoch % std::max(1, config.val_every) == 0 || last) {
            double score = 0.0;
            int counted = 0;
            for (Level l : active) {
                const auto& labels = data.labels_for(l, SplitPart::val);
                if (labels.size() == 0) continue;
                const Eigen::VectorXd probs = level_probs(model, data, l, SplitPart::val);
                if (auto a = auroc(probs, labels)) {
                    score += *a;
                    ++counted;
                }
            }
            if (counted > 0) score /= counted;
            if (score > best_score) {
                best_score = score;
                best_params = flatten_values(params);
                result.history.best_epoch = epoch;
                result.history.best_val_score = score;
            }
        }
    }
    if (best_params.size() > 0) assign_values(params, best_params);

    // Zero-shot support: a masked level's tower and head never receive loss;
    // mirror the first trained level's parameters into them so the masked
    // head scores with trained weights (stitch inputs stay level-specific).
    if (config.tie_masked_towers && !config.mask_levels.empty() && !active.empty()) {
        const Level source = *active.begin();
        for (Level l : config.mask_levels) {
            model.towers[level_index(l)] = model.towers[level_index(source)];
            model.heads[level_index(l)] = model.heads[level_index(source)];
        }
    }

    result.history.sampler_calls = data.sampler_calls;
    return result;
}

MetricsReport evaluate_prepared(GraphStitchModel& model, const PreparedData& data,
                                const std::set<Level>& levels, SplitPart part) {
    const auto start = std::chrono::steady_clock::now();
    MetricsReport report;
    for (Level l : levels) {
        const auto& labels = data.labels_for(l, part);
        if (labels.size() == 0) continue;
        const Eigen::VectorXd probs = level_probs(model, data, l, part);
        report.levels[l] = compute_level_metrics(probs, labels);
    }
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

MetricsReport evaluate(GraphStitchModel& model, const Dataset& dataset,
                       const TrainConfig& config, SplitPart part) {
    PreparedData data = prepare_data(dataset, config);
    std::set<Level> levels;
    if (dataset.has_node_labels()) levels.insert(Level::node);
    if (dataset.has_edge_labels()) levels.insert(Level::edge);
    if (dataset.has_graph_labels()) levels.insert(Level::graph);
    MetricsReport report = evaluate_prepared(model, data, levels, part);
    report.seed = config.seed;
    return report;
}

}  // namespace unigad
