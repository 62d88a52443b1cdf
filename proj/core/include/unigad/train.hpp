#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unigad/dataset.hpp"
#include "unigad/metrics.hpp"
#include "unigad/stitch.hpp"

namespace unigad {

struct TrainConfig {
    int depth = 2;
    double decay = 0.5;
    int hidden_dim = 32;
    int num_layers = 2;
    int propagation_steps = 2;
    bool encoder_trainable = true;
    double lr = 1e-3;
    int epochs = 300;
    std::uint64_t seed = 0;
    double momentum = 0.9;
    double clip_norm = 5.0;
    std::set<Level> mask_levels;       // label-less levels (zero-shot setup)
    std::set<Level> levels;            // restrict training to these; empty = all labeled
    bool gamma_direct_ratio = false;
    std::array<double, 3> beta{1.0, 1.0, 1.0};
    bool alpha_trainable = true;
    bool tie_masked_towers = true;     // mirror trained tower into masked levels
    int val_every = 10;
    int threads = 1;
    double train_frac = 0.4;
};

struct TrainHistory {
    // Per-epoch per-level training losses; NaN for inactive levels.
    std::vector<std::array<double, 3>> losses;
    long sampler_calls = 0;
    int best_epoch = -1;
    double best_val_score = 0.0;
};

struct TrainResult {
    GraphStitchModel model;
    TrainHistory history;
    TrainConfig config;
};

struct MetricsReport {
    std::map<Level, LevelMetrics> levels;
    double wall_time_sec = 0.0;
    std::uint64_t seed = 0;
    std::string config_echo;

    bool has_undefined_metric() const;
};

/// Sampled, pooled and label-extracted view of a dataset: everything the
/// training loop needs, computed once per run.
struct PreparedData {
    Graph graph;                       // union graph (single: leakage-filtered)
    Eigen::MatrixXd propagated;        // sgc-propagated features
    // [level][split part]: pooling rows over union-graph node ids + labels.
    std::array<std::array<std::vector<std::vector<std::pair<int, double>>>, 3>, 3> rows;
    std::array<std::array<Eigen::VectorXd, 3>, 3> labels;
    long sampler_calls = 0;

    const std::vector<std::vector<std::pair<int, double>>>& rows_for(Level l, SplitPart p) const {
        return rows[level_index(l)][static_cast<int>(p)];
    }
    const Eigen::VectorXd& labels_for(Level l, SplitPart p) const {
        return labels[level_index(l)][static_cast<int>(p)];
    }
};

PreparedData prepare_data(const Dataset& dataset, const TrainConfig& config);

/// Full training loop: sample once, then per epoch run the stitched towers
/// on each labeled level's pooled train batch, combine the per-level
/// gradients with gradient surgery and update. Model selection keeps the
/// parameters with the best mean validation AUROC.
TrainResult train(const Dataset& dataset, const TrainConfig& config);

/// Levels that receive loss under this dataset/config.
std::set<Level> active_levels(const Dataset& dataset, const TrainConfig& config);

/// Per-level metrics of `part` targets for the given levels.
MetricsReport evaluate_prepared(GraphStitchModel& model, const PreparedData& data,
                                const std::set<Level>& levels, SplitPart part);

MetricsReport evaluate(GraphStitchModel& model, const Dataset& dataset,
                       const TrainConfig& config, SplitPart part = SplitPart::test);

/// Predictions of one level over one split part.
Eigen::VectorXd predict_prepared(GraphStitchModel& model, const PreparedData& data,
                                 Level level, SplitPart part);

}  // namespace unigad
